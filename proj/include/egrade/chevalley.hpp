// Chevalley-basis models of the simple Lie algebras of type E6, E7, E8.
//
// Basis order: h_1..h_l, then e_alpha for the roots in RootSystem order.
// Signs come from the asymmetry function eps(a,b) = (-1)^(a^T M b), where M is
// upper triangular with ones on the diagonal and on the Dynkin edges. With
// E_alpha the standard basis built from eps, e_alpha = E_alpha for positive and
// -E_alpha for negative roots, which gives
//   [h_i, e_b] = (alpha_i|b) e_b,   [e_a, e_-a] = h_a = sum a_i h_i,
//   [e_a, e_b] = N_ab e_{a+b},      N_ab = s_a s_b s_{a+b} eps(a,b),
// and sigma(e_a) = -e_-a, sigma(h) = -h.

#ifndef EGRADE_CHEVALLEY_HPP_
#define EGRADE_CHEVALLEY_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "modular.hpp"
#include "rootsys.hpp"

namespace egrade {

using LieElement = std::vector<std::int64_t>;

class ChevalleyAlgebra {
public:
  explicit ChevalleyAlgebra(RootSystem rs) : rs_(std::move(rs)) {
    rank_ = rs_.rank();
    nroots_ = rs_.size();
    dim_ = rank_ + nroots_;
    const auto& a = rs_.cartan_matrix();
    std::vector<std::vector<int>> m(static_cast<std::size_t>(rank_), std::vector<int>(static_cast<std::size_t>(rank_), 0));
    for (int i = 0; i < rank_; ++i) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
      for (int j = i + 1; j < rank_; ++j)
        if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == -1)
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    }
    const std::size_t n = static_cast<std::size_t>(nroots_);
    sum_.assign(n * n, -1);
    coef_.assign(n * n, 0);
    for (int x = 0; x < nroots_; ++x)
      for (int y = 0; y < nroots_; ++y) {
        const RootVec& ra = rs_.root(x);
        const RootVec& rb = rs_.root(y);
        const int z = rs_.index_of(RootSystem::add(ra, rb));
        if (z < 0)
          continue;
        int e = 0;
        for (int i = 0; i < rank_; ++i)
          for (int j = 0; j < rank_; ++j)
            e += ra[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                 rb[static_cast<std::size_t>(j)];
        const int eps = (e & 1) ? -1 : 1;
        const int sg = sign(x) * sign(y) * sign(z);
        sum_[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = z;
        coef_[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = static_cast<std::int8_t>(eps * sg);
      }
  }

  const RootSystem& system() const { return rs_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  int root_basis_index(int root) const { return rank_ + root; }
  bool is_cartan_index(int b) const { return b < rank_; }

  LieElement zero() const { return LieElement(static_cast<std::size_t>(dim_), 0); }
  LieElement basis(int b) const {
    LieElement v = zero();
    v[static_cast<std::size_t>(b)] = 1;
    return v;
  }
  LieElement e(int root) const { return basis(rank_ + root); }
  LieElement h(int i) const { return basis(i); }
  // h_alpha for a root index.
  LieElement coroot(int root) const {
    LieElement v = zero();
    for (int i = 0; i < rank_; ++i)
      v[static_cast<std::size_t>(i)] = rs_.root(root)[static_cast<std::size_t>(i)];
    return v;
  }

  // Calls emit(k, c) for each term c * b_k of [b_i, b_j].
  template <typename Emit> void bracket_basis(int i, int j, Emit&& emit) const {
    const bool hi = i < rank_, hj = j < rank_;
    if (hi && hj)
      return;
    if (hi) {
      const int c = rs_.pair_simple(rs_.root(j - rank_), i);
      if (c)
        emit(j, c);
      return;
    }
    if (hj) {
      const int c = rs_.pair_simple(rs_.root(i - rank_), j);
      if (c)
        emit(i, -c);
      return;
    }
    const int x = i - rank_, y = j - rank_;
    if (rs_.negative_index(x) == y) {
      const RootVec& r = rs_.root(x);
      for (int k = 0; k < rank_; ++k)
        if (r[static_cast<std::size_t>(k)])
          emit(k, r[static_cast<std::size_t>(k)]);
      return;
    }
    const std::size_t idx = static_cast<std::size_t>(x) * static_cast<std::size_t>(nroots_) + static_cast<std::size_t>(y);
    if (sum_[idx] >= 0)
      emit(rank_ + sum_[idx], coef_[idx]);
  }

  // N_{a,b} for root indices with a+b a root; 0 otherwise.
  int structure_constant(int a, int b) const {
    const std::size_t idx = static_cast<std::size_t>(a) * static_cast<std::size_t>(nroots_) + static_cast<std::size_t>(b);
    return sum_[idx] >= 0 ? coef_[idx] : 0;
  }
  int root_sum(int a, int b) const {
    return sum_[static_cast<std::size_t>(a) * static_cast<std::size_t>(nroots_) + static_cast<std::size_t>(b)];
  }

  LieElement bracket(const LieElement& x, const LieElement& y) const {
    check(x);
    check(y);
    LieElement out = zero();
    std::vector<int> nx, ny;
    for (int i = 0; i < dim_; ++i) {
      if (x[static_cast<std::size_t>(i)])
        nx.push_back(i);
      if (y[static_cast<std::size_t>(i)])
        ny.push_back(i);
    }
    for (int i : nx)
      for (int j : ny) {
        const std::int64_t c = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
        bracket_basis(i, j, [&](int k, std::int64_t v) { out[static_cast<std::size_t>(k)] += c * v; });
      }
    return out;
  }

  void check(const LieElement& x) const {
    if (static_cast<int>(x.size()) != dim_)
      fail("LieElement: wrong length for this algebra");
  }

private:
  int sign(int root) const { return rs_.is_positive_index(root) ? 1 : -1; }

  RootSystem rs_;
  int rank_ = 0, nroots_ = 0, dim_ = 0;
  std::vector<int> sum_;
  std::vector<std::int8_t> coef_;
};

inline ChevalleyAlgebra build_algebra(const RootSystem& rs) { return ChevalleyAlgebra(rs); }

inline LieElement bracket(const ChevalleyAlgebra& a, const LieElement& x, const LieElement& y) {
  return a.bracket(x, y);
}

inline bool is_zero(const LieElement& x) {
  for (auto c : x)
    if (c)
      return false;
  return true;
}

inline LieElement operator+(LieElement a, const LieElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] += b[i];
  return a;
}
inline LieElement operator-(LieElement a, const LieElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] -= b[i];
  return a;
}
inline LieElement operator*(std::int64_t c, LieElement a) {
  for (auto& x : a)
    x *= c;
  return a;
}

// Automorphism acting monomially: b_i -> sign[i] * b_{perm[i]}.
struct AlgebraAutomorphism {
  std::vector<int> perm;
  std::vector<int> sign;

  LieElement apply(const LieElement& x) const {
    LieElement out(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      out[static_cast<std::size_t>(perm[i])] += sign[i] * x[i];
    return out;
  }
  LieElement operator()(const LieElement& x) const { return apply(x); }

  AlgebraAutomorphism after(const AlgebraAutomorphism& inner) const {
    AlgebraAutomorphism r;
    r.perm.resize(perm.size());
    r.sign.resize(sign.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const int k = inner.perm[i];
      r.perm[i] = perm[static_cast<std::size_t>(k)];
      r.sign[i] = inner.sign[i] * sign[static_cast<std::size_t>(k)];
    }
    return r;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<int>(i) || sign[i] != 1)
        return false;
    return true;
  }
  bool operator==(const AlgebraAutomorphism&) const = default;
};

inline AlgebraAutomorphism chevalley_involution(const ChevalleyAlgebra& a) {
  AlgebraAutomorphism s;
  for (int i = 0; i < a.rank(); ++i) {
    s.perm.push_back(i);
    s.sign.push_back(-1);
  }
  for (int r = 0; r < a.system().size(); ++r) {
    s.perm.push_back(a.root_basis_index(a.system().negative_index(r)));
    s.sign.push_back(-1);
  }
  return s;
}

// tau_chi: e_alpha -> (-1)^(chi . alpha-bar) e_alpha, identity on H.
inline AlgebraAutomorphism diagonal_automorphism(const ChevalleyAlgebra& a, const F2Vector& chi) {
  if (chi.dim != a.rank())
    fail("diagonal_automorphism: character has wrong dimension");
  AlgebraAutomorphism t;
  for (int i = 0; i < a.dim(); ++i) {
    t.perm.push_back(i);
    t.sign.push_back(1);
  }
  const Mod2Reduction red(a.system());
  for (int r = 0; r < a.system().size(); ++r)
    if (parity(red.root_class(r) & chi.bits))
      t.sign[static_cast<std::size_t>(a.root_basis_index(r))] = -1;
  return t;
}

// Same, from the values of chi on all of R-bar (value 1 meaning -1); the
// table must be additive.
inline AlgebraAutomorphism diagonal_automorphism(const ChevalleyAlgebra& a,
                                                 const std::vector<std::uint8_t>& values) {
  const int n = a.rank();
  if (values.size() != (std::size_t(1) << n))
    fail("diagonal_automorphism: value table has wrong size");
  std::uint32_t bits = 0;
  for (int i = 0; i < n; ++i)
    if (values[std::size_t(1) << i] & 1)
      bits |= std::uint32_t(1) << i;
  for (std::uint32_t x = 0; x < values.size(); ++x)
    if ((values[x] & 1) != parity(x & bits))
      fail("diagonal_automorphism: character is not linear");
  return diagonal_automorphism(a, F2Vector(bits, n));
}

// Exhaustive over basis pairs.
inline bool preserves_bracket(const ChevalleyAlgebra& a, const AlgebraAutomorphism& phi) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LieElement lhs = a.zero(), rhs = a.zero();
      a.bracket_basis(i, j, [&](int k, std::int64_t c) {
        lhs[static_cast<std::size_t>(phi.perm[static_cast<std::size_t>(k)])] += c * phi.sign[static_cast<std::size_t>(k)];
      });
      const int pi = phi.perm[static_cast<std::size_t>(i)], pj = phi.perm[static_cast<std::size_t>(j)];
      const std::int64_t c0 = phi.sign[static_cast<std::size_t>(i)] * phi.sign[static_cast<std::size_t>(j)];
      a.bracket_basis(pi, pj, [&](int k, std::int64_t c) { rhs[static_cast<std::size_t>(k)] += c0 * c; });
      if (lhs != rhs)
        return false;
    }
  return true;
}

// Matrix of x -> [x, s] for each s, stacked.
inline modp::IntMatrix bracket_matrix(const ChevalleyAlgebra& a, const std::vector<LieElement>& s) {
  const int n = a.dim();
  modp::IntMatrix m;
  for (const auto& el : s) {
    a.check(el);
    modp::IntMatrix block(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < n; ++t)
        if (el[static_cast<std::size_t>(t)])
          a.bracket_basis(j, t, [&](int k, std::int64_t c) {
            block[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] += c * el[static_cast<std::size_t>(t)];
          });
    for (auto& row : block)
      m.push_back(std::move(row));
  }
  return m;
}

// {x : [x, s] = 0 for all s}, as an integer basis.
inline std::vector<LieElement> centralizer(const ChevalleyAlgebra& a, const std::vector<LieElement>& s) {
  std::vector<LieElement> nonzero;
  for (const auto& x : s)
    if (!is_zero(x))
      nonzero.push_back(x);
  if (nonzero.empty()) {
    std::vector<LieElement> all;
    for (int i = 0; i < a.dim(); ++i)
      all.push_back(a.basis(i));
    return all;
  }
  return modp::exact_kernel(bracket_matrix(a, nonzero), a.dim());
}

inline int rank_of_elements(const std::vector<LieElement>& v, int dim) {
  modp::Matrix m;
  for (const auto& x : v) {
    std::vector<std::uint64_t> r(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j)
      r[static_cast<std::size_t>(j)] = modp::from_int(x[static_cast<std::size_t>(j)]);
    m.push_back(std::move(r));
  }
  return modp::rank(std::move(m), dim);
}

// Abelian, of dimension rank, and self-centralizing. The fast path uses a
// generic element h of the span: C(span) is inside ker ad(h), and
// dim ker_Q <= dim ker_p, so dim ker_p(ad h) = rank settles it.
inline bool is_cartan_subalgebra(const ChevalleyAlgebra& a, const std::vector<LieElement>& basis,
                                 std::uint64_t seed = 1) {
  if (static_cast<int>(basis.size()) != a.rank() || rank_of_elements(basis, a.dim()) != a.rank())
    return false;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!is_zero(a.bracket(basis[i], basis[j])))
        return false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(1, 1000);
  LieElement h = a.zero();
  for (const auto& b : basis)
    h = h + dist(rng) * b;
  const auto m = bracket_matrix(a, {h});
  modp::Matrix mm;
  for (const auto& row : m) {
    std::vector<std::uint64_t> r;
    for (auto c : row)
      r.push_back(modp::from_int(c));
    mm.push_back(std::move(r));
  }
  if (a.dim() - modp::rank(std::move(mm), a.dim()) == a.rank())
    return true;
  return static_cast<int>(centralizer(a, basis).size()) == a.rank();
}

} // namespace egrade

#endif // EGRADE_CHEVALLEY_HPP_
