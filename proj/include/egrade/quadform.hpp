// Quadratic forms over F2.
//
// Q(x) = sum_{i<=j} Q_ij x_i x_j, stored row-wise: bit j of upper(i) is Q_ij
// for j >= i. The polarization B(x,y) = Q(x+y)+Q(x)+Q(y) is kept alongside.

#ifndef EGRADE_QUADFORM_HPP_
#define EGRADE_QUADFORM_HPP_

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "f2linalg.hpp"

namespace egrade {

class QuadraticSpace {
public:
  QuadraticSpace() = default;
  explicit QuadraticSpace(int dim) : dim_(dim), upper_(static_cast<std::size_t>(dim), 0),
                                     brow_(static_cast<std::size_t>(dim), 0) {
    if (dim < 0 || dim > kMaxDim)
      fail("QuadraticSpace: dimension out of range");
  }

  // coeffs lists the set positions (i,j); (j,i) is folded onto (i,j).
  static QuadraticSpace from_coeffs(int dim, const std::vector<std::pair<int, int>>& coeffs) {
    QuadraticSpace q(dim);
    for (auto [i, j] : coeffs) {
      if (i < 0 || j < 0 || i >= dim || j >= dim)
        fail("QuadraticSpace: coefficient index out of range");
      if (i > j)
        std::swap(i, j);
      q.upper_[static_cast<std::size_t>(i)] ^= std::uint32_t(1) << j;
    }
    q.rebuild();
    return q;
  }

  // From a value table over all 2^dim vectors; the table must be quadratic.
  static QuadraticSpace from_values(int dim, const std::vector<std::uint8_t>& values) {
    if (values.size() != (std::size_t(1) << dim))
      fail("QuadraticSpace::from_values: table size mismatch");
    QuadraticSpace q(dim);
    for (int i = 0; i < dim; ++i) {
      const std::uint32_t ei = std::uint32_t(1) << i;
      if (values[ei] & 1)
        q.upper_[static_cast<std::size_t>(i)] |= ei;
      for (int j = i + 1; j < dim; ++j) {
        const std::uint32_t ej = std::uint32_t(1) << j;
        if ((values[ei | ej] ^ values[ei] ^ values[ej]) & 1)
          q.upper_[static_cast<std::size_t>(i)] |= ej;
      }
    }
    q.rebuild();
    for (std::uint32_t x = 0; x < values.size(); ++x)
      if (q.value(x) != (values[x] & 1))
        fail("QuadraticSpace::from_values: table is not a quadratic form");
    return q;
  }

  int dim() const { return dim_; }
  std::uint32_t upper(int i) const { return upper_[static_cast<std::size_t>(i)]; }
  bool coeff(int i, int j) const {
    if (i > j)
      std::swap(i, j);
    return (upper_[static_cast<std::size_t>(i)] >> j) & 1u;
  }

  std::vector<std::pair<int, int>> coeffs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        if (coeff(i, j))
          out.emplace_back(i, j);
    return out;
  }

  int value(std::uint32_t x) const {
    int r = 0;
    std::uint32_t m = x;
    while (m) {
      const int i = std::countr_zero(m);
      r ^= parity(upper_[static_cast<std::size_t>(i)] & x);
      m &= m - 1;
    }
    return r;
  }
  int operator()(const F2Vector& v) const {
    check(v);
    return value(v.bits);
  }

  // Bit j of brow(i) is B(e_i, e_j).
  std::uint32_t brow(int i) const { return brow_[static_cast<std::size_t>(i)]; }
  std::uint32_t b_image(std::uint32_t x) const {
    std::uint32_t r = 0;
    while (x) {
      r ^= brow_[static_cast<std::size_t>(std::countr_zero(x))];
      x &= x - 1;
    }
    return r;
  }
  int b(std::uint32_t x, std::uint32_t y) const { return parity(b_image(x) & y); }
  int b(const F2Vector& x, const F2Vector& y) const {
    check(x);
    check(y);
    return b(x.bits, y.bits);
  }

  std::vector<std::uint8_t> value_table() const {
    std::vector<std::uint8_t> t(std::size_t(1) << dim_);
    for (std::uint32_t x = 0; x < t.size(); ++x)
      t[x] = static_cast<std::uint8_t>(value(x));
    return t;
  }

  bool operator==(const QuadraticSpace& o) const {
    return dim_ == o.dim_ && upper_ == o.upper_;
  }

  void check(const F2Vector& v) const {
    if (v.dim != dim_)
      fail("QuadraticSpace: vector dimension " + std::to_string(v.dim) +
           " != form dimension " + std::to_string(dim_));
  }

private:
  void rebuild() {
    std::fill(brow_.begin(), brow_.end(), 0);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if (coeff(i, j)) {
          brow_[static_cast<std::size_t>(i)] |= std::uint32_t(1) << j;
          brow_[static_cast<std::size_t>(j)] |= std::uint32_t(1) << i;
        }
  }

  int dim_ = 0;
  std::vector<std::uint32_t> upper_;
  std::vector<std::uint32_t> brow_;
};

using Isometry = F2LinearMap;

// Orthogonal sum on F2^(a+b), first summand on the low coordinates.
inline QuadraticSpace orthogonal_sum(const QuadraticSpace& a, const QuadraticSpace& b) {
  std::vector<std::pair<int, int>> c = a.coeffs();
  for (auto [i, j] : b.coeffs())
    c.emplace_back(i + a.dim(), j + a.dim());
  return QuadraticSpace::from_coeffs(a.dim() + b.dim(), c);
}

inline QuadraticSpace hyperbolic_plane() { return QuadraticSpace::from_coeffs(2, {{0, 1}}); }
inline QuadraticSpace anisotropic_plane() {
  return QuadraticSpace::from_coeffs(2, {{0, 0}, {0, 1}, {1, 1}});
}

// Symmetric matrix of B; as a map its columns are the rows of B.
inline F2LinearMap polarization(const QuadraticSpace& q) {
  std::vector<std::uint32_t> cols;
  for (int i = 0; i < q.dim(); ++i)
    cols.push_back(q.brow(i));
  return F2LinearMap::from_bits(q.dim(), q.dim(), cols);
}

struct Radicals {
  F2Subspace rad_b;
  F2Subspace rad_q;
  bool regular = false;
};

inline Radicals radicals(const QuadraticSpace& q) {
  Radicals r;
  r.rad_b = polarization(q).kernel();
  // Q is additive on rad_b, so its zero set there is a subspace.
  std::vector<F2Vector> cols;
  for (const auto& v : r.rad_b.basis())
    cols.emplace_back(static_cast<std::uint32_t>(q(v)), 1);
  const F2Subspace ker = F2LinearMap(r.rad_b.dim(), 1, cols).kernel();
  std::vector<F2Vector> gens;
  for (const auto& c : ker.basis())
    gens.emplace_back(r.rad_b.element_bits(c.bits), q.dim());
  r.rad_q = F2Subspace::span(gens, q.dim());
  r.regular = r.rad_q.dim() == 0;
  return r;
}

inline bool is_regular(const QuadraticSpace& q) { return radicals(q).regular; }

inline void require_regular(const QuadraticSpace& q, const char* what) {
  if (!is_regular(q))
    fail(std::string(what) + ": quadratic form is not regular");
}

inline std::uint64_t count_isotropic(const QuadraticSpace& q) {
  if (q.dim() > 30)
    fail("count_isotropic: dimension too large");
  std::uint64_t n = 0;
  const std::uint64_t total = std::uint64_t(1) << q.dim();
  for (std::uint64_t x = 0; x < total; ++x)
    n += q.value(static_cast<std::uint32_t>(x)) == 0;
  return n;
}

// Arf invariant by majority count; nullopt when the counts tie (odd dimension).
inline std::optional<int> arf(const QuadraticSpace& q) {
  require_regular(q, "arf");
  const std::uint64_t iso = count_isotropic(q);
  const std::uint64_t total = std::uint64_t(1) << q.dim();
  if (2 * iso > total)
    return 0;
  if (2 * iso < total)
    return 1;
  return std::nullopt;
}

inline std::vector<F2Vector> nonisotropic_vectors(const QuadraticSpace& q) {
  if (q.dim() > 16)
    fail("nonisotropic_vectors: dimension guard (<= 16)");
  std::vector<F2Vector> out;
  const std::uint32_t total = std::uint32_t(1) << q.dim();
  for (std::uint32_t x = 1; x < total; ++x)
    if (q.value(x))
      out.emplace_back(x, q.dim());
  return out;
}

// Q expressed on the coordinates of the stored basis of S.
inline QuadraticSpace restrict(const QuadraticSpace& q, const F2Subspace& s) {
  if (s.ambient_dim() != q.dim())
    fail("restrict: ambient dimension mismatch");
  const auto& rows = s.rows();
  std::vector<std::pair<int, int>> c;
  for (int i = 0; i < s.dim(); ++i) {
    if (q.value(rows[static_cast<std::size_t>(i)]))
      c.emplace_back(i, i);
    for (int j = i + 1; j < s.dim(); ++j)
      if (q.b(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]))
        c.emplace_back(i, j);
  }
  return QuadraticSpace::from_coeffs(s.dim(), c);
}

inline F2Subspace perp(const QuadraticSpace& q, const F2Subspace& s) {
  if (s.ambient_dim() != q.dim())
    fail("perp: ambient dimension mismatch");
  // x -> (B(x, s_j))_j
  std::vector<F2Vector> cols;
  for (int i = 0; i < q.dim(); ++i) {
    std::uint32_t c = 0;
    const std::uint32_t bi = q.brow(i);
    for (int j = 0; j < s.dim(); ++j)
      if (parity(bi & s.rows()[static_cast<std::size_t>(j)]))
        c |= std::uint32_t(1) << j;
    cols.emplace_back(c, s.dim());
  }
  return F2LinearMap(q.dim(), s.dim(), cols).kernel();
}

inline bool is_totally_isotropic(const QuadraticSpace& q, const F2Subspace& s) {
  const auto& r = s.rows();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (q.value(r[i]))
      return false;
    for (std::size_t j = i + 1; j < r.size(); ++j)
      if (q.b(r[i], r[j]))
        return false;
  }
  return true;
}

// A complement of E inside P (E <= P): the span of P's basis reduced modulo E.
inline F2Subspace complement_in(const F2Subspace& p, const F2Subspace& e) {
  std::vector<F2Vector> v;
  for (auto r : p.rows())
    v.emplace_back(e.reduce_bits(r), p.ambient_dim());
  return F2Subspace::span(v, p.ambient_dim());
}

struct InducedForm {
  QuadraticSpace form;
  F2Subspace complement; // coordinates of `form` are over this basis
};

inline InducedForm induced_on_quotient_with_basis(const QuadraticSpace& q, const F2Subspace& e) {
  if (!is_totally_isotropic(q, e))
    fail("induced_on_quotient: subspace is not totally isotropic");
  const F2Subspace p = perp(q, e);
  InducedForm r;
  r.complement = complement_in(p, e);
  r.form = restrict(q, r.complement);
  return r;
}

inline QuadraticSpace induced_on_quotient(const QuadraticSpace& q, const F2Subspace& e) {
  return induced_on_quotient_with_basis(q, e).form;
}

// WITT DECOMPOSITION

enum class WittCase { odd, even_arf0, even_arf1 };

inline const char* to_string(WittCase c) {
  switch (c) {
  case WittCase::odd: return "odd";
  case WittCase::even_arf0: return "even_arf0";
  case WittCase::even_arf1: return "even_arf1";
  }
  return "?";
}

struct WittData {
  std::vector<std::pair<F2Vector, F2Vector>> hyperbolic_pairs;
  std::vector<std::pair<F2Vector, int>> tail; // basis vector and its Q-value
  int witt_index = 0;
  WittCase case_tag = WittCase::even_arf0;
};

// Greedy and lexicographic: at each step u is the least isotropic vector of the
// current orthogonal complement that is not in its radical.
inline WittData witt_decompose(const QuadraticSpace& q) {
  require_regular(q, "witt_decompose");
  const int n = q.dim();
  WittData w;
  F2Subspace rest = F2Subspace::whole(n);
  for (;;) {
    std::uint32_t u = 0, v = 0;
    const std::uint64_t sz = rest.size();
    std::vector<std::uint32_t> elems;
    elems.reserve(static_cast<std::size_t>(sz));
    rest.for_each_element([&](const F2Vector& x) { elems.push_back(x.bits); });
    std::sort(elems.begin(), elems.end());
    for (auto x : elems) {
      if (x == 0 || q.value(x))
        continue;
      for (auto y : elems)
        if (q.b(x, y)) {
          u = x;
          v = y;
          break;
        }
      if (u)
        break;
    }
    if (!u)
      break;
    v ^= q.value(v) ? u : 0u;
    w.hyperbolic_pairs.emplace_back(F2Vector(u, n), F2Vector(v, n));
    rest = rest.intersect(perp(q, F2Subspace::span({F2Vector(u, n), F2Vector(v, n)}, n)));
  }
  for (auto r : rest.rows())
    w.tail.emplace_back(F2Vector(r, n), q.value(r));
  w.witt_index = static_cast<int>(w.hyperbolic_pairs.size());
  if (n % 2)
    w.case_tag = WittCase::odd;
  else
    w.case_tag = rest.dim() == 0 ? WittCase::even_arf0 : WittCase::even_arf1;
  return w;
}

// REFLECTIONS AND ISOMETRIES

inline Isometry reflection(const QuadraticSpace& q, const F2Vector& v) {
  q.check(v);
  if (q(v) != 1)
    fail("reflection: vector " + v.to_string() + " is isotropic");
  std::vector<std::uint32_t> cols;
  for (int i = 0; i < q.dim(); ++i)
    cols.push_back((std::uint32_t(1) << i) ^ (parity(q.brow(i) & v.bits) ? v.bits : 0u));
  return F2LinearMap::from_bits(q.dim(), q.dim(), cols);
}

// Basis-plus-polarization check.
inline bool is_isometry(const QuadraticSpace& q, const F2LinearMap& m) {
  if (m.in_dim() != q.dim() || m.out_dim() != q.dim() || !m.is_invertible())
    return false;
  for (int i = 0; i < q.dim(); ++i) {
    const std::uint32_t ci = m.column(i).bits;
    if (q.value(ci) != q.value(std::uint32_t(1) << i))
      return false;
    for (int j = i + 1; j < q.dim(); ++j)
      if (q.b(ci, m.column(j).bits) != static_cast<int>((q.brow(i) >> j) & 1u))
        return false;
  }
  return true;
}

inline bool is_isometry_exhaustive(const QuadraticSpace& q, const F2LinearMap& m) {
  if (m.in_dim() != q.dim() || m.out_dim() != q.dim() || !m.is_invertible())
    return false;
  if (q.dim() > 20)
    fail("is_isometry_exhaustive: dimension guard");
  const std::uint32_t total = std::uint32_t(1) << q.dim();
  for (std::uint32_t x = 0; x < total; ++x)
    if (q.value(m.apply_bits(x)) != q.value(x))
      return false;
  return true;
}

namespace detail {

// Greedy completion of x_i -> y_i to a full isometry. Returns nullopt when the
// assignment is not a partial isometry or cannot be extended.
inline std::optional<F2LinearMap> try_witt_extend(const QuadraticSpace& q,
                                                  std::vector<std::uint32_t> xs,
                                                  std::vector<std::uint32_t> ys) {
  const int n = q.dim();
  if (xs.size() != ys.size())
    return std::nullopt;
  const F2Subspace dom = F2Subspace::span([&] {
    std::vector<F2Vector> v;
    for (auto x : xs) v.emplace_back(x, n);
    return v;
  }(), n);
  const F2Subspace img = F2Subspace::span([&] {
    std::vector<F2Vector> v;
    for (auto y : ys) v.emplace_back(y, n);
    return v;
  }(), n);
  if (dom.dim() != static_cast<int>(xs.size()) || img.dim() != static_cast<int>(ys.size()))
    return std::nullopt;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (q.value(xs[i]) != q.value(ys[i]))
      return std::nullopt;
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (q.b(xs[i], xs[j]) != q.b(ys[i], ys[j]))
        return std::nullopt;
  }
  // Isometries fix the polar radical pointwise when it is a line with Q = 1.
  const F2Subspace rb = polarization(q).kernel();
  for (auto a : rb.rows()) {
    const bool in_dom = dom.contains(F2Vector(a, n));
    const bool in_img = img.contains(F2Vector(a, n));
    if (in_dom || in_img) {
      if (!in_dom || !in_img)
        return std::nullopt;
      // The partial map must send a to itself.
      std::vector<std::pair<std::uint32_t, std::uint32_t>> piv; // (vector, combination of xs)
      for (std::size_t i = 0; i < xs.size(); ++i) {
        std::uint32_t x = xs[i], t = std::uint32_t(1) << i;
        for (auto& [pv, pt] : piv)
          if ((x >> (31 - std::countl_zero(pv))) & 1u) {
            x ^= pv;
            t ^= pt;
          }
        if (x)
          piv.insert(std::find_if(piv.begin(), piv.end(),
                                  [&](const auto& p) { return p.first < x; }),
                     {x, t});
      }
      std::uint32_t v = a, coeff = 0;
      for (auto& [pv, pt] : piv)
        if ((v >> (31 - std::countl_zero(pv))) & 1u) {
          v ^= pv;
          coeff ^= pt;
        }
      std::uint32_t fa = 0;
      for (std::size_t i = 0; i < ys.size(); ++i)
        if ((coeff >> i) & 1u)
          fa ^= ys[i];
      if (fa != a)
        return std::nullopt;
    } else {
      xs.push_back(a);
      ys.push_back(a);
    }
  }
  // Extend the domain basis by standard vectors, then pick images greedily.
  {
    F2Subspace d = F2Subspace::span([&] {
      std::vector<F2Vector> v;
      for (auto x : xs) v.emplace_back(x, n);
      return v;
    }(), n);
    for (int i = 0; i < n && d.dim() < n; ++i) {
      const F2Vector e = F2Vector::unit(i, n);
      if (!d.contains(e)) {
        xs.push_back(e.bits);
        d = d + F2Subspace::span({e}, n);
      }
    }
  }
  F2Subspace used = F2Subspace::span([&] {
    std::vector<F2Vector> v;
    for (auto y : ys) v.emplace_back(y, n);
    return v;
  }(), n);
  const std::uint32_t total = std::uint32_t(1) << n;
  for (std::size_t k = ys.size(); k < xs.size(); ++k) {
    const std::uint32_t x = xs[k];
    const int qx = q.value(x);
    std::uint32_t want = 0; // bit j: B(x, xs[j])
    for (std::size_t j = 0; j < k; ++j)
      want |= static_cast<std::uint32_t>(q.b(x, xs[j])) << j;
    bool found = false;
    for (std::uint32_t y = 1; y < total; ++y) {
      if (q.value(y) != qx || used.reduce_bits(y) == 0)
        continue;
      const std::uint32_t by = q.b_image(y);
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        ok = static_cast<std::uint32_t>(parity(by & ys[j])) == ((want >> j) & 1u);
      if (!ok)
        continue;
      ys.push_back(y);
      used = used + F2Subspace::span({F2Vector(y, n)}, n);
      found = true;
      break;
    }
    if (!found)
      return std::nullopt;
  }
  // g = Y X^{-1}
  std::vector<F2Vector> xc, yc;
  for (auto x : xs) xc.emplace_back(x, n);
  for (auto y : ys) yc.emplace_back(y, n);
  const F2LinearMap X(n, n, xc), Y(n, n, yc);
  F2LinearMap g = Y * X.inverse();
  if (!is_isometry(q, g))
    return std::nullopt;
  return g;
}

} // namespace detail

inline std::optional<Isometry> try_witt_extend(const QuadraticSpace& q,
                                               const std::vector<std::pair<F2Vector, F2Vector>>& partial) {
  std::vector<std::uint32_t> xs, ys;
  for (const auto& [x, y] : partial) {
    q.check(x);
    q.check(y);
    xs.push_back(x.bits);
    ys.push_back(y.bits);
  }
  return detail::try_witt_extend(q, xs, ys);
}

// Extends an isometric assignment x_i -> y_i (x_i independent) to an isometry
// of the whole space, choosing images lexicographically.
inline Isometry witt_extend(const QuadraticSpace& q,
                            const std::vector<std::pair<F2Vector, F2Vector>>& partial) {
  auto g = try_witt_extend(q, partial);
  if (!g)
    fail("witt_extend: assignment is not an extendable partial isometry");
  return *g;
}

// |O(Q)| as a product over the standard basis of the number of admissible
// images at each step, earlier images fixed to their least admissible value.
inline std::uint64_t orthogonal_group_order(const QuadraticSpace& q) {
  require_regular(q, "orthogonal_group_order");
  const int n = q.dim();
  std::vector<std::uint32_t> xs, ys;
  std::uint64_t order = 1;
  const std::uint32_t total = std::uint32_t(1) << n;
  for (int k = 0; k < n; ++k) {
    xs.push_back(std::uint32_t(1) << k);
    std::uint64_t count = 0;
    std::uint32_t first = 0;
    for (std::uint32_t y = 1; y < total; ++y) {
      ys.push_back(y);
      if (detail::try_witt_extend(q, xs, ys)) {
        if (!count)
          first = y;
        ++count;
      }
      ys.pop_back();
    }
    if (!count)
      fail("orthogonal_group_order: no admissible image (internal error)");
    order = mul_checked(order, count);
    ys.push_back(first);
  }
  return order;
}

// All totally isotropic k-subspaces.
inline std::vector<F2Subspace> totally_isotropic_subspaces(const QuadraticSpace& q, int k) {
  if (q.dim() > 9)
    fail("totally_isotropic_subspaces: dimension guard (<= 9)");
  std::vector<F2Subspace> out;
  for_each_subspace(q.dim(), k, [&](F2Subspace s) {
    if (is_totally_isotropic(q, s))
      out.push_back(std::move(s));
  });
  return out;
}

// True iff O(Q) acts transitively on totally isotropic k-subspaces, each one
// linked to the first by a verified Witt-extension isometry.
inline bool ti_orbit_check(const QuadraticSpace& q, int k, std::size_t* count = nullptr) {
  if (q.dim() > 9)
    fail("ti_orbit_check: dimension guard (<= 9)");
  if (k < 0 || k > q.dim())
    fail("ti_orbit_check: k out of range");
  const auto all = totally_isotropic_subspaces(q, k);
  if (count)
    *count = all.size();
  if (all.empty())
    return true;
  const auto src = all.front().basis();
  for (const auto& t : all) {
    const auto dst = t.basis();
    std::vector<std::pair<F2Vector, F2Vector>> partial;
    for (std::size_t i = 0; i < src.size(); ++i)
      partial.emplace_back(src[i], dst[i]);
    auto g = try_witt_extend(q, partial);
    if (!g || !is_isometry_exhaustive(q, *g))
      return false;
    for (const auto& v : src)
      if (!t.contains((*g)(v)))
        return false;
  }
  return true;
}

} // namespace egrade

#endif // EGRADE_QUADFORM_HPP_
