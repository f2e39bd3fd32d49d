#ifndef EGRADE_SYMMETRY_HPP_
#define EGRADE_SYMMETRY_HPP_

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "gradings.hpp"
#include "group.hpp"
#include "parallel.hpp"

namespace egrade {

// Rbar = Ebar + Ebar' + Wbar with Ebar' totally isotropic and dual to Ebar
// (B(v_i, u_j) = delta_ij) and Wbar = (Ebar + Ebar')^perp.
struct WittSplit {
  F2Subspace ebar, ebar_prime, wbar;
  std::vector<F2Vector> u, v, w; // bases
};

inline WittSplit witt_split(const QuadraticSpace& q, const F2Subspace& ebar) {
  if (!is_totally_isotropic(q, ebar))
    fail("witt_split: Ebar is not totally isotropic");
  const int n = q.dim();
  WittSplit ws;
  ws.ebar = ebar;
  ws.u = ebar.basis();
  const std::uint32_t total = std::uint32_t(1) << n;
  for (std::size_t i = 0; i < ws.u.size(); ++i) {
    std::optional<std::uint32_t> pick;
    for (std::uint32_t x = 1; x < total && !pick; ++x) {
      if (q.value(x))
        continue;
      bool ok = true;
      for (std::size_t j = 0; j < ws.u.size() && ok; ++j)
        ok = q.b(x, ws.u[j].bits) == (i == j ? 1 : 0);
      for (std::size_t l = 0; l < ws.v.size() && ok; ++l)
        ok = q.b(x, ws.v[l].bits) == 0;
      if (ok)
        pick = x;
    }
    if (!pick)
      fail("witt_split: no hyperbolic partner (internal error)");
    ws.v.emplace_back(*pick, n);
  }
  ws.ebar_prime = F2Subspace::span(ws.v, n);
  std::vector<F2Vector> uv = ws.u;
  uv.insert(uv.end(), ws.v.begin(), ws.v.end());
  ws.wbar = perp(q, F2Subspace::span(uv, n));
  ws.w = ws.wbar.basis();
  return ws;
}

inline WittSplit witt_split(const UniversalGrading& g) {
  return witt_split(reduction(g.kind()).form(), g.comp.ebar);
}

// Basis of G adapted to the split: pi(v_1..v_d), pi(w_1..w_m), s. The matrix
// `to_std` has these as columns.
struct AdaptedBasis {
  WittSplit split;
  int d = 0, m = 0, n = 0;
  F2LinearMap to_std, from_std;
};

inline AdaptedBasis adapted_basis(const UniversalGrading& g) {
  AdaptedBasis ab;
  ab.split = witt_split(g);
  ab.d = static_cast<int>(ab.split.v.size());
  ab.m = static_cast<int>(ab.split.w.size());
  ab.n = g.group_dim;
  std::vector<F2Vector> cols;
  for (const auto& x : ab.split.v)
    cols.emplace_back(g.pi.apply_bits(x.bits), ab.n);
  for (const auto& x : ab.split.w)
    cols.emplace_back(g.pi.apply_bits(x.bits), ab.n);
  cols.emplace_back(g.s(), ab.n);
  ab.to_std = map_from_columns(cols, ab.n);
  if (!ab.to_std.is_invertible())
    fail("adapted_basis: split does not give a basis of G (internal error)");
  ab.from_std = ab.to_std.inverse();
  return ab;
}

// |W_s| = |O(q|W)| |GL(E')| |Hom(E',W)| |Hom(E'+W, F2)|
inline std::uint64_t ws_order(const UniversalGrading& g) {
  if (g.comp.exceptional_rad)
    fail("ws_order: needs a totally isotropic Ebar");
  const auto& q = reduction(g.kind()).form();
  const auto ws = witt_split(q, g.comp.ebar);
  const int d = ws.ebar_prime.dim(), m = ws.wbar.dim();
  std::uint64_t r = orthogonal_group_order(restrict(q, ws.wbar));
  r = mul_checked(r, gl_order(d));
  r = mul_checked(r, pow2(d * m));
  return mul_checked(r, pow2(d + m));
}

// Membership in W_s through the flag 1 <= <s> <= H <= G and the form q_{H,s}
// on H/<s> = pi(Ebar^perp).
class WsMembership {
public:
  explicit WsMembership(const UniversalGrading& g) : n_(g.group_dim), s_(g.s()) {
    if (g.comp.exceptional_rad)
      fail("ws_membership: needs a totally isotropic Ebar");
    const auto& red = reduction(g.kind());
    const auto& q = red.form();
    const auto ep = perp(q, g.comp.ebar);
    std::vector<F2Vector> hb{F2Vector(s_, n_)};
    for (const auto& x : ep.basis())
      hb.emplace_back(g.pi.apply_bits(x.bits), n_);
    h_ = F2Subspace::span(hb, n_);
    in_h_.assign(std::size_t(1) << n_, 0);
    qh_.assign(std::size_t(1) << n_, 0);
    const auto sec = quotient_section(red.rank(), g.comp.ebar);
    h_.for_each_element([&](const F2Vector& x) {
      in_h_[x.bits] = 1;
      qh_[x.bits] = static_cast<std::uint8_t>(q.value(sec.apply_bits(x.bits & ~s_)));
      h_elems_.push_back(x.bits);
    });
  }

  const F2Subspace& h() const { return h_; }
  int q_h(std::uint32_t x) const { return qh_.at(x); }

  // cols[i] = image of the i-th standard basis vector; assumed invertible.
  bool test(const std::uint32_t* cols) const {
    if (apply(cols, s_) != s_)
      return false;
    for (auto x : h_elems_) {
      const std::uint32_t y = apply(cols, x);
      if (!in_h_[y] || qh_[y] != qh_[x])
        return false;
    }
    return true;
  }

  bool operator()(const F2LinearMap& w) const {
    if (w.in_dim() != n_ || w.out_dim() != n_)
      fail("ws_membership: map has the wrong size");
    if (!w.is_invertible())
      fail("ws_membership: map is not invertible");
    std::vector<std::uint32_t> cols;
    for (const auto& c : w.columns())
      cols.push_back(c.bits);
    return test(cols.data());
  }

private:
  static std::uint32_t apply(const std::uint32_t* cols, std::uint32_t v) {
    std::uint32_t r = 0;
    while (v) {
      r ^= cols[std::countr_zero(v)];
      v &= v - 1;
    }
    return r;
  }

  int n_;
  std::uint32_t s_;
  F2Subspace h_;
  std::vector<std::uint8_t> in_h_, qh_;
  std::vector<std::uint32_t> h_elems_;
};

inline bool ws_membership(const UniversalGrading& g, const F2LinearMap& w) { return WsMembership(g)(w); }

// Blocks of an element of W_s in the adapted basis.
struct WsBlocks {
  F2LinearMap f;     // on Ebar'
  F2LinearMap alpha; // Ebar' -> Wbar
  F2LinearMap gw;    // on Wbar
  F2Vector xi;       // row on Ebar' + Wbar
};

inline std::optional<WsBlocks> ws_blocks(const AdaptedBasis& ab, const F2LinearMap& w) {
  const F2LinearMap a = ab.from_std * w * ab.to_std;
  const int d = ab.d, m = ab.m, n = ab.n;
  const std::uint32_t s = std::uint32_t(1) << (n - 1);
  if (a.column(n - 1).bits != s)
    return std::nullopt;
  const std::uint32_t emask = low_mask(d);
  std::vector<std::uint32_t> fc, ac, gc;
  std::uint32_t xi = 0;
  for (int j = 0; j < n - 1; ++j) {
    const std::uint32_t c = a.column(j).bits;
    if (c & s)
      xi |= std::uint32_t(1) << j;
    if (j < d) {
      fc.push_back(c & emask);
      ac.push_back((c >> d) & low_mask(m));
    } else {
      if (c & emask)
        return std::nullopt;
      gc.push_back((c >> d) & low_mask(m));
    }
  }
  return WsBlocks{F2LinearMap::from_bits(d, d, fc), F2LinearMap::from_bits(d, m, ac),
                  F2LinearMap::from_bits(m, m, gc), F2Vector(xi, n - 1)};
}

inline int cartan_count(const UniversalGrading& g) { return static_cast<int>(cartan_degrees(g).size()); }

// |W|: |W_s| when the Cartan component is unique, 3 |W_s| with three, and
// |GL(G)| when every nonzero degree carries a Cartan subalgebra.
inline std::uint64_t full_weyl_order(const UniversalGrading& g) {
  const int c = cartan_count(g);
  if (c == 1)
    return ws_order(g);
  if (c == 3)
    return mul_checked(3, ws_order(g));
  if (static_cast<std::uint64_t>(c) + 1 == pow2(g.group_dim))
    return gl_order(g.group_dim);
  fail("full_weyl_order: unsupported number of Cartan components");
}

// FLAGS

struct FlagDescriptor {
  int dim = 0;
  std::vector<F2Subspace> chain; // proper nontrivial terms, increasing
};

inline FlagDescriptor make_flag(int dim, std::vector<F2Subspace> terms) {
  FlagDescriptor f{dim, {}};
  for (auto& t : terms) {
    if (t.ambient_dim() != dim)
      fail("flag: subspace in the wrong ambient space");
    if (t.dim() == 0 || t.dim() == dim)
      continue;
    if (!f.chain.empty()) {
      if (!t.contains(f.chain.back()))
        fail("flag: chain is not nested");
      if (t == f.chain.back())
        continue;
    }
    f.chain.push_back(std::move(t));
  }
  return f;
}

// prod |GL_{b_i}| * 2^{sum_{i<j} b_i b_j} over the successive quotients.
inline std::uint64_t flag_stabilizer_order(const FlagDescriptor& f) {
  std::vector<int> b;
  int prev = 0;
  for (const auto& t : f.chain) {
    if (t.dim() <= prev)
      fail("flag_stabilizer_order: chain is not strictly increasing");
    b.push_back(t.dim() - prev);
    prev = t.dim();
  }
  b.push_back(f.dim - prev);
  std::uint64_t r = 1;
  int below = 0;
  for (int x : b) {
    r = mul_checked(r, gl_order(x));
    r = mul_checked(r, pow2(below * x));
    below += x;
  }
  return r;
}

namespace detail {

// Calls fn(cols) for every invertible n x n matrix, n <= 5, split across
// threads by the first column.
template <typename Fn>
std::uint64_t count_invertible_matching(int n, Fn&& pred) {
  if (n < 1 || n > 5)
    fail("exhaustive enumeration: dimension must be in 1..5");
  const std::uint32_t total = std::uint32_t(1) << n;
  std::vector<std::uint64_t> partial(total, 0);
  parallel_for(total - 1, [&](std::size_t idx) {
    std::uint32_t cols[5] = {};
    cols[0] = static_cast<std::uint32_t>(idx + 1);
    std::uint64_t count = 0;
    // span[k]: bitset of the elements spanned by the first k columns.
    std::uint32_t span[6] = {1u, 1u | (1u << cols[0]), 0, 0, 0, 0};
    auto rec = [&](auto&& self, int k) -> void {
      if (k == n) {
        count += pred(static_cast<const std::uint32_t*>(cols));
        return;
      }
      for (std::uint32_t c = 1; c < total; ++c) {
        if ((span[k] >> c) & 1u)
          continue;
        cols[k] = c;
        std::uint32_t sp = span[k];
        for (std::uint32_t x = 0; x < total; ++x)
          if ((span[k] >> x) & 1u)
            sp |= 1u << (x ^ c);
        span[k + 1] = sp;
        self(self, k + 1);
      }
    };
    rec(rec, 1);
    partial[idx] = count;
  });
  std::uint64_t r = 0;
  for (auto c : partial)
    r += c;
  return r;
}

inline std::uint32_t apply_cols(const std::uint32_t* cols, std::uint32_t v) {
  std::uint32_t r = 0;
  while (v) {
    r ^= cols[std::countr_zero(v)];
    v &= v - 1;
  }
  return r;
}

} // namespace detail

// Same order by enumerating every invertible matrix (dim <= 5).
inline std::uint64_t flag_stabilizer_order_exhaustive(const FlagDescriptor& f) {
  std::vector<std::vector<std::uint32_t>> bases;
  std::vector<F2Subspace> terms = f.chain;
  for (const auto& t : terms)
    bases.push_back(t.rows());
  return detail::count_invertible_matching(f.dim, [&](const std::uint32_t* cols) {
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (auto b : bases[i])
        if (terms[i].reduce_bits(detail::apply_cols(cols, b)))
          return false;
    return true;
  });
}

// Number of invertible maps on G passing ws_membership. Literal enumeration
// for dim G <= 5. For dim G = 6 the maps fixing s are [[A,0],[xi,1]]; the
// count is 2^5 * #{A : [[A,0],[0,1]] passes}, valid because the passing maps
// form a group containing every translation (checked here for all xi).
inline std::uint64_t ws_count_exhaustive(const UniversalGrading& g) {
  const WsMembership mem(g);
  const int n = g.group_dim;
  if (n <= 5)
    return detail::count_invertible_matching(n, [&](const std::uint32_t* c) { return mem.test(c); });
  if (n != 6)
    fail("ws_count_exhaustive: dimension must be at most 6");
  const std::uint32_t s = g.s();
  for (std::uint32_t xi = 0; xi < s; ++xi) {
    std::uint32_t cols[6];
    for (int j = 0; j < 5; ++j)
      cols[j] = (std::uint32_t(1) << j) | (((xi >> j) & 1u) ? s : 0u);
    cols[5] = s;
    if (!mem.test(cols))
      fail("ws_count_exhaustive: a translation fails membership");
  }
  const std::uint64_t a = detail::count_invertible_matching(5, [&](const std::uint32_t* c) {
    std::uint32_t cols[6];
    for (int j = 0; j < 5; ++j)
      cols[j] = c[j];
    cols[5] = s;
    return mem.test(cols);
  });
  return mul_checked(a, pow2(5));
}

// S = <Cartan degrees>, and K = <zero degrees> when it is nontrivial.
inline FlagDescriptor weyl_flag(const UniversalGrading& g) {
  std::vector<F2Vector> sg, kg;
  for (const auto& c : g.components) {
    const F2Vector v(c.degree, g.group_dim);
    if (c.is_cartan)
      sg.push_back(v);
    if (c.dim == 0)
      kg.push_back(v);
  }
  auto S = F2Subspace::span(sg, g.group_dim);
  auto K = F2Subspace::span(kg, g.group_dim);
  std::vector<F2Subspace> terms{S};
  if (K.dim() > 0)
    terms.push_back(K);
  return make_flag(g.group_dim, std::move(terms));
}

// Dimension of the fixed subalgebra of tau = diag(chi) with chi = b_q(., v).
inline int involution_fixed_dim(Kind kind, const F2Vector& v) {
  const auto& red = reduction(kind);
  if (v.dim != red.rank())
    fail("involution_fixed_dim: vector of the wrong dimension");
  if (v.is_zero())
    fail("involution_fixed_dim: v must be nonzero");
  int r = red.rank();
  for (int i = 0; i < red.system().size(); ++i)
    r += red.form().b(red.root_class(i), v.bits) == 0;
  return r;
}

// GENERATORS

namespace detail {

inline F2LinearMap elementary(int n, int from, int to) {
  std::vector<std::uint32_t> cols;
  for (int j = 0; j < n; ++j)
    cols.push_back((std::uint32_t(1) << j) | (j == from ? std::uint32_t(1) << to : 0u));
  return F2LinearMap::from_bits(n, n, cols);
}

// Generators of O(q) on a small space.
inline std::vector<F2LinearMap> orthogonal_generators(const QuadraticSpace& q) {
  const int m = q.dim();
  std::vector<F2LinearMap> out;
  if (m == 0)
    return out;
  if (m <= 4) {
    // Every element, by brute force over all matrices.
    const std::uint32_t total = std::uint32_t(1) << m;
    std::vector<std::uint32_t> cols(static_cast<std::size_t>(m), 0);
    auto rec = [&](auto&& self, int k) -> void {
      if (k == m) {
        auto f = F2LinearMap::from_bits(m, m, cols);
        if (f.is_invertible() && is_isometry_exhaustive(q, f))
          out.push_back(f);
        return;
      }
      for (std::uint32_t c = 1; c < total; ++c) {
        cols[static_cast<std::size_t>(k)] = c;
        self(self, k + 1);
      }
    };
    rec(rec, 0);
    return out;
  }
  // Reflections, pruned to those not already generated when O(q) is small.
  const std::uint64_t order = orthogonal_group_order(q);
  const bool prune = order <= 4'000'000 && m <= 8;
  std::optional<GroupClosure> cur;
  for (const auto& v : nonisotropic_vectors(q)) {
    auto r = reflection(q, v);
    if (r == F2LinearMap::identity(m))
      continue;
    if (prune) {
      if (cur && cur->set.contains(pack(r)))
        continue;
      out.push_back(r);
      cur = group_closure(out, m);
      if (cur->elements.size() == order)
        break;
    } else {
      out.push_back(r);
    }
  }
  return out;
}

} // namespace detail

// Generators of W(Gamma) acting on G (standard coordinates).
inline std::vector<F2LinearMap> weyl_generators(const UniversalGrading& g) {
  const int n = g.group_dim;
  const int c = cartan_count(g);
  std::vector<F2LinearMap> gens;
  if (static_cast<std::uint64_t>(c) + 1 == pow2(n)) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          gens.push_back(detail::elementary(n, i, j));
    return gens;
  }
  const auto ab = adapted_basis(g);
  const int d = ab.d, m = ab.m, sidx = n - 1;
  std::vector<F2LinearMap> adapted;
  for (int i = 0; i < sidx; ++i)
    adapted.push_back(detail::elementary(n, i, sidx)); // translations
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j)
        adapted.push_back(detail::elementary(n, i, j)); // GL(Ebar')
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < m; ++j)
      adapted.push_back(detail::elementary(n, i, d + j)); // Hom(Ebar', Wbar)
  const auto& q = reduction(g.kind()).form();
  for (const auto& og : detail::orthogonal_generators(restrict(q, ab.split.wbar))) {
    std::vector<std::uint32_t> cols;
    for (int j = 0; j < n; ++j) {
      if (j >= d && j < d + m)
        cols.push_back(og.column(j - d).bits << d);
      else
        cols.push_back(std::uint32_t(1) << j);
    }
    adapted.push_back(F2LinearMap::from_bits(n, n, cols));
  }
  for (const auto& a : adapted)
    gens.push_back(ab.to_std * a * ab.from_std);

  if (c == 3) {
    // Swap s with another Cartan degree s', fixing a complement of S chosen
    // compatibly with the flag.
    const auto flag = weyl_flag(g);
    const auto cd = cartan_degrees(g);
    std::uint32_t s2 = 0;
    for (auto x : cd)
      if (x != g.s())
        s2 = x;
    std::vector<F2Vector> basis{F2Vector(s2, n), F2Vector(g.s(), n)};
    F2Subspace acc = F2Subspace::span(basis, n);
    auto extend_to = [&](const F2Subspace& t) {
      for (const auto& x : t.basis())
        if (!acc.contains(x)) {
          basis.push_back(x);
          acc = F2Subspace::span(basis, n);
        }
    };
    for (const auto& t : flag.chain)
      extend_to(t);
    extend_to(F2Subspace::whole(n));
    const auto B = map_from_columns(basis, n);
    std::vector<std::uint32_t> cols;
    for (int j = 0; j < n; ++j)
      cols.push_back(j == 0 ? 2u : j == 1 ? 1u : std::uint32_t(1) << j);
    gens.push_back(B * F2LinearMap::from_bits(n, n, cols) * B.inverse());
  } else if (c != 1) {
    fail("weyl_generators: unsupported number of Cartan components");
  }
  return gens;
}

inline GroupClosure weyl_group_elements(const UniversalGrading& g, std::size_t limit = 20'000'000) {
  if (g.group_dim > 8)
    fail("weyl_group_elements: group too large to enumerate");
  const std::uint64_t order = full_weyl_order(g);
  if (order > limit)
    fail("weyl_group_elements: |W| = " + std::to_string(order) + " exceeds the enumeration limit");
  return group_closure(weyl_generators(g), g.group_dim, limit, static_cast<std::size_t>(order));
}

} // namespace egrade

#endif // EGRADE_SYMMETRY_HPP_
