#ifndef EGRADE_INVARIANTS_HPP_
#define EGRADE_INVARIANTS_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "symmetry.hpp"

namespace egrade {

// The coarsening of `base` (a grading over its universal group U) along
// alpha: U -> F2^n.
struct CoarseGrading {
  UniversalGrading base;
  F2LinearMap alpha;

  int target_dim() const { return alpha.out_dim(); }
};

inline std::vector<std::uint32_t> support_degrees(const UniversalGrading& g) {
  std::vector<std::uint32_t> out;
  for (const auto& c : g.components)
    if (c.dim > 0)
      out.push_back(c.degree);
  return out;
}

// alpha must be injective on the support and keep 0 out of its image.
inline void validate_coarsening(const CoarseGrading& cg) {
  if (cg.base.comp.exceptional_rad)
    fail("coarse grading: the base must have a totally isotropic Ebar");
  if (cg.alpha.in_dim() != cg.base.group_dim)
    fail("coarse grading: alpha must be defined on F2^" + std::to_string(cg.base.group_dim));
  if (cg.alpha.out_dim() < 1 || cg.alpha.out_dim() > 16)
    fail("coarse grading: target dimension must be in 1..16");
  std::vector<std::uint8_t> seen(std::size_t(1) << cg.alpha.out_dim(), 0);
  for (auto d : support_degrees(cg.base)) {
    const std::uint32_t t = cg.alpha.apply_bits(d);
    if (t == 0)
      fail("coarse grading: alpha sends a support element to 0 (not special)");
    if (seen[t]++)
      fail("coarse grading: alpha is not injective on the support");
  }
}

inline CoarseGrading make_coarse(UniversalGrading base, F2LinearMap alpha) {
  CoarseGrading cg{std::move(base), std::move(alpha)};
  validate_coarsening(cg);
  return cg;
}

inline F2Subspace support_subgroup(const CoarseGrading& cg) {
  std::vector<F2Vector> v;
  for (auto d : support_degrees(cg.base))
    v.emplace_back(cg.alpha.apply_bits(d), cg.target_dim());
  return F2Subspace::span(v, cg.target_dim());
}

enum class InvCase { i, ii, iii, iv, v };

inline const char* to_string(InvCase c) {
  switch (c) {
  case InvCase::i: return "i";
  case InvCase::ii: return "ii";
  case InvCase::iii: return "iii";
  case InvCase::iv: return "iv";
  case InvCase::v: return "v";
  }
  return "?";
}

// Forms are value tables in the quotient coordinates of F2^n / S
// (quotient_map order); entries outside the domain hold kOutside.
struct InvSequence {
  static constexpr std::uint8_t kOutside = 2;

  InvCase case_tag = InvCase::v;
  int n = 0;
  F2Subspace T;
  std::optional<F2Subspace> K, S, H;
  std::vector<std::uint8_t> q_table; // case v: q_{H,S} on H/S
  std::vector<std::uint8_t> b_table; // case iv: b_{T,S} on T/S x T/S, row major

  bool operator==(const InvSequence&) const = default;
};

inline InvSequence compute_inv(const CoarseGrading& cg) {
  validate_coarsening(cg);
  const auto& base = cg.base;
  const auto& red = reduction(base.kind());
  const auto& q = red.form();
  const int n = cg.target_dim();
  const int c = cartan_count(base);

  InvSequence inv;
  inv.n = n;
  inv.T = support_subgroup(cg);
  std::vector<F2Vector> sg;
  for (auto d : cartan_degrees(base))
    sg.emplace_back(cg.alpha.apply_bits(d), n);
  const F2Subspace S = F2Subspace::span(sg, n);

  if (base.kind() == Kind::E8 && c == 31) {
    inv.case_tag = InvCase::i;
    return inv;
  }
  if (base.kind() == Kind::E8 && c == 3) {
    inv.case_tag = InvCase::ii;
    std::vector<std::uint8_t> in_supp(std::size_t(1) << n, 0);
    for (auto d : support_degrees(base))
      in_supp[cg.alpha.apply_bits(d)] = 1;
    std::vector<F2Vector> kg;
    inv.T.for_each_element([&](const F2Vector& t) {
      if (!in_supp[t.bits])
        kg.push_back(t);
    });
    inv.K = F2Subspace::span(kg, n);
    inv.S = S;
    return inv;
  }
  if (base.kind() == Kind::E7 && c == 3) {
    inv.case_tag = InvCase::iii;
    inv.S = S;
    return inv;
  }
  if (c != 1)
    fail("compute_inv: unexpected number of Cartan components");

  inv.S = S;
  const auto qm = quotient_map(n, S);
  const std::size_t N = std::size_t(1) << qm.out_dim();
  // pi-bar: Rbar -> T/S
  auto pibar = [&](std::uint32_t x) { return qm.apply_bits(cg.alpha.apply_bits(base.pi.apply_bits(x))); };

  if (base.kind() == Kind::E7 && base.comp.ebar.dim() == 0 && inv.T.dim() == 7) {
    inv.case_tag = InvCase::iv;
    if (n > 12)
      fail("compute_inv: target dimension too large for the bilinear table");
    inv.b_table.assign(N * N, InvSequence::kOutside);
    const std::uint32_t total = std::uint32_t(1) << q.dim();
    for (std::uint32_t x = 0; x < total; ++x)
      for (std::uint32_t y = 0; y < total; ++y) {
        auto& e = inv.b_table[pibar(x) * N + pibar(y)];
        const auto v = static_cast<std::uint8_t>(q.b(x, y));
        if (e != InvSequence::kOutside && e != v)
          fail("compute_inv: b_{T,S} is not well defined (internal error)");
        e = v;
      }
    return inv;
  }

  inv.case_tag = InvCase::v;
  inv.q_table.assign(N, InvSequence::kOutside);
  std::vector<F2Vector> hg = sg;
  perp(q, base.comp.ebar).for_each_element([&](const F2Vector& x) {
    hg.emplace_back(cg.alpha.apply_bits(base.pi.apply_bits(x.bits)), n);
    auto& e = inv.q_table[pibar(x.bits)];
    const auto v = static_cast<std::uint8_t>(q.value(x.bits));
    if (e != InvSequence::kOutside && e != v)
      fail("compute_inv: q_{H,S} is not well defined (internal error)");
    e = v;
  });
  inv.H = F2Subspace::span(hg, n);
  return inv;
}

// Name of the first field where the invariants differ.
inline std::optional<std::string> first_difference(const InvSequence& a, const InvSequence& b) {
  if (a.case_tag != b.case_tag)
    return "case";
  if (!(a.T == b.T))
    return "T";
  if (a.K != b.K)
    return "K";
  if (a.S != b.S)
    return "S";
  if (a.H != b.H)
    return "H";
  if (a.q_table != b.q_table)
    return "q_H,S";
  if (a.b_table != b.b_table)
    return "b_T,S";
  return std::nullopt;
}

inline bool same_equivalence_class(const UniversalGrading& a, const UniversalGrading& b) {
  return a.kind() == b.kind() && a.comp.ebar.dim() == b.comp.ebar.dim() &&
         a.comp.exceptional_rad == b.comp.exceptional_rad;
}

inline bool is_isomorphic(const CoarseGrading& a, const CoarseGrading& b) {
  if (a.target_dim() != b.target_dim())
    fail("is_isomorphic: the gradings have different target groups");
  if (!same_equivalence_class(a.base, b.base))
    return false;
  return compute_inv(a) == compute_inv(b);
}

// Decides alpha = beta o omega for some omega in W(base) by search over the
// enumerated Weyl group.
class WeylOrbitOracle {
public:
  explicit WeylOrbitOracle(const UniversalGrading& base, std::size_t limit = 20'000'000)
      : base_(base), w_(weyl_group_elements(base, limit)) {}

  const GroupClosure& group() const { return w_; }
  const UniversalGrading& base() const { return base_; }

  bool operator()(const F2LinearMap& alpha, const F2LinearMap& beta) const {
    const int m = base_.group_dim;
    if (alpha.in_dim() != m || beta.in_dim() != m || alpha.out_dim() != beta.out_dim())
      fail("weyl_orbit_oracle: maps have mismatched shapes");
    if (beta.rank() == m) {
      std::unordered_map<std::uint32_t, std::uint32_t> pre;
      for (std::uint32_t u = 0; u < (std::uint32_t(1) << m); ++u)
        pre.emplace(beta.apply_bits(u), u);
      std::vector<std::uint32_t> cols;
      for (int i = 0; i < m; ++i) {
        auto it = pre.find(alpha.column(i).bits);
        if (it == pre.end())
          return false;
        cols.push_back(it->second);
      }
      const auto omega = F2LinearMap::from_bits(m, m, cols);
      return omega.is_invertible() && w_.set.contains(pack(omega));
    }
    for (auto p : w_.elements) {
      bool eq = true;
      for (int i = 0; i < m && eq; ++i)
        eq = beta.apply_bits(static_cast<std::uint32_t>((p >> (8 * i)) & 0xFF)) == alpha.column(i).bits;
      if (eq)
        return true;
    }
    return false;
  }

private:
  UniversalGrading base_;
  GroupClosure w_;
};

inline bool weyl_orbit_oracle(const CoarseGrading& a, const CoarseGrading& b) {
  if (a.target_dim() != b.target_dim())
    fail("weyl_orbit_oracle: the gradings have different target groups");
  if (!same_equivalence_class(a.base, b.base))
    return false;
  if (!(a.base.comp.ebar == b.base.comp.ebar))
    fail("weyl_orbit_oracle: both coarsenings must share the same base grading");
  return WeylOrbitOracle(a.base)(a.alpha, b.alpha);
}

// SAMPLING

// Random injective map F2^m -> F2^n.
inline F2LinearMap random_injective(int m, int n, std::mt19937_64& rng) {
  if (m > n)
    fail("random_injective: m > n");
  for (;;) {
    std::vector<std::uint32_t> cols;
    for (int i = 0; i < m; ++i)
      cols.push_back(static_cast<std::uint32_t>(rng()) & low_mask(n));
    auto f = F2LinearMap::from_bits(m, n, cols);
    if (f.rank() == m)
      return f;
  }
}

// Pairs (alpha, beta) of three shapes, in rotation: beta = alpha o omega with
// omega in W, beta = alpha o gamma with gamma random in GL(U), and an
// independent beta.
struct CoarseningPair {
  F2LinearMap alpha, beta;
  int shape = 0;
};

inline CoarseningPair sample_pair(const WeylOrbitOracle& oracle, int n, int shape, std::mt19937_64& rng) {
  const int m = oracle.base().group_dim;
  CoarseningPair p;
  p.shape = shape;
  p.alpha = random_injective(m, n, rng);
  switch (shape % 3) {
  case 0: {
    const auto& el = oracle.group().elements;
    p.beta = p.alpha * unpack(el[rng() % el.size()], m);
    break;
  }
  case 1:
    p.beta = p.alpha * random_injective(m, m, rng);
    break;
  default:
    p.beta = random_injective(m, n, rng);
  }
  return p;
}

} // namespace egrade

#endif // EGRADE_INVARIANTS_HPP_
