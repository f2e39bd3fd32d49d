#include <gtest/gtest.h>

#include <set>

#include "egrade/symmetry.hpp"
#include "support.hpp"

using namespace egrade;
using egrade::testing::rng;

namespace {

UniversalGrading classified(Kind k, int d) { return grading_from_E(k, representative_ebar(k, d)); }

// Invertible maps preserving q (possibly degenerate), by backtracking over
// basis images.
std::uint64_t count_isometries(const QuadraticSpace& q) {
  const int m = q.dim();
  const std::uint32_t total = std::uint32_t(1) << m;
  std::vector<std::uint32_t> img(static_cast<std::size_t>(m));
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int k, const F2Subspace& span) -> void {
    if (k == m) {
      ++count;
      return;
    }
    const std::uint32_t ek = std::uint32_t(1) << k;
    for (std::uint32_t y = 1; y < total; ++y) {
      if (q.value(y) != q.value(ek) || span.contains(F2Vector(y, m)))
        continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j)
        ok = q.b(y, img[static_cast<std::size_t>(j)]) == q.b(ek, std::uint32_t(1) << j);
      if (!ok)
        continue;
      img[static_cast<std::size_t>(k)] = y;
      auto next = span;
      next = next + F2Subspace::span({F2Vector(y, m)}, m);
      self(self, k + 1, next);
    }
  };
  rec(rec, 0, F2Subspace(m));
  return count;
}

F2LinearMap random_invertible(int n) { return egrade::testing::random_invertible(n); }

} // namespace

TEST(WittSplit, Examples) {
  const auto& q8 = reduction(Kind::E8).form();
  const auto trivial = witt_split(q8, F2Subspace(8));
  EXPECT_EQ(trivial.ebar_prime.dim(), 0);
  EXPECT_EQ(trivial.wbar, F2Subspace::whole(8));

  const auto s8 = witt_split(q8, representative_ebar(Kind::E8, 3));
  EXPECT_EQ(s8.ebar_prime.dim(), 3);
  EXPECT_EQ(s8.wbar.dim(), 2);
  const auto qw = restrict(q8, s8.wbar);
  EXPECT_EQ(arf(qw), 0);
  EXPECT_EQ(nonisotropic_vectors(qw).size(), 1u);

  const auto& q7 = reduction(Kind::E7).form();
  const auto s7 = witt_split(q7, representative_ebar(Kind::E7, 3));
  EXPECT_EQ(s7.wbar, radicals(q7).rad_b);
  EXPECT_EQ(q7(s7.wbar.basis()[0]), 1);

  EXPECT_THROW(witt_split(q8, F2Subspace::span({nonisotropic_vectors(q8)[0]}, 8)), std::invalid_argument);
}

TEST(WsOrder, Examples) {
  EXPECT_EQ(ws_order(classified(Kind::E7, 3)), (1u << 10) * 3u * 7u);
  EXPECT_EQ(ws_order(classified(Kind::E8, 3)), (1u << 15) * 3u * 7u);
  // |GL_2(2)| |O^-_2(2)| 2^4 2^4
  EXPECT_EQ(ws_order(classified(Kind::E6, 2)), 6u * 6u * 16u * 16u);
  EXPECT_EQ(ws_order(classified(Kind::E6, 1)), 61440u);
  EXPECT_EQ(ws_order(classified(Kind::E6, 0)), 51840u * 64u);
}

TEST(WsMembership, Examples) {
  const auto g = classified(Kind::E6, 2);
  const int n = g.group_dim;
  EXPECT_TRUE(ws_membership(g, F2LinearMap::identity(n)));
  for (std::uint32_t xi = 0; xi < g.s(); ++xi) {
    std::vector<std::uint32_t> cols;
    for (int j = 0; j < n - 1; ++j)
      cols.push_back((std::uint32_t(1) << j) | (((xi >> j) & 1u) ? g.s() : 0u));
    cols.push_back(g.s());
    EXPECT_TRUE(ws_membership(g, F2LinearMap::from_bits(n, n, cols)));
  }
  EXPECT_THROW(ws_membership(g, F2LinearMap::zero(n, n)), std::invalid_argument);
  EXPECT_THROW(ws_membership(g, F2LinearMap::identity(n - 1)), std::invalid_argument);
  // Moving s is never allowed.
  std::vector<std::uint32_t> cols;
  for (int j = 0; j < n; ++j)
    cols.push_back(std::uint32_t(1) << ((j + 1) % n));
  EXPECT_FALSE(ws_membership(g, F2LinearMap::from_bits(n, n, cols)));
}

TEST(WsMembership, ExhaustiveCountMatchesOrder) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8})
    for (const auto& row : classify(k, false)) {
      if (row.group_rank > 6)
        continue;
      const auto g = grading_from_E(k, row.ebar);
      EXPECT_EQ(ws_count_exhaustive(g), ws_order(g)) << row.label();
    }
}

TEST(WsBlocks, Decomposition) {
  const auto g = classified(Kind::E8, 2);
  const auto ab = adapted_basis(g);
  EXPECT_EQ(ab.d, 2);
  EXPECT_EQ(ab.m, 4);
  for (const auto& w : weyl_generators(g)) {
    auto b = ws_blocks(ab, w);
    ASSERT_TRUE(b.has_value());
    EXPECT_TRUE(b->f.is_invertible());
    EXPECT_TRUE(is_isometry(restrict(reduction(Kind::E8).form(), ab.split.wbar), b->gw));
  }
}

TEST(FullWeylOrder, Examples) {
  EXPECT_EQ(full_weyl_order(classified(Kind::E7, 3)), 64512u);
  EXPECT_EQ(full_weyl_order(classified(Kind::E8, 3)), 2064384u);
  EXPECT_EQ(full_weyl_order(classified(Kind::E8, 4)), 9999360u);
  EXPECT_EQ(full_weyl_order(classified(Kind::E8, 0)), ws_order(classified(Kind::E8, 0)));
  EXPECT_EQ(full_weyl_order(classified(Kind::E8, 0)), 348364800ull * 256u);
}

TEST(FlagStabilizer, Examples) {
  const auto g7 = classified(Kind::E7, 3);
  const auto f7 = weyl_flag(g7);
  ASSERT_EQ(f7.chain.size(), 1u);
  EXPECT_EQ(f7.chain[0].dim(), 2);
  EXPECT_EQ(flag_stabilizer_order(f7), 168u * 64u * 6u);
  EXPECT_EQ(flag_stabilizer_order_exhaustive(f7), flag_stabilizer_order(f7));

  const auto g8 = classified(Kind::E8, 3);
  const auto f8 = weyl_flag(g8);
  ASSERT_EQ(f8.chain.size(), 2u);
  EXPECT_EQ(f8.chain[0].dim(), 2);
  EXPECT_EQ(f8.chain[1].dim(), 3);
  // |Stab_GL(H)(1)| |Hom(H, F2^2)| |GL_2|
  EXPECT_EQ(flag_stabilizer_order(f8), 8u * 168u * 256u * 6u);

  const auto trivial = make_flag(5, {});
  EXPECT_EQ(flag_stabilizer_order(trivial), gl_order(5));
  EXPECT_EQ(flag_stabilizer_order_exhaustive(trivial), gl_order(5));

  auto a = F2Subspace::span({F2Vector::from_string("1000")}, 4);
  auto b = F2Subspace::span({F2Vector::from_string("0100")}, 4);
  EXPECT_THROW(make_flag(4, {a, b}), std::invalid_argument);
}

TEST(ThreeCartan, OrdersAgree) {
  for (auto [k, d] : {std::pair{Kind::E7, 3}, std::pair{Kind::E8, 3}}) {
    const auto g = classified(k, d);
    EXPECT_EQ(cartan_count(g), 3);
    EXPECT_EQ(full_weyl_order(g), flag_stabilizer_order(weyl_flag(g)));
    EXPECT_EQ(full_weyl_order(g), 3 * ws_order(g));
  }
}

TEST(WeylGroup, ClosureMatchesOrder) {
  for (auto [k, d] : {std::pair{Kind::E6, 0}, std::pair{Kind::E6, 1}, std::pair{Kind::E6, 2}, std::pair{Kind::E7, 2},
                      std::pair{Kind::E7, 3}, std::pair{Kind::E8, 3}, std::pair{Kind::E8, 4}}) {
    const auto g = classified(k, d);
    const auto w = weyl_group_elements(g);
    EXPECT_EQ(w.elements.size(), full_weyl_order(g)) << to_string(k) << " " << d;
  }
}

TEST(WeylGroup, ElementsRespectStructure) {
  for (auto [k, d] : {std::pair{Kind::E6, 2}, std::pair{Kind::E7, 3}}) {
    const auto g = classified(k, d);
    const WsMembership mem(g);
    const auto flag = weyl_flag(g);
    const auto cd = cartan_degrees(g);
    std::set<std::vector<std::uint32_t>> perms;
    std::uint64_t fixing_s = 0;
    for (auto p : weyl_group_elements(g).elements) {
      const auto w = unpack(p, g.group_dim);
      for (const auto& t : flag.chain)
        for (const auto& x : t.basis())
          ASSERT_TRUE(t.contains(w(x)));
      // W permutes the Cartan degrees and preserves component dimensions.
      std::vector<std::uint32_t> img;
      for (auto c : cd)
        img.push_back(w.apply_bits(c));
      for (std::uint32_t x = 0; x < g.components.size(); ++x)
        ASSERT_EQ(g.at(w.apply_bits(x)).dim, g.at(x).dim);
      perms.insert(img);
      if (w.apply_bits(g.s()) == g.s()) {
        ++fixing_s;
        ASSERT_TRUE(mem(w));
      }
    }
    EXPECT_EQ(fixing_s, ws_order(g));
    EXPECT_EQ(perms.size(), cd.size() == 3 ? 6u : 1u);
  }
}

TEST(Involution, FixedDimensions) {
  for (Kind k : {Kind::E8, Kind::E6}) {
    const auto& q = reduction(k).form();
    std::map<int, std::set<int>> by_value;
    std::map<int, int> sizes;
    for (std::uint32_t v = 1; v < (std::uint32_t(1) << q.dim()); ++v) {
      const int f = involution_fixed_dim(k, F2Vector(v, q.dim()));
      by_value[q.value(v)].insert(f);
      ++sizes[f];
    }
    ASSERT_EQ(by_value[0].size(), 1u);
    ASSERT_EQ(by_value[1].size(), 1u);
    if (k == Kind::E8) {
      EXPECT_EQ(*by_value[0].begin(), 120);
      EXPECT_EQ(*by_value[1].begin(), 136);
      EXPECT_EQ(sizes[120], 135);
      EXPECT_EQ(sizes[136], 120);
    } else {
      EXPECT_EQ((std::set<int>{*by_value[0].begin(), *by_value[1].begin()}), (std::set<int>{46, 38}));
      EXPECT_EQ(sizes[*by_value[0].begin()], 27);
      EXPECT_EQ(sizes[*by_value[1].begin()], 36);
    }
  }
  EXPECT_THROW(involution_fixed_dim(Kind::E8, F2Vector::zero(8)), std::invalid_argument);
}

// Properties

TEST(SymmetryProperty, AffineOrthogonalOrder) {
  for (Kind k : {Kind::E6, Kind::E8})
    for (const auto& row : classify(k, false)) {
      const auto& q = reduction(k).form();
      const auto ep = perp(q, row.ebar);
      const auto g = grading_from_E(k, row.ebar);
      std::uint64_t o = row.dim_ebar == 0 ? orthogonal_group_order(q) : count_isometries(restrict(q, ep));
      EXPECT_EQ(ws_order(g), pow2(ep.dim()) * o) << row.label();
    }
}

TEST(SymmetryProperty, SplitOnRandomIsotropicSubspaces) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8}) {
    const auto& q = reduction(k).form();
    const int top = witt_decompose(q).witt_index;
    for (int t = 0; t < 30; ++t) {
      const int d = static_cast<int>(rng()() % static_cast<std::uint64_t>(top + 1));
      const auto all = totally_isotropic_subspaces(q, d);
      const auto& e = all[rng()() % all.size()];
      const auto s = witt_split(q, e);
      ASSERT_TRUE(is_totally_isotropic(q, s.ebar_prime));
      ASSERT_EQ(s.ebar_prime.dim(), d);
      ASSERT_EQ((e + s.ebar_prime).dim(), 2 * d);
      for (std::size_t i = 0; i < s.u.size(); ++i)
        for (std::size_t j = 0; j < s.v.size(); ++j)
          ASSERT_EQ(q.b(s.u[i], s.v[j]), i == j ? 1 : 0);
      ASSERT_EQ(s.wbar.dim() + 2 * d, q.dim());
      ASSERT_EQ(s.wbar.intersect(e + s.ebar_prime).dim(), 0);
      // Membership is invariant under the translation subgroup and rejects
      // random maps that move s.
      const auto g = grading_from_E(k, e);
      const WsMembership mem(g);
      const auto w = random_invertible(g.group_dim);
      if (w.apply_bits(g.s()) != g.s()) {
        ASSERT_FALSE(mem(w));
      }
    }
  }
}

TEST(SymmetryProperty, GeneratorsAreMembers) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8})
    for (const auto& row : classify(k, false)) {
      const auto g = grading_from_E(k, row.ebar);
      if (cartan_count(g) == 31)
        continue;
      const WsMembership mem(g);
      for (const auto& w : weyl_generators(g))
        if (w.apply_bits(g.s()) == g.s()) {
          EXPECT_TRUE(mem(w)) << row.label();
        }
    }
}
