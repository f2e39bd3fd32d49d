#include <gtest/gtest.h>

#include "egrade/chevalley.hpp"
#include "support.hpp"

using namespace egrade;
using egrade::testing::rng;

namespace {

const ChevalleyAlgebra& algebra(Kind k) {
  static const ChevalleyAlgebra e6(RootSystem::build(Kind::E6));
  static const ChevalleyAlgebra e7(RootSystem::build(Kind::E7));
  static const ChevalleyAlgebra e8(RootSystem::build(Kind::E8));
  return k == Kind::E6 ? e6 : k == Kind::E7 ? e7 : e8;
}

LieElement random_element(const ChevalleyAlgebra& a, int terms) {
  LieElement x = a.zero();
  for (int i = 0; i < terms; ++i)
    x[rng()() % static_cast<std::uint64_t>(a.dim())] += static_cast<std::int64_t>(rng()() % 7) - 3;
  return x;
}

} // namespace

TEST(BuildAlgebra, Dimensions) {
  EXPECT_EQ(algebra(Kind::E6).dim(), 78);
  EXPECT_EQ(algebra(Kind::E7).dim(), 133);
  EXPECT_EQ(algebra(Kind::E8).dim(), 248);
}

TEST(BuildAlgebra, CorootNormalization) {
  const auto& a = algebra(Kind::E8);
  const auto& rs = a.system();
  for (int r = 0; r < rs.size(); ++r) {
    EXPECT_EQ(a.bracket(a.e(r), a.e(rs.negative_index(r))), a.coroot(r));
    // <alpha, h_alpha> = 2
    EXPECT_EQ(a.bracket(a.coroot(r), a.e(r)), 2 * a.e(r));
  }
}

TEST(BuildAlgebra, StructureConstantsAreUnits) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8}) {
    const auto& a = algebra(k);
    const auto& rs = a.system();
    for (int x = 0; x < rs.size(); ++x)
      for (int y = 0; y < rs.size(); ++y) {
        const bool sum_is_root = rs.is_root(RootSystem::add(rs.root(x), rs.root(y)));
        EXPECT_EQ(a.structure_constant(x, y) != 0, sum_is_root);
        if (sum_is_root) {
          EXPECT_EQ(std::abs(a.structure_constant(x, y)), 1);
        }
      }
  }
}

TEST(Bracket, Examples) {
  const auto& a = algebra(Kind::E7);
  const auto& rs = a.system();
  for (int t = 0; t < 50; ++t) {
    auto x = random_element(a, 6);
    EXPECT_TRUE(is_zero(bracket(a, x, x)));
  }
  for (int i = 0; i < a.rank(); ++i)
    for (int r = 0; r < rs.size(); ++r)
      EXPECT_EQ(a.bracket(a.h(i), a.e(r)), rs.pair_simple(rs.root(r), i) * a.e(r));
  for (int x = 0; x < rs.size(); ++x)
    for (int y = 0; y < rs.size(); ++y) {
      const RootVec s = RootSystem::add(rs.root(x), rs.root(y));
      const bool zero_sum = y == rs.negative_index(x);
      if (!zero_sum && !rs.is_root(s)) {
        EXPECT_TRUE(is_zero(a.bracket(a.e(x), a.e(y))));
      }
    }
}

TEST(Bracket, Jacobi) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8}) {
    const auto& a = algebra(k);
    for (int t = 0; t < 1000; ++t) {
      auto x = random_element(a, 3), y = random_element(a, 3), z = random_element(a, 3);
      auto j = a.bracket(x, a.bracket(y, z)) + a.bracket(y, a.bracket(z, x)) + a.bracket(z, a.bracket(x, y));
      ASSERT_TRUE(is_zero(j));
    }
  }
}

TEST(Bracket, JacobiOnAllRootTriplesE6) {
  const auto& a = algebra(Kind::E6);
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        auto x = a.basis(i), y = a.basis(j), z = a.basis(k);
        auto s = a.bracket(x, a.bracket(y, z)) + a.bracket(y, a.bracket(z, x)) + a.bracket(z, a.bracket(x, y));
        ASSERT_TRUE(is_zero(s)) << i << " " << j << " " << k;
      }
}

TEST(ChevalleyInvolution, Properties) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8}) {
    const auto& a = algebra(k);
    auto s = chevalley_involution(a);
    EXPECT_TRUE(preserves_bracket(a, s));
    EXPECT_TRUE(s.after(s).is_identity());
    EXPECT_EQ(s(a.h(0)), -1 * a.h(0));
    for (int r = 0; r < a.system().size(); ++r) {
      EXPECT_EQ(s(a.e(r)), -1 * a.e(a.system().negative_index(r)));
      auto x = a.e(r) + s(a.e(r));
      EXPECT_EQ(s(x), x);
    }
  }
}

TEST(DiagonalAutomorphism, Properties) {
  const auto& a = algebra(Kind::E8);
  auto sigma = chevalley_involution(a);
  EXPECT_TRUE(diagonal_automorphism(a, F2Vector::zero(8)).is_identity());
  for (int t = 0; t < 20; ++t) {
    auto chi = egrade::testing::random_vector(8);
    auto tau = diagonal_automorphism(a, chi);
    EXPECT_TRUE(tau.after(tau).is_identity());
    EXPECT_TRUE(preserves_bracket(a, tau));
    EXPECT_EQ(tau.after(sigma), sigma.after(tau));
  }
  std::vector<std::uint8_t> bad(256, 0);
  bad[3] = 1;
  EXPECT_THROW(diagonal_automorphism(a, bad), std::invalid_argument);
}

TEST(DiagonalAutomorphism, FixedDimensions) {
  const auto& a = algebra(Kind::E8);
  auto m = mod2_form(Kind::E8);
  for (std::uint32_t v = 1; v < 256; ++v) {
    // chi = b_q(., v)
    const std::uint32_t chi = m.form().b_image(v);
    auto tau = diagonal_automorphism(a, F2Vector(chi, 8));
    int fixed = 0;
    for (int i = 0; i < a.dim(); ++i)
      fixed += tau.sign[static_cast<std::size_t>(i)] == 1;
    EXPECT_TRUE(fixed == 120 || fixed == 136) << fixed;
    EXPECT_EQ(fixed == 120, m.form().value(v) == 0);
  }
}

TEST(Centralizer, Examples) {
  const auto& a = algebra(Kind::E6);
  EXPECT_EQ(centralizer(a, {a.zero()}).size(), 78u);
  std::vector<LieElement> h;
  for (int i = 0; i < 6; ++i)
    h.push_back(a.h(i));
  auto c = centralizer(a, h);
  EXPECT_EQ(c.size(), 6u);
  for (const auto& x : c)
    for (int r = 0; r < a.system().size(); ++r)
      EXPECT_EQ(x[static_cast<std::size_t>(a.root_basis_index(r))], 0);
  LieElement reg = a.zero();
  for (int i = 0; i < 6; ++i)
    reg[static_cast<std::size_t>(i)] = 1 + 17 * i * i;
  EXPECT_EQ(centralizer(a, {reg}).size(), 6u);
  EXPECT_TRUE(is_cartan_subalgebra(a, h));
  // Two roots do not make a Cartan subalgebra.
  EXPECT_FALSE(is_cartan_subalgebra(a, {a.e(0), a.e(1), a.h(2), a.h(3), a.h(4), a.h(5)}));
}
