#include <gtest/gtest.h>

#include <map>

#include "egrade/gradings.hpp"
#include "support.hpp"

using namespace egrade;
using egrade::testing::rng;

namespace {

GradingType type_of(std::vector<int> v) { return GradingType{std::move(v)}; }

int count_cartan(const UniversalGrading& g) { return static_cast<int>(cartan_degrees(g).size()); }

} // namespace

TEST(GradingFromE, Examples) {
  const auto g0 = grading_from_E(Kind::E8, F2Subspace(8));
  EXPECT_EQ(g0.group_dim, 9);
  EXPECT_EQ(grading_type(g0), type_of({240, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(g0.at(g0.s()).dim, 8);
  EXPECT_TRUE(g0.at(g0.s()).is_cartan);
  EXPECT_EQ(g0.at(0).dim, 0);

  const auto g3 = grading_from_E(Kind::E8, representative_ebar(Kind::E8, 3));
  EXPECT_EQ(g3.group_dim, 6);
  auto cd = cartan_degrees(g3);
  ASSERT_EQ(cd.size(), 3u);
  // (a+E,0), (a+E,1), (E,1)
  EXPECT_EQ(cd[0] ^ cd[1] ^ cd[2], 0u);
  EXPECT_NE(std::find(cd.begin(), cd.end(), g3.s()), cd.end());
  for (auto d : cd)
    EXPECT_EQ(g3.at(d).dim, 8);

  EXPECT_EQ(grading_type(grading_from_E(Kind::E6, representative_ebar(Kind::E6, 1))),
            type_of({32, 20, 0, 0, 0, 1}));
}

TEST(GradingFromE, Errors) {
  const auto& q = reduction(Kind::E8).form();
  // A vector with q = 1 spans a non-isotropic line.
  const auto noniso = nonisotropic_vectors(q).front();
  EXPECT_THROW(grading_from_E(Kind::E8, F2Subspace::span({noniso}, 8)), std::invalid_argument);
  EXPECT_THROW(grading_from_E(Kind::E8, F2Subspace(7)), std::invalid_argument);
  // E7: rad b_q is anisotropic but accepted with the flag.
  const auto rad = radicals(reduction(Kind::E7).form()).rad_b;
  EXPECT_THROW(grading_from_E(Kind::E7, rad), std::invalid_argument);
  EXPECT_NO_THROW(grading_from_E(ComplementaryData{Kind::E7, rad, true}));
  EXPECT_THROW(grading_from_E(ComplementaryData{Kind::E6, F2Subspace(6), true}), std::invalid_argument);
}

TEST(GradingType, Examples) {
  EXPECT_EQ(grading_type(grading_from_E(Kind::E8, representative_ebar(Kind::E8, 2))),
            type_of({0, 96, 0, 12, 0, 0, 0, 1}));
  EXPECT_EQ(grading_type(grading_from_E(Kind::E7, representative_ebar(Kind::E7, 2))),
            type_of({0, 48, 2, 6, 0, 0, 1}));
  EXPECT_EQ(grading_type(grading_from_E(Kind::E8, representative_ebar(Kind::E8, 4))),
            type_of({0, 0, 0, 0, 0, 0, 0, 31}));
  EXPECT_EQ(type_of({240, 0, 0, 0, 0, 0, 0, 1}).to_string(), "(240,0,0,0,0,0,0,1)");
}

TEST(Classify, Tables) {
  const std::map<Kind, std::vector<GradingType>> expected{
      {Kind::E8,
       {type_of({240, 0, 0, 0, 0, 0, 0, 1}), type_of({128, 56, 0, 0, 0, 0, 0, 1}),
        type_of({0, 96, 0, 12, 0, 0, 0, 1}), type_of({0, 0, 0, 56, 0, 0, 0, 3}),
        type_of({0, 0, 0, 0, 0, 0, 0, 31})}},
      {Kind::E7,
       {type_of({126, 0, 0, 0, 0, 0, 1}), type_of({66, 30, 0, 0, 0, 0, 1}), type_of({0, 48, 2, 6, 0, 0, 1}),
        type_of({0, 0, 0, 28, 0, 0, 3})}},
      {Kind::E6, {type_of({72, 0, 0, 0, 0, 1}), type_of({32, 20, 0, 0, 0, 1}), type_of({0, 24, 0, 6, 0, 1})}},
  };
  const std::map<Kind, std::vector<int>> cartans{
      {Kind::E8, {1, 1, 1, 3, 31}}, {Kind::E7, {1, 1, 1, 3}}, {Kind::E6, {1, 1, 1}}};
  for (const auto& [k, types] : expected) {
    const auto rows = classify(k);
    ASSERT_EQ(rows.size(), types.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].type, types[i]) << to_string(k) << " " << i;
      EXPECT_EQ(rows[i].group_rank, rank_of(k) + 1 - static_cast<int>(i));
      EXPECT_EQ(rows[i].dim_ebar, static_cast<int>(i));
      EXPECT_TRUE(rows[i].orbit_certified);
      EXPECT_GT(rows[i].ti_count, 0u);
      EXPECT_EQ(rows[i].cartan_components, cartans.at(k)[i]);
      EXPECT_EQ(rows[i].type.total(), algebra(k).dim());
    }
  }
}

TEST(Classify, Emitters) {
  const auto rows = classify(Kind::E6, false);
  EXPECT_EQ(classification_text(Kind::E6, rows),
            "E6: 3 special pure gradings\n"
            "Gamma^7_E6  Z_2^7  (72,0,0,0,0,1)\n"
            "Gamma^6_E6  Z_2^6  (32,20,0,0,0,1)\n"
            "Gamma^5_E6  Z_2^5  (0,24,0,6,0,1)\n");
  const auto md = classification_markdown(Kind::E6, rows);
  EXPECT_NE(md.find("| $\\Gamma_{E_6}^6$ | $\\mathbb{Z}_2^6$ | $(32,20,0,0,0,1)$ |"), std::string::npos);
}

TEST(ValidateEcirc, Examples) {
  for (int d = 0; d <= 4; ++d)
    for (const auto& e : totally_isotropic_subspaces(reduction(Kind::E8).form(), d))
      ASSERT_TRUE(validate_Ecirc({Kind::E8, e, false}));
  const auto rad = radicals(reduction(Kind::E7).form()).rad_b;
  EXPECT_FALSE(validate_Ecirc({Kind::E7, rad, true}));
  EXPECT_TRUE(validate_Ecirc({Kind::E6, F2Subspace(6), false}));
}

TEST(BuildGradedModel, AllClassified) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8})
    for (const auto& row : classify(k, false)) {
      const auto g = grading_from_E(k, row.ebar);
      const auto m = explicit_model(g);
      const auto rep = verify_model(g, m);
      EXPECT_TRUE(rep.ok()) << row.label() << ": " << rep.failure;
      EXPECT_TRUE(rep.bracket_axiom);
      EXPECT_TRUE(rep.identity_zero);
      EXPECT_EQ(rep.cartan_components, row.cartan_components) << row.label();
    }
}

TEST(BuildGradedModel, DetectsBrokenModels) {
  const auto g = grading_from_E(Kind::E6, representative_ebar(Kind::E6, 1));
  auto m = explicit_model(g);
  // Move one root vector to a wrong degree.
  std::size_t from = 0;
  while (m.bases[from].empty() || from == g.s())
    ++from;
  const std::size_t to = from ^ 1u;
  m.bases[to].push_back(m.bases[from].back());
  m.bases[from].pop_back();
  EXPECT_FALSE(verify_model(g, m).ok());
  EXPECT_THROW(
      {
        auto g2 = g;
        g2.components[g.s()].is_cartan = false;
        build_graded_model(g2);
      },
      std::runtime_error);
}

TEST(CodeGrading, Examples) {
  EXPECT_EQ(hamming_code().dim(), 4);
  EXPECT_TRUE(hamming_code().is_linear());
  EXPECT_EQ(simplex_code().dim(), 3);
  EXPECT_TRUE(simplex_code().is_linear());

  const auto e8 = code_grading(Kind::E8);
  EXPECT_EQ(e8.type, type_of({0, 0, 0, 56, 0, 0, 0, 3}));
  EXPECT_EQ(e8.S.size(), 4u);
  EXPECT_EQ(e8.K.size(), 8u);
  EXPECT_TRUE(e8.K.contains(e8.S));
  // K = <1> x F2^2
  std::uint32_t one = 0;
  for (std::uint32_t c = 0; c < e8.word_of.size(); ++c)
    if (e8.word_of[c] == 0xffu)
      one = c;
  std::vector<F2Vector> kg{F2Vector(e8.degree(one, 0, 0), 6), F2Vector(e8.degree(0, 1, 0), 6),
                           F2Vector(e8.degree(0, 0, 1), 6)};
  EXPECT_EQ(e8.K, F2Subspace::span(kg, 6));
  EXPECT_EQ(e8.type, grading_type(grading_from_E(Kind::E8, representative_ebar(Kind::E8, 3))));

  const auto e7 = code_grading(Kind::E7);
  EXPECT_EQ(e7.type, type_of({0, 0, 0, 28, 0, 0, 3}));
  EXPECT_EQ(e7.S.size(), 4u);
  EXPECT_EQ(e7.type, grading_type(grading_from_E(Kind::E7, representative_ebar(Kind::E7, 3))));
  EXPECT_THROW(code_grading(Kind::E6), std::invalid_argument);
}

// Properties

TEST(GradingProperty, CosetDimensionsAreNonisotropicCounts) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8}) {
    const auto& q = reduction(k).form();
    const auto rb = radicals(q).rad_b;
    for (int d = 0; d <= witt_decompose(q).witt_index; ++d)
      for (const auto& e : totally_isotropic_subspaces(q, d)) {
        const auto g = grading_from_E(k, e);
        std::vector<int> noniso(std::size_t(1) << (g.group_dim - 1), 0);
        for (std::uint32_t x = 0; x < (std::uint32_t(1) << q.dim()); ++x)
          // For E7 the radical vector is nonisotropic but not a root class.
          if (q.value(x) && !(rb.dim() && rb.rows()[0] == x))
            ++noniso[g.pi.apply_bits(x)];
        for (std::uint32_t c = 1; c < noniso.size(); ++c) {
          ASSERT_EQ(g.at(c).dim, noniso[c]);
          ASSERT_EQ(g.at(c | g.s()).dim, noniso[c]);
        }
        ASSERT_EQ(g.at(g.s()).dim, q.dim());
      }
  }
}

TEST(GradingProperty, TypeDependsOnlyOnDimension) {
  for (Kind k : {Kind::E6, Kind::E7, Kind::E8}) {
    const auto& q = reduction(k).form();
    for (const auto& row : classify(k, false))
      for (const auto& e : totally_isotropic_subspaces(q, row.dim_ebar)) {
        const auto g = grading_from_E(k, e);
        ASSERT_EQ(grading_type(g), row.type);
        ASSERT_EQ(count_cartan(g), row.cartan_components);
      }
  }
}

TEST(GradingProperty, RandomE7ModelsSatisfyAxioms) {
  const auto& q = reduction(Kind::E7).form();
  for (int d = 1; d <= 3; ++d) {
    const auto all = totally_isotropic_subspaces(q, d);
    for (int t = 0; t < 3; ++t) {
      const auto& e = all[rng()() % all.size()];
      const auto g = grading_from_E(Kind::E7, e);
      EXPECT_TRUE(verify_model(g, explicit_model(g)).ok());
    }
  }
}
