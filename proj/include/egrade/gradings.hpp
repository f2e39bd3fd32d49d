#ifndef EGRADE_GRADINGS_HPP_
#define EGRADE_GRADINGS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chevalley.hpp"
#include "quadform.hpp"
#include "rootsys.hpp"

namespace egrade {

// Shared per-kind data, built on first use.
inline const Mod2Reduction& reduction(Kind k) {
  switch (k) {
  case Kind::E6: {
    static const Mod2Reduction m = mod2_form(Kind::E6);
    return m;
  }
  case Kind::E7: {
    static const Mod2Reduction m = mod2_form(Kind::E7);
    return m;
  }
  case Kind::E8:
    break;
  }
  static const Mod2Reduction m = mod2_form(Kind::E8);
  return m;
}

inline const ChevalleyAlgebra& algebra(Kind k) {
  switch (k) {
  case Kind::E6: {
    static const ChevalleyAlgebra a(reduction(Kind::E6).system());
    return a;
  }
  case Kind::E7: {
    static const ChevalleyAlgebra a(reduction(Kind::E7).system());
    return a;
  }
  case Kind::E8:
    break;
  }
  static const ChevalleyAlgebra a(reduction(Kind::E8).system());
  return a;
}

struct ComplementaryData {
  Kind kind = Kind::E8;
  F2Subspace ebar;
  bool exceptional_rad = false; // E7 with Ebar = rad b_q
};

struct Component {
  std::uint32_t degree = 0;
  int dim = 0;
  std::vector<int> roots; // positive root indices
  bool is_cartan = false;
};

// G = (R/E) x F2 with coordinates (quotient coordinates of R/E, sigma bit).
struct UniversalGrading {
  ComplementaryData comp;
  int group_dim = 0;
  F2LinearMap pi;                    // Rbar -> Rbar/Ebar
  std::vector<Component> components; // indexed by degree bits

  Kind kind() const { return comp.kind; }
  int rank() const { return rank_of(comp.kind); }
  std::uint32_t s() const { return std::uint32_t(1) << (group_dim - 1); }
  const Component& at(std::uint32_t g) const { return components.at(g); }
  // Degree of x_a + sigma(x_a) (bit 0) or x_a - sigma(x_a) (bit 1).
  std::uint32_t root_degree(int positive_root, int bit) const {
    const std::uint32_t c = reduction(comp.kind).root_class(positive_root);
    return pi.apply_bits(c) | (bit ? s() : 0u);
  }
};

struct GradingType {
  std::vector<int> counts; // counts[i-1] = number of i-dimensional components

  int total() const {
    int t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
      t += static_cast<int>(i + 1) * counts[i];
    return t;
  }
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(counts[i]);
    }
    return s + ")";
  }
  bool operator==(const GradingType&) const = default;
};

inline bool meets_root_class(Kind kind, const F2Subspace& ebar) {
  for (const auto& [c, pr] : root_classes(reduction(kind)))
    if (ebar.contains(F2Vector(c, ebar.ambient_dim())))
      return true;
  return false;
}

inline UniversalGrading grading_from_E(const ComplementaryData& comp) {
  const auto& red = reduction(comp.kind);
  const auto& q = red.form();
  const int n = red.rank();
  if (comp.ebar.ambient_dim() != n)
    fail("grading_from_E: Ebar must live in F2^" + std::to_string(n));
  if (comp.exceptional_rad) {
    if (comp.kind != Kind::E7 || !(comp.ebar == radicals(q).rad_b))
      fail("grading_from_E: the radical flag needs E7 and Ebar = rad b_q");
  } else if (!is_totally_isotropic(q, comp.ebar)) {
    fail("grading_from_E: Ebar is not totally isotropic");
  }
  if (meets_root_class(comp.kind, comp.ebar))
    fail("grading_from_E: Ebar meets a root class (not special)");

  UniversalGrading g;
  g.comp = comp;
  g.pi = quotient_map(n, comp.ebar);
  g.group_dim = g.pi.out_dim() + 1;
  g.components.resize(std::size_t(1) << g.group_dim);
  for (std::size_t d = 0; d < g.components.size(); ++d)
    g.components[d].degree = static_cast<std::uint32_t>(d);
  const auto& rs = red.system();
  for (int a = 0; a < rs.num_positive(); ++a)
    for (int bit = 0; bit < 2; ++bit) {
      auto& c = g.components[g.root_degree(a, bit)];
      c.roots.push_back(a);
      ++c.dim;
    }
  g.components[g.s()].dim += n;
  for (auto& c : g.components) {
    if (c.dim != n)
      continue;
    bool orth = true;
    for (std::size_t i = 0; i < c.roots.size() && orth; ++i)
      for (std::size_t j = i + 1; j < c.roots.size() && orth; ++j)
        orth = rs.pairing(rs.root(c.roots[i]), rs.root(c.roots[j])) == 0;
    c.is_cartan = c.degree == g.s() || orth;
  }
  return g;
}

inline UniversalGrading grading_from_E(Kind kind, const F2Subspace& ebar) {
  return grading_from_E(ComplementaryData{kind, ebar, false});
}

inline GradingType grading_type(const UniversalGrading& g) {
  int top = g.rank();
  for (const auto& c : g.components)
    top = std::max(top, c.dim);
  GradingType t;
  t.counts.assign(static_cast<std::size_t>(top), 0);
  for (const auto& c : g.components)
    if (c.dim > 0)
      ++t.counts[static_cast<std::size_t>(c.dim - 1)];
  return t;
}

inline std::vector<std::uint32_t> cartan_degrees(const UniversalGrading& g) {
  std::vector<std::uint32_t> out;
  for (const auto& c : g.components)
    if (c.is_cartan)
      out.push_back(c.degree);
  return out;
}

// E = E° holds iff Ebar is spanned by the classes of positive roots lying in
// it together with the differences of positive root classes lying in it.
inline bool validate_Ecirc(const ComplementaryData& comp) {
  const auto& red = reduction(comp.kind);
  const int n = red.rank();
  std::vector<std::uint32_t> cls;
  for (int a = 0; a < red.system().num_positive(); ++a)
    cls.push_back(red.root_class(a));
  std::set<std::uint32_t> gens;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (comp.ebar.contains(F2Vector(cls[i], n)))
      gens.insert(cls[i]);
    for (std::size_t j = i + 1; j < cls.size(); ++j) {
      const std::uint32_t d = cls[i] ^ cls[j];
      if (comp.ebar.contains(F2Vector(d, n)))
        gens.insert(d);
    }
  }
  std::vector<F2Vector> v;
  for (auto b : gens)
    v.emplace_back(b, n);
  return F2Subspace::span(v, n) == comp.ebar;
}

// CLASSIFICATION

struct ClassRow {
  Kind kind = Kind::E8;
  int dim_ebar = 0;
  F2Subspace ebar;
  GradingType type;
  int group_rank = 0;
  int cartan_components = 0;
  std::size_t ti_count = 0; // totally isotropic subspaces of this dimension
  bool orbit_certified = false;

  std::string label() const {
    return "Gamma^" + std::to_string(group_rank) + "_" + to_string(kind);
  }
};

// Representative of dimension d: the span of the first d isotropic vectors of
// the greedy Witt decomposition.
inline F2Subspace representative_ebar(Kind kind, int d) {
  const auto& q = reduction(kind).form();
  const auto w = witt_decompose(q);
  if (d < 0 || d > w.witt_index)
    fail("representative_ebar: dimension out of range");
  std::vector<F2Vector> u;
  for (int i = 0; i < d; ++i)
    u.push_back(w.hyperbolic_pairs[static_cast<std::size_t>(i)].first);
  return F2Subspace::span(u, q.dim());
}

inline std::vector<ClassRow> classify(Kind kind, bool certify = true) {
  const auto& q = reduction(kind).form();
  const int top = witt_decompose(q).witt_index;
  std::vector<ClassRow> rows;
  for (int d = 0; d <= top; ++d) {
    ClassRow r;
    r.kind = kind;
    r.dim_ebar = d;
    r.ebar = representative_ebar(kind, d);
    const auto g = grading_from_E(kind, r.ebar);
    r.type = grading_type(g);
    r.group_rank = g.group_dim;
    r.cartan_components = static_cast<int>(cartan_degrees(g).size());
    if (certify)
      r.orbit_certified = ti_orbit_check(q, d, &r.ti_count);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string classification_text(Kind kind, const std::vector<ClassRow>& rows) {
  std::ostringstream os;
  os << to_string(kind) << ": " << rows.size() << " special pure gradings\n";
  for (const auto& r : rows)
    os << r.label() << "  Z_2^" << r.group_rank << "  " << r.type.to_string() << "\n";
  return os.str();
}

inline std::string classification_markdown(Kind kind, const std::vector<ClassRow>& rows) {
  const std::string k = "E_" + std::to_string(rank_of(kind));
  std::ostringstream os;
  os << "|  | Universal group | Type |\n";
  os << "|---|---|---|\n";
  for (const auto& r : rows)
    os << "| $\\Gamma_{" << k << "}^" << r.group_rank << "$ | $\\mathbb{Z}_2^" << r.group_rank
       << "$ | $" << r.type.to_string() << "$ |\n";
  return os.str();
}

// EXPLICIT MODEL

struct GradedModel {
  const ChevalleyAlgebra* algebra = nullptr;
  std::vector<std::vector<LieElement>> bases; // indexed by degree
};

struct ModelReport {
  bool direct_sum = false;
  bool identity_zero = false;
  bool bracket_axiom = false;
  bool cartan_agrees = false;
  int cartan_components = 0;
  std::string failure; // first failing check, empty when all pass

  bool ok() const { return failure.empty(); }
};

inline GradedModel explicit_model(const UniversalGrading& g) {
  const auto& a = algebra(g.kind());
  const auto& rs = a.system();
  GradedModel m;
  m.algebra = &a;
  m.bases.resize(g.components.size());
  for (int i = 0; i < a.rank(); ++i)
    m.bases[g.s()].push_back(a.h(i));
  // sigma(e_a) = -e_{-a}
  for (int r = 0; r < rs.num_positive(); ++r) {
    const auto ep = a.e(r), en = a.e(rs.negative_index(r));
    m.bases[g.root_degree(r, 0)].push_back(ep - en);
    m.bases[g.root_degree(r, 1)].push_back(ep + en);
  }
  return m;
}

namespace detail {

// Whether z lies in the component of degree d.
inline bool in_component(const UniversalGrading& g, const ChevalleyAlgebra& a, const LieElement& z,
                         std::uint32_t d) {
  for (int i = 0; i < a.rank(); ++i)
    if (z[static_cast<std::size_t>(i)] && d != g.s())
      return false;
  const auto& rs = a.system();
  const bool odd = d & g.s();
  for (int r = 0; r < rs.num_positive(); ++r) {
    const auto x = z[static_cast<std::size_t>(a.root_basis_index(r))];
    const auto y = z[static_cast<std::size_t>(a.root_basis_index(rs.negative_index(r)))];
    if (!x && !y)
      continue;
    if ((g.root_degree(r, 0) | (odd ? g.s() : 0u)) != d)
      return false;
    if (odd ? x != y : x != -y)
      return false;
  }
  return true;
}

} // namespace detail

inline ModelReport verify_model(const UniversalGrading& g, const GradedModel& m) {
  const auto& a = *m.algebra;
  ModelReport rep;
  auto fail_with = [&](const std::string& what) {
    if (rep.failure.empty())
      rep.failure = what;
  };

  std::vector<LieElement> all;
  bool counts_ok = true;
  for (std::size_t d = 0; d < m.bases.size(); ++d) {
    counts_ok = counts_ok && static_cast<int>(m.bases[d].size()) == g.components[d].dim;
    for (const auto& x : m.bases[d])
      all.push_back(x);
  }
  rep.direct_sum = counts_ok && static_cast<int>(all.size()) == a.dim() && rank_of_elements(all, a.dim()) == a.dim();
  if (!rep.direct_sum)
    fail_with("direct sum");

  rep.identity_zero = m.bases[0].empty();
  if (!rep.identity_zero)
    fail_with("not special");

  rep.bracket_axiom = true;
  for (std::size_t d1 = 0; d1 < m.bases.size() && rep.bracket_axiom; ++d1)
    for (std::size_t d2 = d1; d2 < m.bases.size() && rep.bracket_axiom; ++d2)
      for (const auto& x : m.bases[d1])
        for (const auto& y : m.bases[d2])
          if (!detail::in_component(g, a, a.bracket(x, y), static_cast<std::uint32_t>(d1 ^ d2))) {
            rep.bracket_axiom = false;
            break;
          }
  if (!rep.bracket_axiom)
    fail_with("bracket axiom");

  rep.cartan_agrees = true;
  for (std::size_t d = 0; d < m.bases.size(); ++d) {
    if (g.components[d].dim != a.rank())
      continue;
    const bool certified = is_cartan_subalgebra(a, m.bases[d], d + 1);
    rep.cartan_components += certified;
    if (certified != g.components[d].is_cartan)
      rep.cartan_agrees = false;
  }
  if (!rep.cartan_agrees)
    fail_with("Cartan certification");
  if (rep.cartan_components == 0)
    fail_with("not pure");
  return rep;
}

// Explicit model with every check run; throws naming the first failed check.
inline GradedModel build_graded_model(const UniversalGrading& g) {
  auto m = explicit_model(g);
  const auto rep = verify_model(g, m);
  if (!rep.ok())
    throw std::runtime_error("build_graded_model: " + rep.failure + " check failed");
  return m;
}

// CODE GRADINGS

struct BinaryCode {
  int length = 0;
  std::vector<F2Vector> words;

  F2Subspace space() const { return F2Subspace::span(words, length); }
  int dim() const { return space().dim(); }
  bool is_linear() const {
    const auto s = space();
    return s.size() == words.size();
  }
};

inline BinaryCode make_code(int length, const std::vector<const char*>& words) {
  BinaryCode c;
  c.length = length;
  for (const char* w : words) {
    c.words.push_back(F2Vector::from_string(w));
    if (c.words.back().dim != length)
      fail("make_code: word of the wrong length");
  }
  return c;
}

// Extended Hamming [8,4,4].
inline BinaryCode hamming_code() {
  return make_code(8, {"00000000", "11111111", "11110000", "00001111", "11001100", "11000011",
                       "00111100", "00110011", "10101010", "10100101", "01011010", "01010101",
                       "10011001", "10010110", "01101001", "01100110"});
}

// The 3-dimensional code of length 7 with all nonzero words of weight 4.
inline BinaryCode simplex_code() {
  return make_code(7, {"0000000", "1100110", "0110011", "1010101", "1111000", "0011110",
                       "1001011", "0101101"});
}

namespace detail {

struct Gauss {
  std::int64_t re = 0, im = 0;
  friend Gauss operator+(Gauss a, Gauss b) { return {a.re + b.re, a.im + b.im}; }
  friend Gauss operator*(Gauss a, Gauss b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
};
using Mat2 = std::array<Gauss, 4>; // row major

inline Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}
inline Gauss trace(const Mat2& x) { return x[0] + x[3]; }
inline Gauss power(Gauss x, int e) {
  Gauss r{1, 0};
  for (int i = 0; i < e; ++i)
    r = r * x;
  return r;
}
inline std::int64_t real_part(Gauss x) {
  if (x.im)
    fail("code_grading: non-real trace (internal error)");
  return x.re;
}

} // namespace detail

// G = code x F2^2, coordinates (code coordinates, i, j) with i the sigma
// sign bit and j the tau sign bit.
struct CodeGrading {
  Kind kind = Kind::E8;
  BinaryCode code;
  F2Subspace code_space;
  int code_dim = 0;
  int group_dim = 0;
  std::vector<int> dims;       // indexed by degree
  std::vector<bool> cartan;    // indexed by degree
  std::vector<std::uint32_t> word_of; // code coordinates -> word bits
  GradingType type;
  F2Subspace S, K;

  std::uint32_t degree(std::uint32_t coords, int i, int j) const {
    return coords | (std::uint32_t(i) << code_dim) | (std::uint32_t(j) << (code_dim + 1));
  }
};

inline CodeGrading code_grading(Kind kind) {
  if (kind == Kind::E6)
    fail("code_grading: only E7 and E8 have code models");
  CodeGrading cg;
  cg.kind = kind;
  cg.code = kind == Kind::E8 ? hamming_code() : simplex_code();
  if (!cg.code.is_linear())
    fail("code_grading: code is not linear");
  cg.code_space = cg.code.space();
  cg.code_dim = cg.code_space.dim();
  cg.group_dim = cg.code_dim + 2;
  const int n = cg.code.length;

  using detail::Mat2;
  const Mat2 J{{{0, 0}, {1, 0}, {-1, 0}, {0, 0}}};
  const Mat2 D{{{0, 1}, {0, 0}, {0, 0}, {0, -1}}};
  const std::array<Mat2, 3> ops{J, D, detail::mul(J, D)}; // sigma, tau, sigma tau

  cg.dims.assign(std::size_t(1) << cg.group_dim, 0);
  cg.cartan.assign(cg.dims.size(), false);
  const int rank = rank_of(kind);
  for (std::uint32_t c = 0; c < (std::uint32_t(1) << cg.code_dim); ++c) {
    const std::uint32_t w = cg.code_space.element_bits(c);
    cg.word_of.push_back(w);
    const int wt = std::popcount(w);
    // dim L_c and the traces of sigma, tau, sigma tau on it. On sl(V) the
    // action is conjugation by g with det g = 1, of trace tr(g)^2 - 1; on a
    // tensor product of four V's it is g^(x4).
    std::int64_t dim = 0;
    std::array<std::int64_t, 3> tr{0, 0, 0};
    if (wt == 0) {
      dim = 3 * n;
      for (int t = 0; t < 3; ++t)
        tr[static_cast<std::size_t>(t)] =
            n * (detail::real_part(detail::power(detail::trace(ops[static_cast<std::size_t>(t)]), 2)) - 1);
    } else if (wt == 4) {
      dim = 16;
      for (int t = 0; t < 3; ++t)
        tr[static_cast<std::size_t>(t)] =
            detail::real_part(detail::power(detail::trace(ops[static_cast<std::size_t>(t)]), 4));
    } else if (wt != n) {
      fail("code_grading: unexpected word weight");
    }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const std::int64_t e1 = i ? -1 : 1, e2 = j ? -1 : 1;
        const std::int64_t num = dim + e1 * tr[0] + e2 * tr[1] + e1 * e2 * tr[2];
        if (num < 0 || num % 4)
          fail("code_grading: eigenspace dimension is not an integer (internal error)");
        const auto d = cg.degree(c, i, j);
        cg.dims[d] = static_cast<int>(num / 4);
        cg.cartan[d] = wt == 0 && (i || j) && cg.dims[d] == rank;
      }
  }
  cg.type.counts.assign(static_cast<std::size_t>(rank), 0);
  std::vector<F2Vector> sgen, kgen;
  for (std::size_t d = 0; d < cg.dims.size(); ++d) {
    const F2Vector v(static_cast<std::uint32_t>(d), cg.group_dim);
    if (cg.dims[d] > 0)
      ++cg.type.counts.at(static_cast<std::size_t>(cg.dims[d] - 1));
    else
      kgen.push_back(v);
    if (cg.cartan[d])
      sgen.push_back(v);
  }
  cg.S = F2Subspace::span(sgen, cg.group_dim);
  cg.K = F2Subspace::span(kgen, cg.group_dim);
  return cg;
}

} // namespace egrade

#endif // EGRADE_GRADINGS_HPP_
