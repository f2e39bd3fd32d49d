#ifndef EGRADE_IO_HPP_
#define EGRADE_IO_HPP_

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "invariants.hpp"

namespace egrade {

using OrderedJson = nlohmann::ordered_json;

// Malformed input: bad JSON, wrong field types, bad bit strings.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {kind, ebar: [bitstrings], exceptional_rad?, target_group_dim?, alpha?}
// alpha lists the rows of an n x group_dim matrix as bit strings.
struct GradingDocument {
  ComplementaryData comp;
  std::optional<int> target_group_dim;
  std::optional<std::vector<std::string>> alpha_rows;

  bool is_coarse() const { return alpha_rows.has_value(); }
};

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline F2Vector parse_bits(const nlohmann::json& j, int dim, const char* what) {
  if (!j.is_string())
    throw ParseError(std::string(what) + ": expected a bit string");
  const auto s = j.get<std::string>();
  if (static_cast<int>(s.size()) != dim)
    throw ParseError(std::string(what) + ": '" + s + "' should have length " + std::to_string(dim));
  try {
    return F2Vector::from_string(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

} // namespace detail

inline GradingDocument parse_grading_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ParseError("grading document must be a JSON object");
  GradingDocument doc;
  const auto& kind = detail::require(j, "kind");
  if (!kind.is_string())
    throw ParseError("kind must be a string");
  try {
    doc.comp.kind = parse_kind(kind.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const int r = rank_of(doc.comp.kind);
  const auto& ebar = detail::require(j, "ebar");
  if (!ebar.is_array())
    throw ParseError("ebar must be an array of bit strings");
  std::vector<F2Vector> gens;
  for (const auto& v : ebar)
    gens.push_back(detail::parse_bits(v, r, "ebar"));
  doc.comp.ebar = F2Subspace::span(gens, r);
  if (j.contains("exceptional_rad")) {
    if (!j["exceptional_rad"].is_boolean())
      throw ParseError("exceptional_rad must be a boolean");
    doc.comp.exceptional_rad = j["exceptional_rad"].get<bool>();
  }
  if (j.contains("target_group_dim")) {
    if (!j["target_group_dim"].is_number_integer())
      throw ParseError("target_group_dim must be an integer");
    doc.target_group_dim = j["target_group_dim"].get<int>();
  }
  if (j.contains("alpha")) {
    const auto& a = j["alpha"];
    if (!a.is_array())
      throw ParseError("alpha must be an array of bit strings");
    std::vector<std::string> rows;
    for (const auto& row : a) {
      if (!row.is_string())
        throw ParseError("alpha: expected a bit string");
      rows.push_back(row.get<std::string>());
    }
    if (doc.target_group_dim && *doc.target_group_dim != static_cast<int>(rows.size()))
      throw ParseError("alpha has " + std::to_string(rows.size()) + " rows but target_group_dim is " +
                       std::to_string(*doc.target_group_dim));
    doc.target_group_dim = static_cast<int>(rows.size());
    doc.alpha_rows = std::move(rows);
  }
  return doc;
}

inline GradingDocument load_grading_document(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grading_document(ss.str());
}

// The coarse grading described by a document. A document without alpha is
// its own universal grading (alpha = identity). Throws std::invalid_argument
// for mathematically invalid data and ParseError for shape errors.
inline CoarseGrading to_coarse(const GradingDocument& doc) {
  auto base = grading_from_E(doc.comp);
  const int m = base.group_dim;
  if (!doc.alpha_rows) {
    if (doc.target_group_dim && *doc.target_group_dim != m)
      throw ParseError("target_group_dim without alpha must equal the universal rank " + std::to_string(m));
    return make_coarse(std::move(base), F2LinearMap::identity(m));
  }
  const auto& rows = *doc.alpha_rows;
  const int n = static_cast<int>(rows.size());
  if (n < 1 || n > 16)
    throw ParseError("alpha must have between 1 and 16 rows");
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(m), 0);
  for (int r = 0; r < n; ++r) {
    const auto row = detail::parse_bits(nlohmann::json(rows[static_cast<std::size_t>(r)]), m, "alpha row");
    for (int c = 0; c < m; ++c)
      if (row.get(c))
        cols[static_cast<std::size_t>(c)] |= std::uint32_t(1) << r;
  }
  return make_coarse(std::move(base), F2LinearMap::from_bits(m, n, cols));
}

inline OrderedJson subspace_json(const F2Subspace& s) {
  auto out = OrderedJson::array();
  for (const auto& v : s.basis())
    out.push_back(v.to_string());
  return out;
}

inline OrderedJson grading_json(const UniversalGrading& g) {
  OrderedJson j;
  j["kind"] = to_string(g.kind());
  j["ebar"] = subspace_json(g.comp.ebar);
  j["group_dim"] = g.group_dim;
  j["type"] = grading_type(g).counts;
  auto comps = OrderedJson::array();
  for (const auto& c : g.components) {
    if (c.dim == 0)
      continue;
    comps.push_back({{"degree", F2Vector(c.degree, g.group_dim).to_string()},
                     {"dim", c.dim},
                     {"is_cartan", c.is_cartan},
                     {"roots", c.roots}});
  }
  j["components"] = std::move(comps);
  return j;
}

inline OrderedJson inv_json(const InvSequence& inv) {
  OrderedJson j;
  j["case"] = to_string(inv.case_tag);
  j["target_group_dim"] = inv.n;
  j["T"] = subspace_json(inv.T);
  if (inv.K)
    j["K"] = subspace_json(*inv.K);
  if (inv.S)
    j["S"] = subspace_json(*inv.S);
  if (inv.H)
    j["H"] = subspace_json(*inv.H);
  auto table = [](const std::vector<std::uint8_t>& t) {
    std::string s;
    for (auto v : t)
      s += v == InvSequence::kOutside ? '.' : static_cast<char>('0' + v);
    return s;
  };
  if (!inv.q_table.empty())
    j["q_H,S"] = table(inv.q_table);
  if (!inv.b_table.empty())
    j["b_T,S"] = table(inv.b_table);
  return j;
}

inline OrderedJson classification_json(Kind kind, const std::vector<ClassRow>& rows) {
  OrderedJson j;
  j["kind"] = to_string(kind);
  auto arr = OrderedJson::array();
  for (const auto& r : rows)
    arr.push_back({{"label", r.label()},
                   {"dim_ebar", r.dim_ebar},
                   {"universal_group", "Z_2^" + std::to_string(r.group_rank)},
                   {"type", r.type.counts},
                   {"cartan_components", r.cartan_components},
                   {"ebar", subspace_json(r.ebar)}});
  j["gradings"] = std::move(arr);
  return j;
}

} // namespace egrade

#endif // EGRADE_IO_HPP_
