// egrade: classification tables, model verification, Weyl orders, invariants
// and isomorphism checks for special pure gradings on E6, E7, E8.
//
// Exit codes: 0 pass, 1 mathematical failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "egrade/io.hpp"

using namespace egrade;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kKinds{"E6", "E7", "E8"};

int cmd_classify(const std::string& kind_name, const std::string& format, bool certify) {
  const Kind kind = parse_kind(kind_name);
  const auto rows = classify(kind, certify);
  if (format == "md")
    std::cout << classification_markdown(kind, rows);
  else if (format == "json")
    std::cout << classification_json(kind, rows).dump(2) << "\n";
  else
    std::cout << classification_text(kind, rows);
  if (certify)
    for (const auto& r : rows)
      if (!r.orbit_certified) {
        std::cerr << "certification failed for " << r.label() << "\n";
        return kFail;
      }
  return kOk;
}

int cmd_verify(const std::string& path) {
  const auto doc = load_grading_document(path);
  const auto& comp = doc.comp;
  if (meets_root_class(comp.kind, comp.ebar)) {
    std::cout << "FAIL not special: Ebar contains a root class\n";
    return kFail;
  }
  UniversalGrading g;
  try {
    g = grading_from_E(comp);
  } catch (const std::invalid_argument& e) {
    std::cout << "FAIL invalid grading: " << e.what() << "\n";
    return kFail;
  }
  const auto rep = verify_model(g, explicit_model(g));
  auto mark = [](bool b) { return b ? "PASS" : "FAIL"; };
  std::cout << to_string(comp.kind) << " dim Ebar = " << comp.ebar.dim() << (comp.exceptional_rad ? ": grading group Z_2^" : ": universal group Z_2^") << g.group_dim
            << ", type " << grading_type(g).to_string() << "\n"
            << "direct sum: " << mark(rep.direct_sum) << "\n"
            << "identity component zero: " << mark(rep.identity_zero) << "\n"
            << "bracket axiom: " << mark(rep.bracket_axiom) << "\n"
            << "Cartan certification: " << mark(rep.cartan_agrees) << "\n"
            << "Cartan components: " << rep.cartan_components << "\n";
  if (!rep.ok()) {
    std::cout << "FAIL " << rep.failure << "\n";
    return kFail;
  }
  std::cout << "PASS\n";
  return kOk;
}

int cmd_weyl(const std::string& kind_name, const std::string& format) {
  const Kind kind = parse_kind(kind_name);
  const auto rows = classify(kind, false);
  OrderedJson js = OrderedJson::array();
  std::ostringstream os;
  if (format == "md")
    os << "| Grading | Universal group | dim Ebar | W_s | Cartan components | W |\n|---|---|---|---|---|---|\n";
  else if (format == "text")
    os << to_string(kind) << " Weyl groups\n";
  for (const auto& r : rows) {
    const auto g = grading_from_E(kind, r.ebar);
    const auto ws = ws_order(g), w = full_weyl_order(g);
    const int c = cartan_count(g);
    if (format == "md")
      os << "| " << r.label() << " | Z_2^" << r.group_rank << " | " << r.dim_ebar << " | " << ws << " | " << c
         << " | " << w << " |\n";
    else if (format == "text")
      os << r.label() << "  Z_2^" << r.group_rank << "  W_s " << ws << "  Cartan " << c << "  W " << w << "\n";
    js.push_back({{"kind", to_string(kind)},
                  {"dim_ebar", r.dim_ebar},
                  {"label", r.label()},
                  {"ws_order", ws},
                  {"cartan_components", c},
                  {"weyl_order", w}});
  }
  if (format == "json")
    std::cout << js.dump(2) << "\n";
  else
    std::cout << os.str();
  return kOk;
}

CoarseGrading load_coarse(const std::string& path) {
  const auto doc = load_grading_document(path);
  try {
    return to_coarse(doc);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_grading(const std::string& path) {
  const auto doc = load_grading_document(path);
  UniversalGrading g;
  try {
    g = grading_from_E(doc.comp);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
  std::cout << grading_json(g).dump(2) << "\n";
  return kOk;
}

int cmd_inv(const std::string& path) {
  const auto cg = load_coarse(path);
  std::cout << inv_json(compute_inv(cg)).dump(2) << "\n";
  return kOk;
}

// Weyl group small enough to enumerate for the oracle.
bool enumerable(const UniversalGrading& g) { return g.group_dim <= 8 && full_weyl_order(g) <= 10'000'000; }

int cmd_isomorphic(const std::string& pa, const std::string& pb, bool oracle) {
  const auto a = load_coarse(pa), b = load_coarse(pb);
  if (a.target_dim() != b.target_dim())
    throw UsageError("the gradings have different target groups (Z_2^" + std::to_string(a.target_dim()) +
                     " vs Z_2^" + std::to_string(b.target_dim()) + ")");
  std::optional<std::string> diff;
  if (!same_equivalence_class(a.base, b.base))
    diff = "base";
  else
    diff = first_difference(compute_inv(a), compute_inv(b));
  const bool iso = !diff;
  if (iso)
    std::cout << "ISO\n";
  else
    std::cout << "NONISO differing field: " << *diff << "\n";
  if (!oracle)
    return kOk;
  if (!same_equivalence_class(a.base, b.base) || !(a.base.comp.ebar == b.base.comp.ebar)) {
    std::cout << "oracle: skipped (the documents do not share a base grading)\n";
    return kOk;
  }
  if (!enumerable(a.base)) {
    std::cout << "oracle: skipped (Weyl group of order " << full_weyl_order(a.base) << " is too large)\n";
    return kOk;
  }
  const bool want = WeylOrbitOracle(a.base)(a.alpha, b.alpha);
  std::cout << "oracle: " << (want ? "ISO" : "NONISO") << (want == iso ? " (agrees)" : " (DISAGREES)") << "\n";
  return want == iso ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Special pure gradings on the exceptional Lie algebras E6, E7, E8"};
  app.require_subcommand(1);

  std::string kind, format = "text", file_a, file_b;
  bool certify = false, oracle = false;

  auto* classify_cmd = app.add_subcommand("classify", "Classification table of special pure gradings");
  classify_cmd->add_option("kind", kind, "E6, E7 or E8")->required()->check(CLI::IsMember(kKinds));
  classify_cmd->add_option("--format", format, "text, json or md")->check(CLI::IsMember({"text", "json", "md"}));
  classify_cmd->add_flag("--certify", certify, "Certify single orbits of totally isotropic subspaces");

  auto* verify_cmd = app.add_subcommand("verify", "Build and check the explicit model of a grading document");
  verify_cmd->add_option("file", file_a, "Grading document (JSON)")->required();

  auto* weyl_cmd = app.add_subcommand("weyl", "Weyl group orders of the classified gradings");
  weyl_cmd->add_option("kind", kind, "E6, E7 or E8")->required()->check(CLI::IsMember(kKinds));
  weyl_cmd->add_option("--format", format, "text, json or md")->check(CLI::IsMember({"text", "json", "md"}));

  auto* grading_cmd = app.add_subcommand("grading", "Components of the universal grading of a document");
  grading_cmd->add_option("file", file_a, "Grading document (JSON)")->required();

  auto* inv_cmd = app.add_subcommand("inv", "Isomorphism invariants of a coarse grading document");
  inv_cmd->add_option("file", file_a, "Grading document (JSON)")->required();

  auto* iso_cmd = app.add_subcommand("isomorphic", "Decide whether two coarse gradings are isomorphic");
  iso_cmd->add_option("file_a", file_a, "First grading document")->required();
  iso_cmd->add_option("file_b", file_b, "Second grading document")->required();
  iso_cmd->add_flag("--oracle", oracle, "Cross-check by search over the Weyl group when it is small");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*classify_cmd)
      return cmd_classify(kind, format, certify);
    if (*verify_cmd)
      return cmd_verify(file_a);
    if (*weyl_cmd)
      return cmd_weyl(kind, format);
    if (*grading_cmd)
      return cmd_grading(file_a);
    if (*inv_cmd)
      return cmd_inv(file_a);
    if (*iso_cmd)
      return cmd_isomorphic(file_a, file_b, oracle);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
