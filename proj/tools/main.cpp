#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bggkit/bggpattern/deformation.hpp"
#include "suites.hpp"

using namespace bggkit;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string structure;
  int degree = 2;
  bool json_out = false;
  std::string dot_path;
  std::string json_path;
  bool all_edges = false;
  std::string suite = "algebraic";
  std::uint64_t seed = 0;
  int trials = 20;
  int truncation = 4;
};

void print_catalog(std::ostream& os) {
  os << "known structures (family:n, or raw like A3:2 / C4:1,2):\n";
  for (const auto& name : liealg::catalog_names()) os << "  " << name << ":n\n";
}

liealg::StructureSpec resolve(const std::string& text) {
  try {
    return liealg::parse_structure(text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    print_catalog(std::cerr);
    throw UsageError(e.what());
  }
}

// Temporary file then rename, so a reader never sees half a file.
void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
    if (!os) throw std::runtime_error("cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

int cmd_grade(const RunConfig& cfg) {
  const liealg::GradedLieAlgebra g(resolve(cfg.structure));
  const auto dims = g.grading_summand_dims();
  int base = 0;
  for (auto [grade, dim] : dims)
    if (grade < 0) base += static_cast<int>(dim);
  const auto e = g.to_matrix(g.grading_element());
  std::vector<std::string> diag;
  for (int i = 0; i < g.matrix_size(); ++i) diag.push_back(e(i, i).get_str());

  if (cfg.json_out) {
    json j = {{"structure", g.spec().name}, {"k", g.depth()}, {"base_dim", base}, {"grading_element_diagonal", diag}};
    for (auto [grade, dim] : dims) j["summand_dims"].push_back({{"grade", grade}, {"dim", dim}});
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << g.spec().name << "\n  k = " << g.depth() << "\n  summand dims (grade:dim):";
  for (auto [grade, dim] : dims) std::cout << " " << grade << ":" << dim;
  std::cout << "\n  base dim = " << base << "\n  crossed nodes:";
  for (int node : g.crossed()) std::cout << " " << node;
  std::cout << "\n  grading element = diag(";
  for (std::size_t i = 0; i < diag.size(); ++i) std::cout << (i ? ", " : "") << diag[i];
  std::cout << ")\n";
  return kOk;
}

int cmd_homology(const RunConfig& cfg) {
  const liealg::GradedLieAlgebra g(resolve(cfg.structure));
  const homology::ChainComplex cc(g);
  if (cfg.degree < 0 || cfg.degree > cc.max_degree()) {
    std::cerr << "error: degree must lie in 0.." << cc.max_degree() << "\n";
    return kUsage;
  }
  auto h = homology::homology_components(cc, cfg.degree);
  const auto preds = homology::kostant_oracle(g, cfg.degree);
  const auto cmp = homology::attach_oracle(h, preds);
  for (auto& c : h.components)
    if (c.oracle_index >= 0) c.grid_label = bggpattern::grid_label(g.spec(), g.roots(), preds[c.oracle_index].w);

  if (cfg.json_out) {
    json j = homology::to_json(h);
    j["structure"] = g.spec().name;
    j["oracle_agrees"] = cmp.agree;
    for (std::size_t i = 0; i < h.components.size(); ++i)
      j["components"][i]["oracle"] =
          h.components[i].oracle_index >= 0 ? preds[h.components[i].oracle_index].w.str() : "unmatched";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << g.spec().name << "  H_" << cfg.degree << ": " << h.components.size() << " component(s)\n";
    std::cout << std::left << std::setw(22) << "highest weight" << std::setw(10) << "dim" << std::setw(6) << "hom"
              << std::setw(9) << "torsion" << std::setw(8) << "label" << "oracle\n";
    for (const auto& c : h.components) {
      std::string label = "-";
      if (c.grid_label) label = std::to_string(c.grid_label->first) + "," + std::to_string(c.grid_label->second);
      std::cout << std::setw(22) << c.highest_weight.str() << std::setw(10) << c.dim.get_str() << std::setw(6)
                << c.homogeneity << std::setw(9) << (c.torsion ? "yes" : "no") << std::setw(8) << label
                << (c.oracle_index >= 0 ? preds[c.oracle_index].w.str() : "unmatched") << "\n";
    }
    std::cout << "oracle agreement: " << (cmp.agree ? "yes" : "NO") << "\n";
    if (!cmp.agree) std::cout << cmp.diagnostics << "\n";
  }
  return cmp.agree ? kOk : kFailed;
}

int cmd_diagram(const RunConfig& cfg) {
  const liealg::GradedLieAlgebra g(resolve(cfg.structure));
  bggpattern::DiagramOptions opt;
  opt.all_edges = cfg.all_edges;
  const auto d = bggpattern::build_bgg_diagram(g, opt);
  std::string dot;
  json j = {{"diagram", bggpattern::to_json(d)}};
  if (g.spec().involution) {
    const auto f = bggpattern::fold(d, g);
    dot = bggpattern::to_dot(f, d);
    j["folded"] = bggpattern::to_json(f);
  } else {
    dot = bggpattern::to_dot(d);
  }
  if (cfg.dot_path.empty() && cfg.json_path.empty()) std::cout << dot;
  if (!cfg.dot_path.empty()) write_file(cfg.dot_path, dot);
  if (!cfg.json_path.empty()) write_file(cfg.json_path, j.dump(2) + "\n");
  if (!d.oracle_agrees) {
    std::cerr << "oracle disagreement:\n" << d.diagnostics;
    return kFailed;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<liealg::StructureSpec> targets;
  const bool all = cfg.structure == "all";
  if (!all) {
    targets.push_back(resolve(cfg.structure));
  } else if (cfg.suite == "algebraic") {
    targets = cli::catalog_up_to_rank(6);
  } else {
    targets = cli::smallest_catalog();
  }

  json summary = {{"suite", cfg.suite}, {"seed", cfg.seed}, {"trials", cfg.trials}, {"truncation", cfg.truncation}};
  summary["structures"] = json::array();
  bool pass = true;
  json first_failure;
  for (const auto& spec : targets) {
    cli::SuiteResult r;
    try {
      if (cfg.suite == "algebraic") {
        r = cli::algebraic_suite(spec);
      } else if (cfg.suite == "flatmodel") {
        r = cli::flatmodel_suite(spec, cfg.trials, cfg.seed, cfg.truncation);
      } else {
        r = cli::symbols_suite(spec, cfg.trials, cfg.seed);
      }
    } catch (const bggpattern::UnsupportedFamily& e) {
      if (!all) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
      }
      summary["structures"].push_back({{"structure", spec.name}, {"skipped", e.what()}});
      continue;
    }
    std::cerr << spec.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
    if (!r.pass && pass) {
      pass = false;
      first_failure = r.first_failure;
      first_failure["structure"] = spec.name;
    }
    summary["structures"].push_back(std::move(r.report));
  }
  summary["pass"] = pass;
  if (!pass) summary["first_counterexample"] = first_failure;
  const std::string text = summary.dump(2) + "\n";
  if (cfg.json_path.empty())
    std::cout << text;
  else
    write_file(cfg.json_path, text);
  if (!pass) std::cerr << "first counterexample:\n" << first_failure.dump(2) << "\n";
  return pass ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kostant homology, BGG patterns and flat-model checks for parabolic geometries"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* grade = app.add_subcommand("grade", "Grading data: depth, summand dimensions, base dimension");
  grade->add_option("structure", cfg.structure, "e.g. grassmannian:3 or A3:2")->required();
  grade->add_flag("--json", cfg.json_out, "JSON output");

  auto* hom = app.add_subcommand("homology", "Irreducible components of H_k with the Kostant prediction");
  hom->add_option("structure", cfg.structure)->required();
  hom->add_option("--degree", cfg.degree, "homology degree k")->capture_default_str();
  hom->add_flag("--json", cfg.json_out, "JSON output");

  auto* dia = app.add_subcommand("diagram", "BGG pattern as DOT (stdout unless --dot) and JSON");
  dia->add_option("structure", cfg.structure)->required();
  dia->add_option("--dot", cfg.dot_path, "write DOT here");
  dia->add_option("--json", cfg.json_path, "write JSON here");
  dia->add_flag("--all-edges", cfg.all_edges, "also add every positive-order pair in adjacent degrees");

  auto* ver = app.add_subcommand("verify", "Property suites; JSON summary, exit 1 on failure");
  ver->add_option("structure", cfg.structure, "structure name or 'all'")->required();
  ver->add_option("--suite", cfg.suite)
      ->check(CLI::IsMember({"algebraic", "flatmodel", "symbols"}))
      ->capture_default_str();
  ver->add_option("--seed", cfg.seed)->capture_default_str();
  ver->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber)->capture_default_str();
  ver->add_option("--truncation", cfg.truncation)->check(CLI::Range(2, 12))->capture_default_str();
  ver->add_option("--output", cfg.json_path, "write the JSON summary here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*grade) return cmd_grade(cfg);
    if (*hom) return cmd_homology(cfg);
    if (*dia) return cmd_diagram(cfg);
    return cmd_verify(cfg);
  } catch (const UsageError&) {
    return kUsage;  // already reported
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
