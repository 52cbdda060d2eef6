// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "bggkit/bggpattern/deformation.hpp"
#include "bggkit/flatmodel/checks.hpp"
#include "suites.hpp"

using namespace bggkit;
using liealg::Family;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

liealg::StructureSpec spec(Family f, int n) { return liealg::catalog_entry(f, n); }

// Closed forms from counting roots: dims of g_{-k}, ..., g_k and of g_-.
struct GradingForm {
  std::vector<long> dims;
  long base;
};

GradingForm grading_closed_form(Family f, long n) {
  switch (f) {
    case Family::Projective:
      return {{n, n * n, n}, n};
    case Family::ContactProjective:
      return {{1, 2 * n - 2, (n - 1) * (2 * n - 1) + 1, 2 * n - 2, 1}, 2 * n - 1};
    case Family::Grassmannian:
      return {{2 * n, n * n + 3, 2 * n}, 2 * n};
    case Family::Quaternionic:
      return {{4 * n, 4 * n * n + 3, 4 * n}, 4 * n};
    case Family::LagrangeanContact:
    case Family::CR:
      return {{1, 2 * n, n * n + 1, 2 * n, 1}, 2 * n + 1};
    case Family::QuaternionicContact:
      return {{3, 4 * n, 2 * n * n + n + 4, 4 * n, 3}, 4 * n + 3};
    default:
      return {};
  }
}

void criterion1(Outcome& o) {
  double worst = 0;
  int checked = 0;
  for (const auto& s : cli::catalog_up_to_rank(6)) {
    const auto t0 = std::chrono::steady_clock::now();
    const liealg::GradedLieAlgebra g(s);
    const auto dims = g.grading_summand_dims();
    std::vector<long> got;
    long base = 0;
    for (auto [grade, dim] : dims) {
      got.push_back(static_cast<long>(dim));
      if (grade < 0) base += static_cast<long>(dim);
    }
    const auto want = grading_closed_form(s.family, s.n);
    const int depth = static_cast<int>(want.dims.size()) / 2;
    o.require(got == want.dims && base == want.base && g.depth() == depth, s.name);
    worst = std::max(worst, seconds_since(t0));
    ++checked;
  }
  // The smallest members against the stated manifold dimensions 2n, 4n, 2n+1, 4n+3.
  const std::pair<liealg::StructureSpec, long> stated[] = {
      {spec(Family::Grassmannian, 2), 4},      {spec(Family::Quaternionic, 1), 4},
      {spec(Family::LagrangeanContact, 1), 3}, {spec(Family::CR, 1), 3},
      {spec(Family::QuaternionicContact, 1), 7}};
  for (const auto& [s, dim] : stated) {
    long base = 0;
    for (auto [grade, d] : liealg::GradedLieAlgebra(s).grading_summand_dims())
      if (grade < 0) base += static_cast<long>(d);
    o.require(base == dim, s.name + " base dim");
  }
  o.require(worst < 5.0, "runtime");
  o.note << checked << " gradings match root counts, slowest " << worst << " s";
}

void criterion2(Outcome& o) {
  auto count = [&](const liealg::StructureSpec& s, std::size_t want, bool folded) {
    const auto t0 = std::chrono::steady_clock::now();
    const liealg::GradedLieAlgebra g(s);
    bggpattern::DiagramOptions opt;
    opt.max_degree = 3;
    const auto d = bggpattern::build_bgg_diagram(g, opt);
    const std::size_t got =
        folded ? bggpattern::fold(d, g).nodes_in_degree(2).size() : d.nodes_in_degree(2).size();
    const double t = seconds_since(t0);
    o.require(got == want && t < 60, s.name);
    o.note << s.name << (folded ? " folded" : "") << "=" << got << " ";
    return d;
  };
  count(spec(Family::Grassmannian, 3), 2, false);
  count(spec(Family::LagrangeanContact, 2), 3, false);
  for (int n : {1, 2}) {
    const auto d = count(spec(Family::QuaternionicContact, n), 2, false);
    o.require(d.find({2, 0}) && d.find({1, 1}), "qc labels H_{2,0}, H_{1,1}");
  }
  count(spec(Family::CR, 2), 2, true);
}

void criterion3(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int structures = 0, degrees = 0;
  for (const auto& s : cli::catalog_up_to_rank(6)) {
    const liealg::GradedLieAlgebra g(s);
    const homology::ChainComplex cc(g);
    homology::HomologyOptions opt;
    opt.mode = homology::HomologyOptions::Mode::HighestWeightOnly;
    for (auto& h : homology::homology_range(cc, 0, cc.max_degree(), opt)) {
      const auto cmp = homology::attach_oracle(h, homology::kostant_oracle(g, h.degree));
      o.require(cmp.agree, s.name + " degree " + std::to_string(h.degree));
      ++degrees;
    }
    ++structures;
  }
  const double t = seconds_since(t0);
  o.require(t < 600, "runtime");
  o.note << structures << " structures, " << degrees << " degrees, " << t << " s";
}

void criterion4(Outcome& o) {
  int falses = 0, total = 0;
  for (const auto& s : cli::catalog_up_to_rank(6)) {
    const liealg::GradedLieAlgebra g(s);
    const bool want = !(s.family == Family::Projective || s.family == Family::ContactProjective);
    const bool got = bggpattern::h1_nonpositivity(g).nonpositive;
    o.require(got == want, s.name);
    falses += !got;
    ++total;
  }
  o.note << total << " gradings, non-positivity fails for " << falses << " (all of type A_l/{1} or C_l/{1})";
}

std::vector<std::optional<int>> row_orders(const liealg::StructureSpec& s) {
  std::vector<std::optional<int>> out;
  for (const auto& e : bggpattern::deformation_subcomplex(s).row_edges) out.push_back(e.order);
  return out;
}

std::string orders_str(const std::vector<std::optional<int>>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + (v[i] ? std::to_string(*v[i]) : "?");
  return s + ")";
}

void criterion5(Outcome& o) {
  const auto g3 = row_orders(spec(Family::Grassmannian, 3));
  o.require(g3 == std::vector<std::optional<int>>{1, 1, 2}, "grassmannian:3");
  const auto g2 = row_orders(spec(Family::Grassmannian, 2));
  o.require(g2 == std::vector<std::optional<int>>{1, 2}, "grassmannian:2");
  const auto lc = row_orders(spec(Family::LagrangeanContact, 2));
  o.require(!lc.empty() && lc.front() == 2, "lagrangean-contact:2");

  const auto r = bggpattern::deformation_subcomplex(spec(Family::QuaternionicContact, 2));
  bool qc = !r.row_edges.empty();
  for (const auto& e : r.row_edges) {
    const bool second = e.from == bggpattern::GridLabel{2, 0} && e.to == bggpattern::GridLabel{3, 0};
    qc = qc && e.order == (second ? 2 : 1);
  }
  o.require(qc, "quaternionic-contact:2");
  std::vector<std::optional<int>> qo;
  for (const auto& e : r.row_edges) qo.push_back(e.order);
  o.note << "grassmannian:3 " << orders_str(g3) << ", grassmannian:2 " << orders_str(g2)
         << ", lagrangean-contact:2 " << orders_str(lc) << ", quaternionic-contact:2 " << orders_str(qo);
}

void criterion6(Outcome& o) {
  for (int n : {2, 3, 4}) {
    const liealg::GradedLieAlgebra g(spec(Family::Grassmannian, n));
    bggpattern::DiagramOptions opt;
    opt.max_degree = 2;
    const auto d = bggpattern::build_bgg_diagram(g, opt);
    int torsion = 0, curvature = 0;
    for (const auto& c : bggpattern::classify_torsion_curvature(d)) {
      o.require(c.homogeneity == (c.torsion ? 1 : 2), g.spec().name);
      (c.torsion ? torsion : curvature)++;
    }
    o.note << g.spec().name << " torsion@1=" << torsion << " curvature@2=" << curvature << "; ";
    if (n == 3) o.require(torsion == 1 && curvature == 1, "grassmannian:3 one of each");
  }
  for (int n : {1, 2}) {
    const liealg::GradedLieAlgebra g(spec(Family::QuaternionicContact, n));
    bggpattern::DiagramOptions opt;
    opt.max_degree = 2;
    const auto d = bggpattern::build_bgg_diagram(g, opt);
    const auto node = d.find({2, 0});
    o.require(node.has_value(), g.spec().name + " H_{2,0}");
    if (!node) continue;
    const auto& c = d.nodes[*node].component;
    bool forced = false;
    for (const auto& f : bggpattern::regularity_forced_components(g))
      forced = forced || f.highest_weight == c.highest_weight;
    o.require(forced == (n == 2), g.spec().name + " regularity-forced verdict");
    if (n == 2) o.require(c.homogeneity == 0, "homogeneity zero");
    o.note << g.spec().name << " H_{2,0} homogeneity " << c.homogeneity << (forced ? " forced" : " not forced")
           << "; ";
  }
}

void flat_reports(Outcome& o, const std::vector<flatmodel::CheckReport>& rs) {
  for (const auto& r : rs)
    if (!r.pass) o.require(false, r.check + " " + r.structure + " seed " + std::to_string(r.seed));
}

void criterion7(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (auto s : {spec(Family::Grassmannian, 2), spec(Family::LagrangeanContact, 2)})
    flat_reports(o, flatmodel::check_flat_complex(s, 25, 0, 4));
  const double t = seconds_since(t0);
  o.require(t < 600, "runtime");
  o.note << "D1 D0 = 0 on grassmannian:2 and lagrangean-contact:2, 25 sections each, truncation 4, " << t << " s";
}

void criterion8(Outcome& o) {
  const auto s = spec(Family::Grassmannian, 2);
  const auto routes = flatmodel::check_two_routes(s, 10, 0, 4);
  const auto bianchi = flatmodel::check_bianchi(s, 10, 0, 4);
  flat_reports(o, routes);
  flat_reports(o, bianchi);
  o.require(routes.size() == 20 && bianchi.size() == 10, "report count");
  o.note << "10 curved bases on grassmannian:2, both first-order formulas and Bianchi, truncation 4";
}

void criterion9(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = flatmodel::symbol_exactness(spec(Family::Quaternionic, 2), 20, 0);
  o.require(q.composites_vanish && q.all_exact && static_cast<int>(q.trials.size()) == 20, "quaternionic:2 exact");
  const auto lc = flatmodel::symbol_exactness(spec(Family::LagrangeanContact, 2), 20, 0);
  o.require(lc.composites_vanish && lc.witness.has_value(), "lagrangean-contact:2 witness");
  const double t = seconds_since(t0);
  o.require(t < 900, "runtime");
  o.note << "quaternionic:2 exact at 20 covectors; lagrangean-contact:2 "
         << (lc.witness ? "non-exact at a witness covector" : "no witness") << "; " << t << " s";
}

void criterion10(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int structures = 0;
  for (const auto& s : cli::catalog_up_to_rank(6)) {
    const auto r = cli::algebraic_suite(s);
    if (!r.pass) o.require(false, s.name + ": " + r.first_failure.dump());
    ++structures;
  }
  o.note << "codiff^2 = 0, Hodge dimensions, Euler characteristic and purity on " << structures << " structures, "
         << seconds_since(t0) << " s";
}

}  // namespace

// Optional argument: also write the lines to this file.
int main(int argc, char** argv) {
  std::ofstream copy;
  if (argc > 1) copy.open(argv[1]);
  const std::pair<int, std::function<void(Outcome&)>> criteria[] = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  bool all = true;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    all = all && o.pass;
    const std::string line = std::string(o.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(id) + ": " + o.note.str();
    std::cout << line << std::endl;
    if (copy) copy << line << std::endl;
  }
  return all ? 0 : 1;
}
