#include "bggkit/bggpattern/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bggkit::bggpattern {

using homology::ChainComplex;
using homology::HomologyComponent;
using liealg::Family;
using rootsys::Weight;

namespace {

int count_with_first_node(const std::vector<rootsys::RootCoords>& roots, std::size_t node) {
  int c = 0;
  for (const auto& r : roots) c += (r[node] != 0);
  return c;
}

Weight flip_weight(const liealg::GradedLieAlgebra& g, const Weight& w) {
  Weight out = w;
  for (std::size_t i = 0; i < w.coords.size(); ++i) out.coords[g.flip_node(int(i) + 1) - 1] = w.coords[i];
  return out;
}

}  // namespace

std::vector<std::size_t> BggDiagram::nodes_in_degree(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].degree == k) out.push_back(i);
  return out;
}

std::optional<std::size_t> BggDiagram::find(const GridLabel& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].grid_label == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> BggDiagram::find_edge(std::size_t source, std::size_t target) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].source == source && edges[i].target == target) return i;
  return std::nullopt;
}

std::optional<GridLabel> grid_label(const liealg::StructureSpec& spec, const rootsys::RootSystem& rs,
                                    const rootsys::WeylElement& w) {
  const auto inv = rootsys::inversion_set(rs, w);
  const int k = static_cast<int>(w.length());
  const int first = count_with_first_node(inv, 0);
  switch (spec.family) {
    case Family::Grassmannian:
    case Family::Quaternionic: {
      // Young diagrams in a 2 x m box: p boxes in the row of alpha_1.
      const int m = spec.rank - 1;
      const int p = first, q = k - first;
      if (p <= q && q <= m) return GridLabel{p, q};
      return std::nullopt;
    }
    case Family::LagrangeanContact:
    case Family::CR: {
      const int n = spec.rank - 1;
      if (k > n) return std::nullopt;
      const int q = first;
      const int p = count_with_first_node(inv, spec.rank - 1);
      if (p + q == k) return GridLabel{p, q};
      return std::nullopt;
    }
    case Family::QuaternionicContact: {
      const int n = spec.rank - 2;
      if (k > 2 * n + 1) return std::nullopt;
      const int q = first, p = k - first;
      if (p >= q) return GridLabel{p, q};
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

BggDiagram build_bgg_diagram(const liealg::GradedLieAlgebra& g, const DiagramOptions& opt) {
  ChainComplex cc(g);
  const int top = opt.max_degree < 0 ? cc.max_degree() : std::min(opt.max_degree, cc.max_degree());
  return build_bgg_diagram(g, homology::homology_range(cc, 0, top, opt.homology), opt.all_edges);
}

BggDiagram build_bgg_diagram(const liealg::GradedLieAlgebra& g, std::vector<homology::DegreeHomology> degrees,
                             bool all_edges) {
  BggDiagram d;
  d.spec = g.spec();
  d.depth = g.depth();
  d.max_degree = static_cast<int>(degrees.size()) - 1;
  std::vector<bool> matched;
  for (int k = 0; k <= d.max_degree; ++k) {
    if (degrees[k].degree != k) throw std::invalid_argument("build_bgg_diagram: degrees must run 0, 1, ...");
    auto& h = degrees[k];
    auto preds = homology::kostant_oracle(g, k);
    auto cmp = homology::attach_oracle(h, preds);
    if (!cmp.agree) {
      d.oracle_agrees = false;
      d.diagnostics += cmp.diagnostics + "\n";
    }
    for (auto& c : h.components) {
      BggNode node;
      node.degree = k;
      const bool ok = c.oracle_index >= 0;
      if (ok) {
        node.w = preds[c.oracle_index].w;
        node.grid_label = grid_label(g.spec(), g.roots(), node.w);
        c.grid_label = node.grid_label;
      }
      node.component = std::move(c);
      d.nodes.push_back(std::move(node));
      matched.push_back(ok);
    }
  }

  std::vector<std::size_t> ids;
  std::vector<rootsys::WeylElement> reps;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (!matched[i]) continue;
    ids.push_back(i);
    reps.push_back(d.nodes[i].w);
  }
  for (auto [a, b] : rootsys::bruhat_covers(g.roots(), reps)) {
    const auto& s = d.nodes[ids[a]];
    const auto& t = d.nodes[ids[b]];
    const int order = t.component.homogeneity - s.component.homogeneity;
    if (order <= 0) {
      std::ostringstream os;
      os << "bgg diagram: non-positive order on cover " << s.w.str() << " -> " << t.w.str();
      throw std::logic_error(os.str());
    }
    d.edges.push_back({ids[a], ids[b], order, true});
  }
  if (all_edges) {
    for (std::size_t a = 0; a < d.nodes.size(); ++a)
      for (std::size_t b = 0; b < d.nodes.size(); ++b) {
        if (d.nodes[b].degree != d.nodes[a].degree + 1) continue;
        const int order = d.nodes[b].component.homogeneity - d.nodes[a].component.homogeneity;
        if (order > 0 && !d.find_edge(a, b)) d.edges.push_back({a, b, order, false});
      }
  }
  std::sort(d.edges.begin(), d.edges.end(), [](const BggEdge& x, const BggEdge& y) {
    return std::tie(x.source, x.target) < std::tie(y.source, y.target);
  });
  return d;
}

std::vector<H2Class> classify_torsion_curvature(const BggDiagram& d) {
  std::vector<H2Class> out;
  for (std::size_t i : d.nodes_in_degree(2))
    out.push_back({i, d.nodes[i].component.torsion, d.nodes[i].component.homogeneity});
  return out;
}

H1Verdict h1_nonpositivity(const liealg::GradedLieAlgebra& g) {
  ChainComplex cc(g);
  auto h = homology::homology_components(cc, 1);
  H1Verdict v;
  for (auto& c : h.components) {
    if (c.homogeneity > 0 && (!v.witness || c.homogeneity > v.witness->homogeneity)) {
      v.nonpositive = false;
      v.witness = c;
    }
  }
  return v;
}

std::vector<HomologyComponent> regularity_forced_components(const liealg::GradedLieAlgebra& g) {
  if (g.depth() < 2)
    throw std::invalid_argument(g.spec().name +
                                " is |1|-graded: every normal geometry is regular, so no component is forced");
  ChainComplex cc(g);
  auto h = homology::homology_components(cc, 2);
  std::vector<HomologyComponent> out;
  for (auto& c : h.components)
    if (c.homogeneity <= 0) out.push_back(std::move(c));
  return out;
}

std::vector<std::size_t> FoldedDiagram::nodes_in_degree(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].degree == k) out.push_back(i);
  return out;
}

std::optional<std::size_t> FoldedDiagram::find(const GridLabel& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].grid_label == label) return i;
  return std::nullopt;
}

FoldedDiagram fold(const BggDiagram& d, const liealg::GradedLieAlgebra& g) {
  FoldedDiagram f;
  std::vector<long> owner(d.nodes.size(), -1);
  for (std::size_t a = 0; a < d.nodes.size(); ++a) {
    if (owner[a] >= 0) continue;
    const auto& na = d.nodes[a];
    const Weight image = flip_weight(g, na.component.highest_weight);
    FoldedNode fn;
    fn.degree = na.degree;
    fn.members.push_back(a);
    fn.homogeneity = na.component.homogeneity;
    fn.torsion = na.component.torsion;
    fn.grid_label = na.grid_label;
    if (image != na.component.highest_weight) {
      for (std::size_t b = a + 1; b < d.nodes.size(); ++b) {
        const auto& nb = d.nodes[b];
        if (owner[b] >= 0 || nb.degree != na.degree || nb.component.highest_weight != image) continue;
        if (nb.component.homogeneity != fn.homogeneity)
          throw std::logic_error("fold: paired components differ in homogeneity");
        fn.members.push_back(b);
        fn.torsion = fn.torsion || nb.component.torsion;
        if (fn.grid_label && nb.grid_label)
          fn.grid_label = GridLabel{std::max(fn.grid_label->first, fn.grid_label->second),
                                    std::min(fn.grid_label->first, fn.grid_label->second)};
        owner[b] = static_cast<long>(f.nodes.size());
        break;
      }
    }
    owner[a] = static_cast<long>(f.nodes.size());
    f.nodes.push_back(std::move(fn));
  }
  for (const auto& e : d.edges) {
    if (!e.standard) continue;
    const std::size_t s = owner[e.source], t = owner[e.target];
    const bool seen = std::any_of(f.edges.begin(), f.edges.end(),
                                  [&](const FoldedEdge& x) { return x.source == s && x.target == t; });
    if (!seen) f.edges.push_back({s, t, e.order});
  }
  return f;
}

std::string to_dot(const BggDiagram& d) {
  std::ostringstream os;
  os << "digraph bgg {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& n = d.nodes[i];
    const auto& c = n.component;
    os << "  n" << i << " [label=\"H_" << n.degree << ": " << c.highest_weight.str() << ", dim " << c.dim.get_str()
       << ", hom " << c.homogeneity << ", " << (c.torsion ? 'T' : 'C');
    if (n.grid_label) os << "\\nH_{" << n.grid_label->first << ',' << n.grid_label->second << '}';
    os << "\"];\n";
  }
  for (const auto& e : d.edges) {
    os << "  n" << e.source << " -> n" << e.target << " [label=\"" << e.order << '"';
    if (!e.standard) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const BggDiagram& d) {
  nlohmann::json j;
  j["structure"] = d.spec.name;
  j["oracle_agrees"] = d.oracle_agrees;
  j["nodes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    auto node = homology::to_json(d.nodes[i].component);
    node["id"] = i;
    node["w"] = d.nodes[i].w.str();
    j["nodes"].push_back(std::move(node));
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : d.edges)
    j["edges"].push_back({{"source", e.source}, {"target", e.target}, {"order", e.order}, {"standard", e.standard}});
  return j;
}

std::string to_dot(const FoldedDiagram& f, const BggDiagram& d) {
  std::ostringstream os;
  os << "digraph bgg_folded {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& n = f.nodes[i];
    os << "  f" << i << " [label=\"H_" << n.degree << ": ";
    for (std::size_t m = 0; m < n.members.size(); ++m)
      os << (m ? " + " : "") << d.nodes[n.members[m]].component.highest_weight.str();
    os << ", hom " << n.homogeneity << ", " << (n.torsion ? 'T' : 'C');
    if (n.grid_label) os << "\\nH_{" << n.grid_label->first << ',' << n.grid_label->second << '}';
    os << '"';
    if (n.members.size() > 1) os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& e : f.edges) os << "  f" << e.source << " -> f" << e.target << " [label=\"" << e.order << "\"];\n";
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const FoldedDiagram& f) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& n = f.nodes[i];
    nlohmann::json node = {{"id", i}, {"degree", n.degree}, {"members", n.members}, {"homogeneity", n.homogeneity},
                           {"torsion", n.torsion}};
    if (n.grid_label) node["grid_label"] = {n.grid_label->first, n.grid_label->second};
    j["nodes"].push_back(std::move(node));
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : f.edges) j["edges"].push_back({{"source", e.source}, {"target", e.target}, {"order", e.order}});
  return j;
}

}  // namespace bggkit::bggpattern
