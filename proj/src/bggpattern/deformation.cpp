#include "bggkit/bggpattern/deformation.hpp"

#include <algorithm>
#include <map>

namespace bggkit::bggpattern {

using liealg::Family;

namespace {

nlohmann::json label_json(const GridLabel& l) { return nlohmann::json::array({l.first, l.second}); }

struct Builder {
  const liealg::GradedLieAlgebra& g;
  const BggDiagram& d;
  DeformationComplexReport& r;

  void claim(std::string name, std::string quote, nlohmann::json expected, nlohmann::json computed) {
    const bool pass = expected == computed;
    r.claims.push_back({std::move(name), std::move(quote), std::move(expected), std::move(computed), pass});
  }

  std::optional<int> edge_order(const GridLabel& a, const GridLabel& b) const {
    auto s = d.find(a), t = d.find(b);
    if (!s || !t) return std::nullopt;
    auto e = d.find_edge(*s, *t);
    if (!e || !d.edges[*e].standard) return std::nullopt;
    return d.edges[*e].order;
  }

  // Row along labels; returns the orders of consecutive steps (null where missing).
  nlohmann::json chain(const std::vector<GridLabel>& labels) {
    nlohmann::json orders = nlohmann::json::array();
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
      auto o = edge_order(labels[i], labels[i + 1]);
      r.row_edges.push_back({labels[i], labels[i + 1], o});
      orders.push_back(o ? nlohmann::json(*o) : nlohmann::json());
    }
    return orders;
  }

  nlohmann::json present(const std::vector<GridLabel>& labels) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& l : labels) out.push_back(d.find(l).has_value());
    return out;
  }

  std::vector<int> counts_per_degree(int upto) const {
    std::vector<int> out;
    for (int k = 0; k <= upto; ++k) out.push_back(static_cast<int>(d.nodes_in_degree(k).size()));
    return out;
  }

  nlohmann::json h2_kinds(const std::vector<GridLabel>& labels) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& l : labels) {
      auto i = d.find(l);
      out.push_back(!i ? "missing" : (d.nodes[*i].component.torsion ? "torsion" : "curvature"));
    }
    return out;
  }

  nlohmann::json dim_of(const GridLabel& l) const {
    auto i = d.find(l);
    if (!i) return nullptr;
    return d.nodes[*i].component.dim.get_si();
  }
};

std::vector<GridLabel> column_row(int length) {
  std::vector<GridLabel> out;
  for (int j = 0; j <= length; ++j) out.push_back({0, j});
  return out;
}

std::vector<GridLabel> line_row(int length) {
  std::vector<GridLabel> out;
  for (int j = 0; j <= length; ++j) out.push_back({j, 0});
  return out;
}

// Grassmannian-type patterns (2 x m boxes); m = n for Grassmannian, 2n for
// quaternionic structures.
void grassmannian_claims(Builder& b, int n, bool quaternionic) {
  const int m = quaternionic ? 2 * n : n;
  const auto row = column_row(m);
  for (const auto& l : row) b.r.row.push_back({l});
  b.claim("row_nodes", "0 -> Gamma(H_{0,0}) -> Gamma(H_{0,1}) -> ... -> Gamma(H_{0,n}) -> 0",
          std::vector<bool>(row.size(), true), b.present(row));
  std::vector<int> orders(m, 1);
  orders.back() = 2;
  const auto computed = b.chain(row);
  if (!quaternionic && n == 2)
    b.claim("row_orders", "the second operator (which has order two)", orders, computed);
  else if (quaternionic)
    b.claim("row_orders", "the operators have the same orders", orders, computed);
  else
    b.claim("row_orders",
            "the BGG operators Gamma(H_{0,j-1}) -> Gamma(H_{0,j}) are first order for all j=1,...,n-1 ... "
            "the last BGG operator Gamma(H_{0,n-1}) -> Gamma(H_{0,n}) is of second order",
            orders, computed);
  std::vector<int> shape;
  for (int k = 0; k <= 2 * m; ++k) {
    int c = 0;
    for (int p = 0; p <= m; ++p)
      if (k - p >= p && k - p <= m) ++c;
    shape.push_back(c);
  }
  b.claim("triangular_shape",
          "splits as a direct sum of irreducible subbundles H_{p,q} with p+q=k and 0 <= p <= q <= n", shape,
          b.counts_per_degree(std::min(2 * m, b.d.max_degree)));
  b.claim("h2_count", "there are two irreducible components in the harmonic curvature", 2,
          b.d.nodes_in_degree(2).size());
  if (n > 1 || quaternionic) {
    if (n == 2 && !quaternionic)
      b.claim("h2_kinds", "the self dual and the anti self dual parts of the Weyl curvature",
              nlohmann::json::array({"curvature", "curvature"}), b.h2_kinds({{0, 2}, {1, 1}}));
    else if (n > 1)
      b.claim("h2_kinds",
              quaternionic ? "one of them is a torsion and the other is a true curvature"
                           : "The harmonic curvature component in Gamma(H_{0,2}) is called the torsion",
              nlohmann::json::array({"torsion", "curvature"}), b.h2_kinds({{0, 2}, {1, 1}}));
  }
  if (!quaternionic && n > 2)
    b.claim("h01_to_h11_order", "the BGG operator Gamma(H_{0,1}) -> Gamma(H_{1,1}) is a second order operator", 2,
            b.edge_order({0, 1}, {1, 1}) ? nlohmann::json(*b.edge_order({0, 1}, {1, 1})) : nlohmann::json());
  b.claim("h00_is_tangent", quaternionic ? "a smooth manifold of dimension 4n" : "H_{0,0}=E^* (x) F=TM",
          quaternionic ? 4 * n : 2 * n, b.dim_of({0, 0}));
}

void lagrangean_claims(Builder& b, int n) {
  b.r.row.push_back({{0, 0}});
  for (int j = 1; j <= n; ++j) b.r.row.push_back({{0, j}, {j, 0}});
  std::vector<GridLabel> all{{0, 0}};
  for (int j = 1; j <= n; ++j) {
    all.push_back({0, j});
    all.push_back({j, 0});
  }
  b.claim("row_nodes", "Gamma(H_{0,n}) (+) Gamma(H_{n,0})", std::vector<bool>(all.size(), true), b.present(all));
  const auto left = b.chain(column_row(n));
  const auto right = b.chain(line_row(n));
  std::vector<int> orders(n, 1);
  orders[0] = 2;
  b.claim("row_orders_0j",
          "the operator mapping sections of H_{0,0} to sections of H_{0,1} must be of second order, while for "
          "1 <= j < n the operator Gamma(H_{0,j}) -> Gamma(H_{0,j+1}) is first order",
          orders, left);
  b.claim("row_orders_j0", "one gets the analogous results for the orders of the operators", orders, right);
  std::vector<int> shape;
  for (int k = 0; k <= n; ++k) shape.push_back(k + 1);
  b.claim("shape", "splits as (+)_{p,q} H_{p,q} with p+q=k and 0 <= p,q", shape,
          b.counts_per_degree(std::min(n, b.d.max_degree)));
  if (b.d.max_degree == 2 * n + 1) {
    std::vector<int> lo, hi;
    for (int k = 1; k <= n + 1; ++k) {
      lo.push_back(static_cast<int>(b.d.nodes_in_degree(n - k + 1).size()));
      hi.push_back(static_cast<int>(b.d.nodes_in_degree(n + k).size()));
    }
    b.claim("mirror", "The decomposition of the bundle in degree n+k has the same form as for degree n-k+1", lo, hi);
  }
  // The harmonic curvature description assumes n >= 2; in dimension three
  // H_2 has two components.
  if (n >= 2) {
    b.claim("h2_count", "there are three components in the harmonic curvature", 3, b.d.nodes_in_degree(2).size());
    b.claim("h2_kinds", "The components in Gamma(H_{2,0}) and Gamma(H_{0,2}) are torsions ... The component in "
                        "Gamma(H_{1,1}) is a true curvature",
            nlohmann::json::array({"torsion", "torsion", "curvature"}), b.h2_kinds({{2, 0}, {0, 2}, {1, 1}}));
  }
  bool positive = true;
  for (std::size_t i : b.d.nodes_in_degree(2)) positive = positive && b.d.nodes[i].component.homogeneity > 0;
  b.claim("h2_positive", "are all contained in positive homogeneous degrees", true, positive);
  b.claim("h00_line", "the first bundle H_{0,0} is the quotient Q:=TM/H", 1, b.dim_of({0, 0}));
}

void cr_claims(Builder& b, int n) {
  const FoldedDiagram f = fold(b.d, b.g);
  for (int j = 0; j <= n; ++j) b.r.row.push_back({{j, 0}});
  nlohmann::json members = nlohmann::json::array(), expected = nlohmann::json::array();
  for (int j = 0; j <= n; ++j) {
    auto i = f.find({j, 0});
    members.push_back(i ? nlohmann::json(f.nodes[*i].members.size()) : nlohmann::json());
    expected.push_back(j == 0 ? 1 : 2);
  }
  b.claim("row_nodes",
          "apart from H_{0,0}=Q:=TM/H, all the bundles H_{j,0} in the sequence are complex vector bundles",
          expected, members);
  for (int j = 0; j < n; ++j) {
    auto s = f.find({j, 0}), t = f.find({j + 1, 0});
    std::optional<int> o;
    if (s && t)
      for (const auto& e : f.edges)
        if (e.source == *s && e.target == *t) o = e.order;
    b.r.row_edges.push_back({{j, 0}, {j + 1, 0}, o});
  }
  if (n < 2) return;  // parallel to the lagrangean-contact case
  const auto h2 = f.nodes_in_degree(2);
  b.claim("h2_count", "there are only two irreducible components in the harmonic curvature", 2, h2.size());
  nlohmann::json kinds = nlohmann::json::array();
  std::vector<std::string> sorted;
  for (std::size_t i : h2) sorted.push_back(f.nodes[i].torsion ? "torsion" : "curvature");
  std::sort(sorted.begin(), sorted.end());
  b.claim("h2_kinds", "One of these components is a torsion ... while the other is a curvature",
          nlohmann::json::array({"curvature", "torsion"}), sorted);
}

void qc_claims(Builder& b, int n) {
  const auto row = line_row(2 * n + 1);
  for (const auto& l : row) b.r.row.push_back({l});
  b.claim("row_nodes", "0 -> Gamma(H_{0,0}) -> Gamma(H_{1,0}) -> ... -> Gamma(H_{2n+1,0}) -> 0",
          std::vector<bool>(row.size(), true), b.present(row));
  std::vector<int> orders(2 * n + 1, 1);
  orders[n] = 2;
  b.claim("row_orders",
          "the operator Gamma(H_{n,0}) -> Gamma(H_{n+1,0}) is of second order, while all other operators in the "
          "subcomplex are of first order",
          orders, b.chain(row));
  std::vector<int> shape;
  for (int k = 0; k <= 2 * n + 1; ++k) shape.push_back(k / 2 + 1);
  b.claim("shape", "splits into a direct sum of bundles H_{p,q} with p+q=k and p >= q", shape,
          b.counts_per_degree(std::min(2 * n + 1, b.d.max_degree)));
  if (b.d.max_degree == 4 * n + 3) {
    std::vector<int> lo, hi;
    for (int k = 1; k <= 2 * n + 2; ++k) {
      lo.push_back(static_cast<int>(b.d.nodes_in_degree(2 * n + 2 - k).size()));
      hi.push_back(static_cast<int>(b.d.nodes_in_degree(2 * n + 1 + k).size()));
    }
    b.claim("mirror", "the bundle in degree 2n+1+k decomposes in the same way as the one in degree 2n+2-k", lo, hi);
  }
  b.claim("h2_kinds",
          "in degree two we obtain two irreducible components H_{2,0} and H_{1,1} ... H_{2,0} ... is a torsion, "
          "while the one having values in H_{1,1} is a curvature",
          nlohmann::json::array({"torsion", "curvature"}), b.h2_kinds({{2, 0}, {1, 1}}));
  b.claim("h2_count", "two irreducible components", 2, b.d.nodes_in_degree(2).size());
  nlohmann::json forced = nlohmann::json::array();
  for (const auto& c : b.r.regularity_forced) forced.push_back(c.grid_label ? label_json(*c.grid_label) : nullptr);
  if (n > 1)
    b.claim("regularity_forced", "bundle H_{2,0} is contained in homogeneity zero, so vanishing of the "
                                 "corresponding harmonic curvature component is forced by regularity",
            nlohmann::json::array({label_json({2, 0})}), forced);
  else
    b.claim("regularity_forced", "For n=1, one obtains a subcategory of torsion free", nlohmann::json::array(),
            forced);
  b.claim("h00_rank", "codimension three subbundles", 3, b.dim_of({0, 0}));
}

}  // namespace

bool DeformationComplexReport::pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

DeformationComplexReport deformation_subcomplex(const liealg::GradedLieAlgebra& g, const BggDiagram& d) {
  const auto& spec = g.spec();
  DeformationComplexReport r;
  r.structure = spec.name;
  r.h2 = classify_torsion_curvature(d);
  r.h1 = h1_nonpositivity(g);
  if (g.depth() >= 2) {
    // Take the forced components from the diagram so they carry grid labels.
    for (std::size_t i : d.nodes_in_degree(2))
      if (d.nodes[i].component.homogeneity <= 0) r.regularity_forced.push_back(d.nodes[i].component);
  }
  Builder b{g, d, r};
  switch (spec.family) {
    case Family::Grassmannian:
      grassmannian_claims(b, spec.n, false);
      break;
    case Family::Quaternionic:
      grassmannian_claims(b, spec.n, true);
      break;
    case Family::LagrangeanContact:
      lagrangean_claims(b, spec.n);
      break;
    case Family::CR:
      cr_claims(b, spec.n);
      break;
    case Family::QuaternionicContact:
      qc_claims(b, spec.n);
      break;
    default:
      throw UnsupportedFamily("deformation_subcomplex: no grid labels for " + spec.name);
  }
  return r;
}

DeformationComplexReport deformation_subcomplex(const liealg::StructureSpec& spec,
                                                const homology::HomologyOptions& hopt) {
  switch (spec.family) {
    case Family::Grassmannian:
    case Family::Quaternionic:
    case Family::LagrangeanContact:
    case Family::CR:
    case Family::QuaternionicContact:
      break;
    default:
      throw UnsupportedFamily("deformation_subcomplex: no grid labels for " + spec.name);
  }
  liealg::GradedLieAlgebra g(spec);
  DiagramOptions opt;
  opt.homology = hopt;
  return deformation_subcomplex(g, build_bgg_diagram(g, opt));
}

nlohmann::json to_json(const DeformationComplexReport& r) {
  nlohmann::json j;
  j["structure"] = r.structure;
  j["pass"] = r.pass();
  j["nodes"] = nlohmann::json::array();
  for (const auto& pos : r.row) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& l : pos) labels.push_back(label_json(l));
    j["nodes"].push_back(labels);
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : r.row_edges)
    j["edges"].push_back({{"from", label_json(e.from)},
                          {"to", label_json(e.to)},
                          {"order", e.order ? nlohmann::json(*e.order) : nlohmann::json()}});
  j["h2"] = nlohmann::json::array();
  for (const auto& h : r.h2) j["h2"].push_back({{"node", h.node}, {"torsion", h.torsion}, {"homogeneity", h.homogeneity}});
  j["h1_nonpositive"] = r.h1.nonpositive;
  if (r.h1.witness) j["h1_witness"] = homology::to_json(*r.h1.witness);
  j["regularity_forced"] = nlohmann::json::array();
  for (const auto& c : r.regularity_forced) j["regularity_forced"].push_back(homology::to_json(c));
  j["claims"] = nlohmann::json::array();
  for (const auto& c : r.claims)
    j["claims"].push_back(
        {{"name", c.name}, {"quote", c.quote}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  return j;
}

}  // namespace bggkit::bggpattern
