#include <gtest/gtest.h>

#include <set>

#include "bggkit/bggpattern/deformation.hpp"

using namespace bggkit;
using namespace bggkit::bggpattern;
using liealg::Family;
using liealg::GradedLieAlgebra;
using liealg::catalog_entry;
using liealg::parse_structure;

namespace {

int order_between(const BggDiagram& d, GridLabel a, GridLabel b) {
  auto s = d.find(a), t = d.find(b);
  if (!s || !t) return -1;
  auto e = d.find_edge(*s, *t);
  return e ? d.edges[*e].order : -1;
}

homology::HomologyOptions hw_only() {
  homology::HomologyOptions o;
  o.mode = homology::HomologyOptions::Mode::HighestWeightOnly;
  return o;
}

}  // namespace

TEST(Diagram, ConformalSplitShape) {
  GradedLieAlgebra g(parse_structure("A3:2"));
  auto d = build_bgg_diagram(g);
  EXPECT_TRUE(d.oracle_agrees);
  std::vector<std::size_t> counts;
  for (int k = 0; k <= d.max_degree; ++k) counts.push_back(d.nodes_in_degree(k).size());
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 1, 2, 1, 1}));
  const auto& h0 = d.nodes[d.nodes_in_degree(0)[0]].component;
  EXPECT_EQ(h0.dim, 4);
  EXPECT_EQ(h0.homogeneity, -1);
  // Hasse diagram of W^p for the 2x2 box: a chain with one diamond.
  EXPECT_EQ(d.edges.size(), 6u);
  for (std::size_t t : d.nodes_in_degree(2)) {
    auto e = d.find_edge(d.nodes_in_degree(1)[0], t);
    ASSERT_TRUE(e);
    EXPECT_EQ(d.edges[*e].order, 2);
    EXPECT_EQ(d.nodes[t].component.homogeneity, 2);
  }
}

TEST(Diagram, EdgesHavePositiveOrder) {
  for (auto spec : {catalog_entry(Family::Grassmannian, 3), catalog_entry(Family::LagrangeanContact, 2),
                    catalog_entry(Family::QuaternionicContact, 1), parse_structure("B3:2")}) {
    GradedLieAlgebra g(spec);
    DiagramOptions all;
    all.all_edges = true;
    auto d = build_bgg_diagram(g);
    auto e = build_bgg_diagram(g, all);
    EXPECT_GE(e.edges.size(), d.edges.size());
    for (const auto& edge : e.edges) {
      EXPECT_GT(edge.order, 0);
      EXPECT_EQ(edge.order,
                e.nodes[edge.target].component.homogeneity - e.nodes[edge.source].component.homogeneity);
      EXPECT_EQ(e.nodes[edge.target].degree, e.nodes[edge.source].degree + 1);
      EXPECT_EQ(edge.standard, d.find_edge(edge.source, edge.target).has_value());
    }
  }
}

TEST(Diagram, GridLabelsFillTheShape) {
  GradedLieAlgebra g(catalog_entry(Family::Grassmannian, 3));
  auto d = build_bgg_diagram(g);
  std::set<GridLabel> seen;
  for (const auto& n : d.nodes) {
    ASSERT_TRUE(n.grid_label);
    EXPECT_LE(n.grid_label->first, n.grid_label->second);
    EXPECT_LE(n.grid_label->second, 3);
    EXPECT_EQ(n.grid_label->first + n.grid_label->second, n.degree);
    EXPECT_TRUE(seen.insert(*n.grid_label).second);
  }
  EXPECT_EQ(seen.size(), 10u);
}

TEST(Diagram, StatedOrders) {
  auto gr = build_bgg_diagram(GradedLieAlgebra(catalog_entry(Family::Grassmannian, 3)));
  EXPECT_EQ(order_between(gr, {0, 0}, {0, 1}), 1);
  EXPECT_EQ(order_between(gr, {0, 1}, {0, 2}), 1);
  EXPECT_EQ(order_between(gr, {0, 2}, {0, 3}), 2);
  EXPECT_EQ(order_between(gr, {0, 1}, {1, 1}), 2);
  auto lc = build_bgg_diagram(GradedLieAlgebra(catalog_entry(Family::LagrangeanContact, 2)));
  EXPECT_EQ(order_between(lc, {0, 0}, {0, 1}), 2);
  EXPECT_EQ(order_between(lc, {0, 0}, {1, 0}), 2);
  EXPECT_EQ(order_between(lc, {0, 1}, {0, 2}), 1);
}

TEST(Classification, TorsionAndCurvature) {
  auto kinds = [](const BggDiagram& d) {
    std::multiset<std::pair<int, bool>> out;
    for (const auto& h : classify_torsion_curvature(d)) out.insert({h.homogeneity, h.torsion});
    return out;
  };
  auto gr3 = build_bgg_diagram(GradedLieAlgebra(catalog_entry(Family::Grassmannian, 3)));
  EXPECT_EQ(kinds(gr3), (std::multiset<std::pair<int, bool>>{{1, true}, {2, false}}));
  auto gr2 = build_bgg_diagram(GradedLieAlgebra(catalog_entry(Family::Grassmannian, 2)));
  EXPECT_EQ(kinds(gr2), (std::multiset<std::pair<int, bool>>{{2, false}, {2, false}}));
  auto lc = build_bgg_diagram(GradedLieAlgebra(catalog_entry(Family::LagrangeanContact, 2)));
  EXPECT_TRUE(lc.nodes[*lc.find({2, 0})].component.torsion);
  EXPECT_TRUE(lc.nodes[*lc.find({0, 2})].component.torsion);
  EXPECT_FALSE(lc.nodes[*lc.find({1, 1})].component.torsion);
}

TEST(Classification, OneGradedTorsionIsHomogeneityOne) {
  for (auto spec : {catalog_entry(Family::Projective, 3), catalog_entry(Family::Grassmannian, 2),
                    catalog_entry(Family::Grassmannian, 4), catalog_entry(Family::Quaternionic, 2),
                    parse_structure("B3:1"), parse_structure("D4:1")}) {
    GradedLieAlgebra g(spec);
    ASSERT_EQ(g.depth(), 1);
    DiagramOptions opt;
    opt.max_degree = 2;
    for (const auto& h : classify_torsion_curvature(build_bgg_diagram(g, opt))) {
      EXPECT_TRUE(h.homogeneity == 1 || h.homogeneity == 2) << spec.name;
      EXPECT_EQ(h.torsion, h.homogeneity == 1) << spec.name;
    }
  }
}

TEST(H1, NonPositivity) {
  auto proj = h1_nonpositivity(GradedLieAlgebra(parse_structure("A2:1")));
  EXPECT_FALSE(proj.nonpositive);
  ASSERT_TRUE(proj.witness);
  EXPECT_EQ(proj.witness->homogeneity, 1);
  EXPECT_FALSE(h1_nonpositivity(GradedLieAlgebra(parse_structure("C3:1"))).nonpositive);
  for (const char* s : {"A3:2", "A5:2", "C4:2", "A3:1,3"}) {
    auto v = h1_nonpositivity(GradedLieAlgebra(parse_structure(s)));
    EXPECT_TRUE(v.nonpositive) << s;
    EXPECT_FALSE(v.witness) << s;
  }
}

TEST(Regularity, ForcedComponents) {
  auto qc2 = regularity_forced_components(GradedLieAlgebra(catalog_entry(Family::QuaternionicContact, 2)));
  ASSERT_EQ(qc2.size(), 1u);
  EXPECT_EQ(qc2[0].homogeneity, 0);
  EXPECT_TRUE(qc2[0].torsion);
  EXPECT_TRUE(regularity_forced_components(GradedLieAlgebra(catalog_entry(Family::QuaternionicContact, 1))).empty());
  EXPECT_TRUE(regularity_forced_components(GradedLieAlgebra(catalog_entry(Family::LagrangeanContact, 2))).empty());
  EXPECT_THROW(regularity_forced_components(GradedLieAlgebra(catalog_entry(Family::Grassmannian, 3))),
               std::invalid_argument);
}

TEST(Folding, CrPairsComponents) {
  GradedLieAlgebra g(catalog_entry(Family::CR, 2));
  auto d = build_bgg_diagram(g);
  auto f = fold(d, g);
  ASSERT_EQ(f.nodes_in_degree(2).size(), 2u);
  EXPECT_EQ(f.nodes_in_degree(0).size(), 1u);
  std::size_t members = 0;
  for (const auto& n : f.nodes) members += n.members.size();
  EXPECT_EQ(members, d.nodes.size());
  // Without the involution nothing is paired.
  GradedLieAlgebra lc(catalog_entry(Family::LagrangeanContact, 2));
  auto dl = build_bgg_diagram(lc);
  EXPECT_EQ(fold(dl, lc).nodes.size(), dl.nodes.size());
}

TEST(Deformation, FamilyReportsPass) {
  for (auto spec : {catalog_entry(Family::Grassmannian, 2), catalog_entry(Family::Grassmannian, 3),
                    catalog_entry(Family::Quaternionic, 1), catalog_entry(Family::Quaternionic, 2),
                    catalog_entry(Family::LagrangeanContact, 2), catalog_entry(Family::LagrangeanContact, 3),
                    catalog_entry(Family::CR, 2), catalog_entry(Family::CR, 3),
                    catalog_entry(Family::QuaternionicContact, 1), catalog_entry(Family::QuaternionicContact, 2)}) {
    auto r = deformation_subcomplex(spec, hw_only());
    for (const auto& c : r.claims)
      EXPECT_TRUE(c.pass) << spec.name << " " << c.name << " expected " << c.expected.dump() << " computed "
                          << c.computed.dump();
    EXPECT_FALSE(r.claims.empty());
  }
}

// The harmonic curvature claims are made for n >= 2 only.
TEST(Deformation, ThreeDimensionalContactCases) {
  for (auto spec : {catalog_entry(Family::LagrangeanContact, 1), catalog_entry(Family::CR, 1)}) {
    auto r = deformation_subcomplex(spec, hw_only());
    EXPECT_TRUE(r.pass()) << spec.name;
    for (const auto& c : r.claims) EXPECT_NE(c.name, "h2_count") << spec.name;
  }
  GradedLieAlgebra g(catalog_entry(Family::LagrangeanContact, 1));
  DiagramOptions opt;
  opt.max_degree = 2;
  opt.homology = hw_only();
  EXPECT_EQ(build_bgg_diagram(g, opt).nodes_in_degree(2).size(), 2u);
}

// The overload taking precomputed homology gives the same diagram.
TEST(Diagram, FromPrecomputedHomology) {
  GradedLieAlgebra g(catalog_entry(Family::LagrangeanContact, 2));
  homology::ChainComplex cc(g);
  auto direct = build_bgg_diagram(g);
  auto reused = build_bgg_diagram(g, homology::homology_range(cc, 0, cc.max_degree()));
  EXPECT_EQ(to_dot(direct), to_dot(reused));
  EXPECT_EQ(to_json(direct), to_json(reused));
}

TEST(Deformation, QuaternionicContactRow) {
  auto r = deformation_subcomplex(catalog_entry(Family::QuaternionicContact, 2), hw_only());
  ASSERT_EQ(r.row_edges.size(), 5u);
  for (std::size_t i = 0; i < r.row_edges.size(); ++i) {
    ASSERT_TRUE(r.row_edges[i].order);
    EXPECT_EQ(*r.row_edges[i].order, i == 2 ? 2 : 1);
  }
  ASSERT_EQ(r.regularity_forced.size(), 1u);
  EXPECT_EQ(r.regularity_forced[0].grid_label, GridLabel(2, 0));
}

TEST(Deformation, UnsupportedFamily) {
  EXPECT_THROW(deformation_subcomplex(catalog_entry(Family::Projective, 3)), UnsupportedFamily);
  EXPECT_THROW(deformation_subcomplex(parse_structure("B3:1")), UnsupportedFamily);
}

TEST(Output, DotAndJson) {
  GradedLieAlgebra g(parse_structure("A3:2"));
  auto d = build_bgg_diagram(g);
  const std::string dot = to_dot(d);
  EXPECT_EQ(dot.rfind("digraph bgg {", 0), 0u);
  EXPECT_NE(dot.find("H_0: (1,-2,1), dim 4, hom -1, T"), std::string::npos) << dot;
  EXPECT_NE(dot.find("label=\"2\""), std::string::npos);
  auto j = to_json(d);
  EXPECT_EQ(j["nodes"].size(), d.nodes.size());
  EXPECT_EQ(j["edges"].size(), d.edges.size());
  auto r = to_json(deformation_subcomplex(catalog_entry(Family::Grassmannian, 2)));
  for (const char* key : {"structure", "nodes", "edges", "claims"}) EXPECT_TRUE(r.contains(key)) << key;
  for (const auto& c : r["claims"])
    for (const char* key : {"quote", "expected", "computed", "pass"}) EXPECT_TRUE(c.contains(key)) << key;
}
