#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bggkit/homology/homology.hpp"

namespace bggkit::bggpattern {

using GridLabel = std::pair<int, int>;

struct BggNode {
  int degree = 0;
  homology::HomologyComponent component;
  rootsys::WeylElement w;  // coset representative from the Kostant match
  std::optional<GridLabel> grid_label;
};

struct BggEdge {
  std::size_t source = 0;  // degree k
  std::size_t target = 0;  // degree k+1
  int order = 0;           // homogeneity(target) - homogeneity(source)
  bool standard = false;   // Bruhat cover in W^p; otherwise the order is only predicted
};

struct DiagramOptions {
  bool all_edges = false;  // add every positive-order pair in adjacent degrees
  int max_degree = -1;     // -1: all degrees
  homology::HomologyOptions homology;
};

struct BggDiagram {
  liealg::StructureSpec spec;
  int depth = 0;
  int max_degree = 0;
  std::vector<BggNode> nodes;
  std::vector<BggEdge> edges;
  bool oracle_agrees = true;
  std::string diagnostics;

  std::vector<std::size_t> nodes_in_degree(int k) const;
  std::optional<std::size_t> find(const GridLabel& label) const;
  std::optional<std::size_t> find_edge(std::size_t source, std::size_t target) const;
};

// Nodes are the irreducible homology components in every degree; edges are the
// Bruhat covers between their Kostant representatives.
BggDiagram build_bgg_diagram(const liealg::GradedLieAlgebra& g, const DiagramOptions& opt = {});
// Same, from homology already computed for degrees 0..degrees.size()-1.
BggDiagram build_bgg_diagram(const liealg::GradedLieAlgebra& g, std::vector<homology::DegreeHomology> degrees,
                             bool all_edges = false);

// (p, q) label of the component attached to w, for the families whose
// patterns carry one; nullopt outside the labelled range.
std::optional<GridLabel> grid_label(const liealg::StructureSpec& spec, const rootsys::RootSystem& rs,
                                    const rootsys::WeylElement& w);

struct H2Class {
  std::size_t node = 0;
  bool torsion = false;
  int homogeneity = 0;
};

// Torsion iff the harmonic representative has a nonzero part with values in
// negative grades.  The projection is g_0-equivariant, so the highest-weight
// vector decides for the whole component.
std::vector<H2Class> classify_torsion_curvature(const BggDiagram& d);

struct H1Verdict {
  bool nonpositive = true;
  std::optional<homology::HomologyComponent> witness;
};

H1Verdict h1_nonpositivity(const liealg::GradedLieAlgebra& g);

// H_2 components in homogeneity <= 0; their vanishing is forced on regular
// normal geometries.  Throws std::invalid_argument for |1|-gradings, where
// regularity is automatic.
std::vector<homology::HomologyComponent> regularity_forced_components(const liealg::GradedLieAlgebra& g);

// Involution folding: components exchanged by the diagram flip become one
// real node.
struct FoldedNode {
  int degree = 0;
  std::vector<std::size_t> members;  // one or two diagram nodes
  std::optional<GridLabel> grid_label;  // (max, min) of the member labels
  int homogeneity = 0;
  bool torsion = false;
};

struct FoldedEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  int order = 0;
};

struct FoldedDiagram {
  std::vector<FoldedNode> nodes;
  std::vector<FoldedEdge> edges;

  std::vector<std::size_t> nodes_in_degree(int k) const;
  std::optional<std::size_t> find(const GridLabel& label) const;
};

FoldedDiagram fold(const BggDiagram& d, const liealg::GradedLieAlgebra& g);

std::string to_dot(const BggDiagram& d);
nlohmann::json to_json(const BggDiagram& d);
// Folded nodes list their member nodes of `d`.
std::string to_dot(const FoldedDiagram& f, const BggDiagram& d);
nlohmann::json to_json(const FoldedDiagram& f);

}  // namespace bggkit::bggpattern
