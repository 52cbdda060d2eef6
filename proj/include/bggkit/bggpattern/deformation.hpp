#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bggkit/bggpattern/diagram.hpp"

namespace bggkit::bggpattern {

class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Claim {
  std::string name;
  std::string quote;
  nlohmann::json expected;
  nlohmann::json computed;
  bool pass = false;
};

struct RowEdge {
  GridLabel from;
  GridLabel to;
  std::optional<int> order;  // nullopt when the diagram has no such edge
};

struct DeformationComplexReport {
  std::string structure;
  std::vector<std::vector<GridLabel>> row;  // labels at each position of the subcomplex
  std::vector<RowEdge> row_edges;
  std::vector<H2Class> h2;
  H1Verdict h1;
  std::vector<homology::HomologyComponent> regularity_forced;
  std::vector<Claim> claims;

  bool pass() const;
};

// Reads the deformation subcomplex off the computed diagram and checks the
// expected node chain, edge orders, H_2 structure and shape for the family.
DeformationComplexReport deformation_subcomplex(const liealg::StructureSpec& spec,
                                                const homology::HomologyOptions& hopt = {});

// Same, on an already built diagram of `g`.
DeformationComplexReport deformation_subcomplex(const liealg::GradedLieAlgebra& g, const BggDiagram& d);

nlohmann::json to_json(const DeformationComplexReport& r);

}  // namespace bggkit::bggpattern
