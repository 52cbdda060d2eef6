#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bggkit/homology/chain_complex.hpp"
#include "bggkit/rootsys/weyl.hpp"

namespace bggkit::homology {

struct HomologyComponent {
  int degree = 0;
  Weight highest_weight;
  exactla::Integer dim;
  int homogeneity = 0;
  bool torsion = false;
  ChainVec hw_vector;  // harmonic, annihilated by the Levi raising operators
  std::vector<ChainVec> harmonic_basis;  // filled by generate_component
  std::optional<std::pair<int, int>> grid_label;
  long oracle_index = -1;  // position in the matching kostant_oracle output
};

struct DegreeHomology {
  int degree = 0;
  bool full = false;  // every weight block processed (otherwise Levi-dominant ones only)
  std::vector<HomologyComponent> components;
  // Totals over processed blocks; only meaningful when full.
  std::size_t chain_dim = 0;
  std::size_t rank_codiff = 0;       // rank of d*_k (= rank of its adjoint into C_k)
  std::size_t rank_codiff_next = 0;  // rank of d*_{k+1}, i.e. dim im d* inside C_k
  std::size_t harmonic_dim = 0;
  bool hodge_additive = true;  // harmonic + im d + im d* = C_k in every block
  bool component_dims_match = true;  // sum of Weyl dimensions = harmonic_dim
  std::size_t blocks = 0;
};

struct HomologyOptions {
  enum class Mode { Auto, Full, HighestWeightOnly };
  Mode mode = Mode::Auto;
  bool parallel = true;
  std::size_t full_limit = 120000;  // Auto switches to highest-weight mode above this chain dim
};

// Irreducible g_0-components of H_k.  At each Levi-dominant weight mu the
// Levi-singular chains S_k(mu) give the multiplicity
//   dim ker(d* on S_k(mu)) - rank d*(S_{k+1}(mu)),
// and the harmonic highest-weight vectors are the cycles in S_k(mu) orthogonal
// to d*(S_{k+1}(mu)) for the trace inner product.  In full mode every weight
// block is also reduced densely (harmonic = ker d* ∩ ker d) for the Hodge and
// dimension checks.
DegreeHomology homology_components(const ChainComplex& cc, int k, const HomologyOptions& opt = {});

// Degrees lo..hi at once; each S_k(mu) is reduced only once.
std::vector<DegreeHomology> homology_range(const ChainComplex& cc, int lo, int hi, const HomologyOptions& opt = {});

// Spans the component through repeated Levi lowering; fills harmonic_basis.
void generate_component(const ChainComplex& cc, HomologyComponent& comp);

// Grading-element eigenvalue, or nullopt for a mixed vector.
std::optional<int> homogeneity_of(const ChainComplex& cc, const ChainVec& v);

struct KostantPrediction {
  rootsys::WeylElement w;
  Weight affine_weight;   // w . lambda_adjoint
  Weight highest_weight;  // -w0_levi(w . lambda): highest weight of the dual, matching homology
  int homogeneity = 0;
  exactla::Integer dim;
};

std::vector<KostantPrediction> kostant_oracle(const GradedLieAlgebra& g, int k);

struct OracleComparison {
  bool agree = false;
  std::vector<Weight> computed;
  std::vector<Weight> predicted;
  std::string diagnostics;
};

// Multiset comparison of highest weights; on agreement sets oracle_index on
// each component.
OracleComparison attach_oracle(DegreeHomology& h, const std::vector<KostantPrediction>& preds);

nlohmann::json to_json(const HomologyComponent& c);
nlohmann::json to_json(const DegreeHomology& h);

}  // namespace bggkit::homology
