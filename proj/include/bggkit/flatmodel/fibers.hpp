#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "bggkit/exactla/qmatrix.hpp"
#include "bggkit/flatmodel/polyform.hpp"
#include "bggkit/homology/homology.hpp"

namespace bggkit::flatmodel {

using exactla::QMatrix;
using exactla::QVector;
using liealg::GradedLieAlgebra;

// Element of Lambda^k g_-^* (x) g in frame coordinates: e^A (x) b_v, where
// e^a is dual to the a-th g_- basis vector.
using FiberVec = std::map<FormKey, Rational>;

struct HarmonicComponent {
  homology::HomologyComponent info;
  std::vector<std::size_t> basis;  // indices into harmonic_basis(degree)
};

// Pointwise algebra on the fibers: Kostant codifferential, the Lie algebra
// differential of g_- (lowest homogeneous part of d^nabla), harmonic
// projection and the inverse Q0 of d* d on im d*.  The identification
// g_-^* = p_+ uses the trace form, e^a <-> X_a^T / tr(X_a X_a^T).
class FiberAlgebra {
 public:
  FiberAlgebra(const GradedLieAlgebra& g, int max_degree);

  const GradedLieAlgebra& algebra() const { return g_; }
  const homology::ChainComplex& chains() const { return cc_; }
  int vars() const { return static_cast<int>(neg_.size()); }
  int max_degree() const { return max_degree_; }
  std::size_t negative_index(int a) const { return neg_[a]; }
  int var_weight(int a) const { return weight_[a]; }
  // g_- position of an algebra basis index, or -1.
  int position(std::size_t basis_index) const;

  // Value grade plus the weights of the coform factors.
  int homogeneity(const FormKey& k) const;

  FiberVec codiff(const FiberVec& v) const;
  FiberVec cobound(const FiberVec& v) const;
  FiberVec project_harmonic(const FiberVec& v) const;
  // Coordinates in harmonic_basis(k).
  QVector harmonic_coords(const FiberVec& v, int k) const;
  // Solves d* d psi = e with psi in im d*; e must lie in im d*.
  FiberVec q0(const FiberVec& e) const;

  const std::vector<FiberVec>& harmonic_basis(int k) const { return degree_data(k).basis; }
  const std::vector<HarmonicComponent>& components(int k) const { return degree_data(k).components; }

  homology::ChainVec to_chains(const FiberVec& v) const;
  FiberVec from_chains(const homology::ChainVec& v) const;

  // The same operators applied monomial by monomial to frame forms.
  PolyForm codiff(const PolyForm& f) const;
  PolyForm cobound(const PolyForm& f) const;
  PolyForm project_harmonic(const PolyForm& f) const;
  PolyForm q0(const PolyForm& f) const;
  // Smallest pointwise homogeneity of a term (kExact for zero).
  int min_homogeneity(const PolyForm& f) const;

 private:
  struct WeightBlock {
    std::vector<std::size_t> members;  // harmonic basis indices of this weight
    QMatrix gram_inverse;
  };
  struct DegreeData {
    std::vector<FiberVec> basis;
    std::vector<homology::ChainVec> chain_basis;
    std::vector<HarmonicComponent> components;
    std::map<rootsys::RootCoords, WeightBlock> blocks;
  };
  struct Q0Block {
    std::map<homology::Chain, std::size_t> index;
    std::vector<homology::Chain> chains;
    std::vector<std::size_t> rows;  // pivot rows used for the solve
    QMatrix solve;                  // |chains| x rank
  };

  const DegreeData& degree_data(int k) const;
  const Q0Block& q0_block(int k, const rootsys::RootCoords& mu) const;
  std::map<rootsys::RootCoords, homology::ChainVec> split_by_weight(const homology::ChainVec& v) const;
  Rational inner(const homology::ChainVec& a, const homology::ChainVec& b) const;

  const GradedLieAlgebra& g_;
  homology::ChainComplex cc_;
  int max_degree_;
  std::vector<std::size_t> neg_;
  std::vector<int> weight_;
  std::vector<int> to_pplus_;    // g_- position -> p_+ position of its transpose
  std::vector<int> from_pplus_;  // inverse
  std::vector<Rational> norm_;   // trace norms of the g_- basis
  std::vector<DegreeData> degrees_;
  mutable std::mutex q0_mutex_;
  mutable std::map<std::pair<int, rootsys::RootCoords>, std::unique_ptr<Q0Block>> q0_cache_;
};

}  // namespace bggkit::flatmodel
