#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "bggkit/exactla/qmatrix.hpp"
#include "bggkit/liealg/graded_algebra.hpp"

namespace bggkit::homology {

using exactla::QVector;
using exactla::Rational;
using liealg::GradedLieAlgebra;
using rootsys::RootCoords;
using rootsys::Weight;

// Basis element Z_A (x) b_i of Lambda^k p_+ (x) g.  Bit a of `mask` selects the
// a-th p_+ basis vector; the wedge is taken in increasing index order.
struct Chain {
  std::uint32_t mask = 0;
  std::uint32_t value = 0;

  bool operator==(const Chain&) const = default;
};

// Lexicographic order on the sorted index tuples, then by value index.
bool operator<(const Chain& a, const Chain& b);

int degree(const Chain& c);

using ChainVec = std::map<Chain, Rational>;
using Terms = std::vector<std::pair<Chain, Rational>>;

void add_to(ChainVec& v, const Chain& c, const Rational& x);

class ChainComplex {
 public:
  explicit ChainComplex(const GradedLieAlgebra& g);

  const GradedLieAlgebra& algebra() const { return g_; }
  // p_+ basis as algebra basis indices, in algebra basis order.
  const std::vector<std::size_t>& pplus() const { return pplus_; }
  int pplus_dim() const { return static_cast<int>(pplus_.size()); }
  int max_degree() const { return pplus_dim(); }

  // C(dim p_+, k) * dim g.
  std::size_t chain_dim(int k) const;

  RootCoords mask_root(std::uint32_t mask) const;
  RootCoords chain_root(const Chain& c) const;
  Weight chain_weight(const Chain& c) const;
  int homogeneity(const Chain& c) const;
  // Product of trace norms |Z_a|^2 and |b_i|^2 (the basis is orthogonal).
  Rational norm2(const Chain& c) const;

  // Homology boundary:
  //   d*(Z_1..Z_k (x) v) = sum_i (-1)^i Z_1..^i..Z_k (x) [Z_i, v]
  //                      + sum_{i<j} (-1)^{i+j} [Z_i, Z_j] Z_1..^i..^j..Z_k (x) v
  // with 1-based i, j.
  Terms codiff(const Chain& c) const;
  ChainVec codiff(const ChainVec& v) const;

  // Action of a grade-0 basis element on a chain (derivation on wedges and
  // adjoint on values).
  Terms act(std::size_t g_index, const Chain& c) const;
  ChainVec act(std::size_t g_index, const ChainVec& v) const;

  // All chains of degree k, ordered.
  std::vector<Chain> degree_basis(int k) const;
  // Chains of degree k with total root `weight`, ordered.
  std::vector<Chain> block(int k, const RootCoords& weight) const;
  // Distinct weights (root coordinates) occurring in degree k.
  std::vector<RootCoords> weights(int k) const;

  // Label of the g_0-invariant summand containing a chain: how many wedge
  // factors come from each crossed-coefficient piece of p_+, then the
  // crossed coefficients of the value.  g_0 preserves it.
  std::vector<int> signature(const Chain& c) const;

  // Matrix of d* from the span of `src` (degree k) to the span of `dst`
  // (degree k-1).  Every image term must land inside `dst`.
  exactla::QMatrix codiff_matrix(const std::vector<Chain>& src, const std::vector<Chain>& dst) const;
  // Matrix of the action of g_index from `src` into `dst`.
  exactla::QMatrix action_matrix(std::size_t g_index, const std::vector<Chain>& src,
                                 const std::vector<Chain>& dst) const;

  // Sparse d*_k on the full degree basis (rows: degree k-1, columns: degree k).
  exactla::SparseQMatrix codifferential(int k) const;

 private:

  const GradedLieAlgebra& g_;
  std::vector<std::size_t> pplus_;
  std::vector<int> position_;  // algebra index -> p_+ position or -1
  std::vector<RootCoords> value_root_;
  std::vector<int> piece_;  // p_+ position -> piece id
  int pieces_ = 0;
  // Per degree: wedge masks grouped by total root, built once at construction.
  std::vector<std::map<RootCoords, std::vector<std::uint32_t>>> masks_;
};

}  // namespace bggkit::homology
