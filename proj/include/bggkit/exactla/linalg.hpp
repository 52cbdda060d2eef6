#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bggkit/exactla/qmatrix.hpp"

namespace bggkit::exactla {

// Fraction-free (Bareiss) row echelon form of an integer-scaled copy of a
// rational matrix.  Pivots are chosen in the leftmost available column and,
// within it, at the smallest row index; the output is therefore a
// deterministic function of the input.
struct Echelon {
  std::vector<std::vector<Integer>> rows;  // only the nonzero (pivot) rows
  std::vector<std::size_t> pivot_columns;
  std::size_t cols = 0;

  std::size_t rank() const { return pivot_columns.size(); }
};

Echelon bareiss_echelon(const QMatrix& m);

std::size_t rank(const QMatrix& m);

// Basis of {v : m v = 0}.  One vector per non-pivot column, normalized so the
// free coordinate equals 1 and the other free coordinates vanish.
std::vector<QVector> kernel_basis(const QMatrix& m);

// x with m x = b, free variables set to zero; nullopt when b is not in the
// column space of m.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

// Sparse elimination over Q for very sparse inputs.  Rows are bucketed by
// leading column and the pivot in each column is the row with the fewest
// nonzeros, which keeps fill-in low.  Same contracts as the dense versions;
// the kernel basis is normalized the same way but pivot choice may differ.
// kernel_basis eliminates modulo a 61-bit prime, lifts by rational
// reconstruction and checks every lifted vector exactly, falling back to
// elimination over Q when any step fails.
std::size_t rank(const SparseQMatrix& m);
std::vector<QVector> kernel_basis(const SparseQMatrix& m);
std::vector<QVector> kernel_basis_exact(const SparseQMatrix& m);

class LinearDependence : public std::invalid_argument {
 public:
  LinearDependence(std::size_t index, const std::string& what)
      : std::invalid_argument(what), index_(index) {}
  // First vector that lies in the span of its predecessors.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Standard basis vectors completing the independent family `sub` to a basis
// of Q^ambient_dim.  Throws LinearDependence when `sub` is dependent.
std::vector<QVector> quotient_representatives(const std::vector<QVector>& sub,
                                              std::size_t ambient_dim);

// Basis of the column space, taken from the pivot columns of m.
std::vector<QVector> column_space_basis(const QMatrix& m);

// Basis of the intersection of two subspaces given by spanning columns.
std::vector<QVector> intersect_spans(const std::vector<QVector>& a,
                                     const std::vector<QVector>& b,
                                     std::size_t ambient_dim);

// Inverse of a square matrix; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& m);

// True when the symmetric matrix m is positive semidefinite (exact LDL^T with
// symmetric pivoting on the diagonal).
bool is_positive_semidefinite(const QMatrix& m);

}  // namespace bggkit::exactla
