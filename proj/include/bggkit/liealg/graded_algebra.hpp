#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bggkit/exactla/qmatrix.hpp"
#include "bggkit/rootsys/root_system.hpp"

namespace bggkit::liealg {

using exactla::QVector;
using exactla::Rational;
using rootsys::NodeSet;
using rootsys::RootCoords;
using rootsys::Weight;

// Sparse square matrix: a list of (row, col, value) triples.
struct SparseMatrix {
  struct Entry {
    int row;
    int col;
    Rational value;
  };
  int size = 0;
  std::vector<Entry> entries;

  exactla::QMatrix to_dense() const;
};

// Sparse coordinate vector over the algebra basis.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

struct BasisElement {
  enum class Kind { Root, Cartan };
  Kind kind;
  RootCoords root;  // signed simple-root coordinates; zero for Cartan elements
  Weight weight;    // fundamental coordinates
  int grade;
  SparseMatrix matrix;
  Rational norm2;   // tr(b b^T)
  std::size_t transpose;  // index of the basis element proportional to b^T (b^T equals it)
};

enum class Family {
  Raw,
  Projective,
  ContactProjective,
  Grassmannian,
  Quaternionic,
  LagrangeanContact,
  CR,
  QuaternionicContact,
};

struct StructureSpec {
  std::string name;  // canonical identifier, e.g. "grassmannian:3" or "A3:2"
  Family family = Family::Raw;
  rootsys::Series series = rootsys::Series::A;
  int rank = 1;
  NodeSet crossed;
  int n = 0;  // family parameter (0 for raw specs)
  bool involution = false;  // CR: pair components under the diagram flip
};

class UnknownStructure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses "family:n" or a raw "A3:2" / "C4:1,2" string.
StructureSpec parse_structure(const std::string& text);
StructureSpec catalog_entry(Family family, int n);
std::string family_name(Family family);
std::vector<std::string> catalog_names();

class GradedLieAlgebra {
 public:
  explicit GradedLieAlgebra(const StructureSpec& spec);
  GradedLieAlgebra(rootsys::Series series, int rank, NodeSet crossed);

  const StructureSpec& spec() const { return spec_; }
  const rootsys::RootSystem& roots() const { return *roots_; }
  const NodeSet& crossed() const { return spec_.crossed; }
  int depth() const { return depth_; }
  int matrix_size() const { return matrix_size_; }

  std::size_t dim() const { return basis_.size(); }
  const BasisElement& basis(std::size_t i) const { return basis_[i]; }
  const std::vector<BasisElement>& basis() const { return basis_; }

  // Basis indices with the given grade, in basis order.
  const std::vector<std::size_t>& grade_indices(int g) const;
  std::vector<std::size_t> positive_indices() const;  // p_+
  std::vector<std::size_t> negative_indices() const;  // g_-
  std::vector<std::pair<int, std::size_t>> grading_summand_dims() const;

  // Index of the root vector for a signed root, or -1.
  long root_vector_index(const RootCoords& signed_root) const;

  // [b_i, b_j] expanded in the basis.
  const SparseVec& bracket_basis(std::size_t i, std::size_t j) const {
    return table_[i * basis_.size() + j];
  }
  QVector bracket(const QVector& x, const QVector& y) const;

  QVector coordinates(const exactla::QMatrix& m) const;
  exactla::QMatrix to_matrix(const QVector& x) const;

  // tr(x y): a fixed multiple of the Killing form (see killing_constant).
  Rational trace_pairing(const QVector& x, const QVector& y) const;
  Rational killing_pairing(const QVector& x, const QVector& y) const;
  Rational killing_constant() const;

  // Grading element E: alpha_i(E) = 1 on crossed nodes and 0 elsewhere.
  const QVector& grading_element() const { return grading_element_; }

  // Root vectors of the simple roots of the uncrossed subsystem, and their
  // transposes (raising / lowering operators of the Levi factor).
  std::vector<std::size_t> levi_raising() const;
  std::vector<std::size_t> levi_lowering() const;

  // Diagram involution on nodes (CR pairing); identity unless spec().involution.
  int flip_node(int node) const;

 private:
  void build();
  void build_basis();
  void build_table();

  StructureSpec spec_;
  std::shared_ptr<rootsys::RootSystem> roots_;
  int depth_ = 0;
  int matrix_size_ = 0;
  std::vector<BasisElement> basis_;
  std::vector<std::vector<std::size_t>> by_grade_;  // offset by depth_
  std::vector<SparseVec> table_;
  std::vector<std::pair<int, int>> pivot_;  // per root basis element
  std::vector<std::size_t> cartan_indices_;
  QVector grading_element_;
};

}  // namespace bggkit::liealg
