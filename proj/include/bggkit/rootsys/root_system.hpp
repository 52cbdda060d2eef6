#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bggkit/exactla/rational.hpp"

namespace bggkit::rootsys {

enum class Series { A, B, C, D };

char series_letter(Series s);
Series parse_series(char c);

class UnsupportedRootSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integer vector in simple-root coordinates.
using RootCoords = std::vector<int>;

// Weight in fundamental-weight coordinates.
struct Weight {
  std::vector<std::int64_t> coords;

  bool operator==(const Weight&) const = default;
  auto operator<=>(const Weight&) const = default;
  std::string str() const;
};

// Node indices are 1-based everywhere in the public interface (Dynkin labels).
using NodeSet = std::set<int>;

class RootSystem {
 public:
  RootSystem(Series series, int rank);

  Series series() const { return series_; }
  int rank() const { return rank_; }
  std::string name() const;

  // cartan(i, j) = <alpha_i^vee, alpha_j>, 0-based.
  int cartan(int i, int j) const { return cartan_[i][j]; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }

  // Twice the symmetrizer: (alpha_i, alpha_j) = half_len2(i) * cartan(i, j).
  const exactla::Rational& half_length2(int i) const { return half_len2_[i]; }

  // Positive roots sorted by height, then lexicographically.
  const std::vector<RootCoords>& positive_roots() const { return positive_; }
  int root_index(const RootCoords& r) const;  // -1 when not a positive root
  bool is_root(const RootCoords& r) const;    // positive or negative

  const RootCoords& highest_root() const { return positive_.back(); }

  Weight root_to_weight(const RootCoords& r) const;
  // Exact conversion through the inverse Cartan matrix.
  std::vector<exactla::Rational> weight_to_root(const Weight& w) const;

  Weight rho() const;
  Weight simple_root_weight(int i) const;  // alpha_i in fundamental coords

  exactla::Rational inner(const RootCoords& a, const RootCoords& b) const;
  // (mu, alpha) for a weight and a root.
  exactla::Rational pair(const Weight& mu, const RootCoords& alpha) const;
  // <mu, alpha^vee>
  exactla::Rational coroot_pair(const Weight& mu, const RootCoords& alpha) const;

  // Grade of a root with respect to a crossing: sum of coefficients on crossed nodes.
  int grade(const RootCoords& r, const NodeSet& crossed) const;
  // Grade of a weight (eigenvalue of the grading element), exact.
  exactla::Rational grade(const Weight& w, const NodeSet& crossed) const;

  // Positive roots supported on the given nodes (a Levi subsystem).
  std::vector<RootCoords> positive_roots_on(const NodeSet& nodes) const;

  bool is_dominant(const Weight& w, const NodeSet& nodes) const;

 private:
  void build_cartan();
  void build_roots();

  Series series_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<exactla::Rational> half_len2_;
  std::vector<RootCoords> positive_;
  std::map<RootCoords, int> index_;
};

RootSystem build_root_system(Series series, int rank);

// Weyl dimension formula over the positive roots of `nodes` (all nodes when
// empty is not intended; pass the full node set for the whole algebra).
// Throws std::invalid_argument for a weight that is not dominant there.
exactla::Integer weyl_dimension(const RootSystem& rs, const Weight& lambda, const NodeSet& nodes);
exactla::Integer weyl_dimension(const RootSystem& rs, const Weight& lambda);

NodeSet all_nodes(const RootSystem& rs);
NodeSet complement(const RootSystem& rs, const NodeSet& nodes);

}  // namespace bggkit::rootsys
