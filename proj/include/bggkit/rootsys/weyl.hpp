#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "bggkit/rootsys/root_system.hpp"

namespace bggkit::rootsys {

// Element of the Weyl group carried by a reduced word and its matrix on the
// root lattice.  The word (i_1, ..., i_l) means s_{i_1} ... s_{i_l}; letters are
// 1-based node labels.
struct WeylElement {
  std::vector<int> word;
  std::vector<std::vector<int>> matrix;          // action on simple-root coordinates
  std::vector<std::vector<int>> inverse_matrix;  // action of the inverse

  std::size_t length() const { return word.size(); }
  RootCoords apply(const RootCoords& r) const;
  RootCoords apply_inverse(const RootCoords& r) const;
  std::string str() const;
};

WeylElement identity_element(const RootSystem& rs);
WeylElement multiply_simple_right(const RootSystem& rs, const WeylElement& w, int node);

// Positive roots sent to negative roots by w^{-1}; |inversions| = length.
std::vector<RootCoords> inversion_set(const RootSystem& rs, const WeylElement& w);

// All w of length <= up_to_length such that w^{-1} maps every positive root of
// the uncrossed subsystem to a positive root, in order of length and then
// discovery.  A negative up_to_length means no bound.
std::vector<WeylElement> minimal_coset_reps(const RootSystem& rs, const NodeSet& crossed,
                                            int up_to_length = -1);

// w(lambda + rho) - rho, applied reflection by reflection along the word.
Weight affine_weyl_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda);
Weight linear_weyl_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda);

// Longest element of the Weyl group of a node subset (as a word acting on weights).
WeylElement longest_element(const RootSystem& rs, const NodeSet& nodes);

// Pairs (i, j) of indices into `reps` with reps[j] = s_beta reps[i] for a
// positive root beta and length(reps[j]) = length(reps[i]) + 1.
std::vector<std::pair<std::size_t, std::size_t>> bruhat_covers(const RootSystem& rs,
                                                               const std::vector<WeylElement>& reps);

// Length generating function coefficients of a list of elements.
std::vector<std::size_t> length_distribution(const std::vector<WeylElement>& elems);

}  // namespace bggkit::rootsys
