#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bggkit/bggpattern/deformation.hpp"
#include "bggkit/flatmodel/model.hpp"

namespace bggkit::flatmodel {

// Covector on g_-, as coefficients of the linear form <xi, x> = sum xi_a x_a.
using Covector = std::vector<Rational>;

// sigma_xi(D)(v) = (1/r!) D(<xi,x>^r v)|_0 on one pair of components, stored
// as the images of the probes x^m v / m! for |m| = r, so that
// sigma_xi = sum_m xi^m T_m.
struct SymbolBlock {
  int degree = 0;
  int order = 0;
  std::size_t from = 0;  // component indices in FiberAlgebra::components(degree)
  std::size_t to = 0;    // and components(degree + 1)
  std::vector<Monomial> monomials;
  std::vector<QMatrix> tables;  // dim(to) x dim(from)
  // Probes of degree order - 1 hit the target at the origin: with weighted
  // degree below the order (a genuine mismatch), or only through coordinates
  // of weight >= 2 (expected when the order is a weighted one).
  bool lower_order_leading = false;
  bool weighted_lower_terms = false;
};

SymbolBlock symbol_block(const CartanModel& flat, int k, std::size_t from, std::size_t to, int order);
QMatrix evaluate(const SymbolBlock& b, const Covector& xi);

// Direct evaluation of the defining formula, without tables.
QMatrix principal_symbol(const CartanModel& flat, int k, std::size_t from, std::size_t to, int order,
                         const Covector& xi);

struct SymbolTrial {
  Covector xi;
  bool composites_vanish = true;
  bool exact = true;
  std::vector<std::size_t> ranks;        // rank of sigma_j for each step
  std::vector<std::size_t> failing_nodes;
  std::size_t orbit_dim = 0;  // dimension of the G_0-orbit of xi
};

struct SymbolExactnessReport {
  std::string structure;
  std::uint64_t seed = 0;
  std::vector<std::vector<bggpattern::GridLabel>> row;
  std::vector<std::size_t> node_dims;
  std::vector<SymbolTrial> trials;  // generic covectors only
  std::size_t generic_orbit_dim = 0;
  // Draws on a smaller G_0-orbit: evaluated and reported, not counted.  For a
  // |1|-grading of split type these include the real points of the
  // characteristic variety, which the compact-type real form does not have.
  std::vector<SymbolTrial> nongeneric;
  bool all_exact = true;  // over the generic trials
  bool composites_vanish = true;
  std::optional<SymbolTrial> witness;  // first generic covector where exactness fails
  std::vector<std::string> findings;
};

// Symbols of the deformation row on the flat model, at `trials` random
// nonzero integer covectors lying on a G_0-orbit of maximal dimension.
std::size_t orbit_dimension(const FiberAlgebra& fa, const Covector& xi);

SymbolExactnessReport symbol_exactness(const liealg::StructureSpec& spec, int trials, std::uint64_t seed);

nlohmann::json to_json(const SymbolExactnessReport& r);

}  // namespace bggkit::flatmodel
