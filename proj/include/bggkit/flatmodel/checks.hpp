#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "bggkit/flatmodel/symbols.hpp"

namespace bggkit::flatmodel {

struct CheckReport {
  std::string check;
  std::string structure;
  std::uint64_t seed = 0;
  int truncation = 0;
  bool pass = false;
  nlohmann::json witness;  // null unless something failed (or a non-exactness witness)
  nlohmann::json details;
};

nlohmann::json to_json(const CheckReport& r);

// Random data with small integer coefficients.
// `terms` monomials of polynomial degree in [lo, hi], each on a random coform
// and value basis vector.
PolyForm random_form(const FiberAlgebra& fa, int degree, int lo, int hi, int terms, std::mt19937_64& rng);
// Harmonic-valued frame k-form of polynomial degree <= max_degree.
PolyForm random_harmonic_section(const FiberAlgebra& fa, int k, int max_degree, std::mt19937_64& rng);

// D_{k+1} o D_k = 0 on the flat model for k = 0, 1; one report per trial,
// trial t using seed + t.
std::vector<CheckReport> check_flat_complex(const liealg::StructureSpec& spec, int trials, std::uint64_t seed,
                                            int truncation, int max_poly_degree = 4);

// Both first-order formulas on perturbed bases, each against an independent
// computation: curvature change under omega + tau phi, and the pullback of
// omega along the flow of a section s.
std::vector<CheckReport> check_two_routes(const liealg::StructureSpec& spec, int trials, std::uint64_t seed,
                                          int truncation);

// d^nabla kappa = 0 on perturbed bases.
std::vector<CheckReport> check_bianchi(const liealg::StructureSpec& spec, int trials, std::uint64_t seed,
                                       int truncation);

// Symbol exactness of the deformation row.  Quaternionic rows must be exact
// at every covector; lagrangean-contact rows must produce a witness of
// non-exactness; elsewhere only vanishing composites are required.
CheckReport check_symbols(const liealg::StructureSpec& spec, int trials, std::uint64_t seed);

}  // namespace bggkit::flatmodel
