#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bggkit/liealg/graded_algebra.hpp"

namespace bggkit::cli {

struct SuiteResult {
  bool pass = true;
  nlohmann::json report;
  nlohmann::json first_failure;  // null when everything passed
};

// Every catalog entry of rank <= max_rank, family by family.
std::vector<liealg::StructureSpec> catalog_up_to_rank(int max_rank);
// One entry per family at its smallest nontrivial parameter (n >= 2 for the
// contact families with a Legendrean or CR splitting).
std::vector<liealg::StructureSpec> smallest_catalog();

// Kostant oracle agreement, Euler characteristic, homogeneity purity in every
// degree; d* o d* = 0 and Hodge dimensions in the degrees small enough for
// full reduction; the family's stated claims when it has a deformation row.
SuiteResult algebraic_suite(const liealg::StructureSpec& spec, bool parallel = true);

// D o D = 0 on the flat model, both first-order deformation formulas and the
// Bianchi identity on perturbed models.
SuiteResult flatmodel_suite(const liealg::StructureSpec& spec, int trials, std::uint64_t seed, int truncation);

// Symbol exactness of the deformation row.
SuiteResult symbols_suite(const liealg::StructureSpec& spec, int trials, std::uint64_t seed);

}  // namespace bggkit::cli
