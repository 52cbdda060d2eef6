#include "suites.hpp"

#include <exception>

#include "bggkit/bggpattern/deformation.hpp"
#include "bggkit/flatmodel/checks.hpp"
#include "bggkit/homology/homology.hpp"

namespace bggkit::cli {

using liealg::Family;
using nlohmann::json;

namespace {

const Family kFamilies[] = {Family::Projective,   Family::ContactProjective, Family::Grassmannian,
                            Family::Quaternionic, Family::LagrangeanContact, Family::CR,
                            Family::QuaternionicContact};

// Records one named check; the first failing one becomes the counterexample.
struct Recorder {
  SuiteResult& out;
  json& checks;

  void operator()(const std::string& name, bool pass, json detail = nullptr) {
    json entry = {{"check", name}, {"pass", pass}};
    if (!detail.is_null()) entry["details"] = detail;
    if (!pass && out.pass) {
      out.pass = false;
      out.first_failure = entry;
    }
    checks.push_back(std::move(entry));
  }
};

}  // namespace

std::vector<liealg::StructureSpec> catalog_up_to_rank(int max_rank) {
  std::vector<liealg::StructureSpec> out;
  for (Family f : kFamilies)
    for (int n = 1;; ++n) {
      liealg::StructureSpec s;
      try {
        s = liealg::catalog_entry(f, n);
      } catch (const std::invalid_argument&) {
        continue;  // parameter below the family's range
      }
      if (s.rank > max_rank) break;
      out.push_back(s);
    }
  return out;
}

std::vector<liealg::StructureSpec> smallest_catalog() {
  return {liealg::catalog_entry(Family::Projective, 2),   liealg::catalog_entry(Family::ContactProjective, 2),
          liealg::catalog_entry(Family::Grassmannian, 2), liealg::catalog_entry(Family::Quaternionic, 1),
          liealg::catalog_entry(Family::LagrangeanContact, 2), liealg::catalog_entry(Family::CR, 2),
          liealg::catalog_entry(Family::QuaternionicContact, 1)};
}

SuiteResult algebraic_suite(const liealg::StructureSpec& spec, bool parallel) {
  SuiteResult out;
  json checks = json::array();
  Recorder record{out, checks};

  const liealg::GradedLieAlgebra g(spec);
  const homology::ChainComplex cc(g);
  homology::HomologyOptions opt;
  opt.parallel = parallel;
  auto degrees = homology::homology_range(cc, 0, cc.max_degree(), opt);

  exactla::Integer euler = 0;
  json impure;
  json per_degree = json::array();
  for (auto& h : degrees) {
    const int k = h.degree;
    auto cmp = homology::attach_oracle(h, homology::kostant_oracle(g, k));
    json oracle = {{"degree", k}, {"components", h.components.size()}};
    if (!cmp.agree) oracle["diagnostics"] = cmp.diagnostics;
    record("kostant_oracle", cmp.agree, oracle);

    exactla::Integer total = 0;
    for (const auto& c : h.components) {
      total += c.dim;
      const auto hom = homology::homogeneity_of(cc, c.hw_vector);
      if ((!hom || *hom != c.homogeneity) && impure.is_null())
        impure = {{"degree", k}, {"highest_weight", c.highest_weight.str()}, {"homogeneity", c.homogeneity}};
    }
    euler += (k % 2 ? -1 : 1) * total;

    json entry = {{"degree", k}, {"dim", total.get_str()}, {"full", h.full}};
    if (h.full) {
      // C_k = harmonic + im d + im d*, and the harmonic part is the sum of the components.
      const bool sums = h.harmonic_dim + h.rank_codiff + h.rank_codiff_next == h.chain_dim;
      const bool dims = h.harmonic_dim == total;
      record("hodge_decomposition", h.hodge_additive && h.component_dims_match && sums && dims,
             {{"degree", k},
              {"chain_dim", h.chain_dim},
              {"harmonic", h.harmonic_dim},
              {"im_d", h.rank_codiff},
              {"im_codiff", h.rank_codiff_next}});
    }
    if (k >= 2 && cc.chain_dim(k) <= opt.full_limit) {
      const bool zero = (cc.codifferential(k - 1) * cc.codifferential(k)).is_zero();
      record("codiff_squared_zero", zero, {{"degree", k}});
      entry["codiff_squared_checked"] = true;
    }
    per_degree.push_back(entry);
  }
  record("homogeneity_purity", impure.is_null(), impure);
  record("euler_characteristic", euler == 0, {{"value", euler.get_str()}});

  json deformation;
  try {
    const auto d = bggpattern::build_bgg_diagram(g, degrees);
    const auto r = bggpattern::deformation_subcomplex(g, d);
    deformation = bggpattern::to_json(r);
    record("deformation_subcomplex", r.pass());
  } catch (const bggpattern::UnsupportedFamily&) {
    deformation = "no deformation row for this family";
  }

  out.report = {{"structure", spec.name},
                {"suite", "algebraic"},
                {"pass", out.pass},
                {"degrees", per_degree},
                {"checks", checks},
                {"deformation_subcomplex", deformation}};
  return out;
}

namespace {

SuiteResult collect(const liealg::StructureSpec& spec, const char* suite,
                    const std::vector<flatmodel::CheckReport>& reports, json extra = json::object()) {
  SuiteResult out;
  json list = json::array();
  for (const auto& r : reports) {
    json j = flatmodel::to_json(r);
    if (!r.pass && out.pass) {
      out.pass = false;
      out.first_failure = j;
    }
    list.push_back(std::move(j));
  }
  out.report = extra;
  out.report["structure"] = spec.name;
  out.report["suite"] = suite;
  out.report["pass"] = out.pass;
  out.report["checks"] = list;
  return out;
}

}  // namespace

SuiteResult flatmodel_suite(const liealg::StructureSpec& spec, int trials, std::uint64_t seed, int truncation) {
  auto reports = flatmodel::check_flat_complex(spec, trials, seed, truncation);
  for (auto& r : flatmodel::check_two_routes(spec, trials, seed, truncation)) reports.push_back(std::move(r));
  for (auto& r : flatmodel::check_bianchi(spec, trials, seed, truncation)) reports.push_back(std::move(r));
  return collect(spec, "flatmodel", reports, {{"seed", seed}, {"trials", trials}, {"truncation", truncation}});
}

SuiteResult symbols_suite(const liealg::StructureSpec& spec, int trials, std::uint64_t seed) {
  return collect(spec, "symbols", {flatmodel::check_symbols(spec, trials, seed)}, {{"seed", seed}, {"trials", trials}});
}

}  // namespace bggkit::cli
