#include <gtest/gtest.h>

#include "bggkit/exactla/linalg.hpp"
#include "bggkit/homology/homology.hpp"

using namespace bggkit;
using namespace bggkit::homology;
using exactla::QMatrix;
using liealg::Family;
using liealg::catalog_entry;
using liealg::parse_structure;

namespace {

std::vector<liealg::StructureSpec> small_catalog() {
  return {catalog_entry(Family::Projective, 3),          catalog_entry(Family::ContactProjective, 2),
          catalog_entry(Family::Grassmannian, 2),        catalog_entry(Family::Grassmannian, 3),
          catalog_entry(Family::Quaternionic, 1),        catalog_entry(Family::LagrangeanContact, 2),
          catalog_entry(Family::QuaternionicContact, 1), parse_structure("B3:1"),
          parse_structure("B2:1,2")};
}

exactla::Integer total_dim(const DegreeHomology& h) {
  exactla::Integer d = 0;
  for (const auto& c : h.components) d += c.dim;
  return d;
}

HomologyOptions full_options() {
  HomologyOptions o;
  o.mode = HomologyOptions::Mode::Full;
  return o;
}

}  // namespace

TEST(Codifferential, SquaresToZero) {
  for (const auto& spec : small_catalog()) {
    liealg::GradedLieAlgebra g(spec);
    ChainComplex cc(g);
    for (int k = 2; k <= cc.max_degree(); ++k)
      for (const auto& c : cc.degree_basis(k)) {
        ChainVec v{{c, 1}};
        ASSERT_TRUE(cc.codiff(cc.codiff(v)).empty()) << spec.name << " k=" << k;
      }
  }
}

// d*(Z1 ^ Z2 (x) t) = -Z2 (x) [Z1,t] + Z1 (x) [Z2,t] - [Z1,Z2] (x) t
TEST(Codifferential, DegreeTwoFormula) {
  liealg::GradedLieAlgebra g(catalog_entry(Family::LagrangeanContact, 2));
  ChainComplex cc(g);
  const auto& pp = cc.pplus();
  auto slot = [&](std::size_t idx) {
    return std::uint32_t(std::find(pp.begin(), pp.end(), idx) - pp.begin());
  };
  for (std::uint32_t a = 0; a < pp.size(); ++a)
    for (std::uint32_t b = a + 1; b < pp.size(); ++b)
      for (std::uint32_t t = 0; t < g.dim(); ++t) {
        ChainVec expected;
        for (const auto& [m, x] : g.bracket_basis(pp[a], t)) add_to(expected, Chain{1u << b, std::uint32_t(m)}, -x);
        for (const auto& [m, x] : g.bracket_basis(pp[b], t)) add_to(expected, Chain{1u << a, std::uint32_t(m)}, x);
        for (const auto& [m, x] : g.bracket_basis(pp[a], pp[b])) add_to(expected, Chain{1u << slot(m), t}, -x);
        ChainVec v{{Chain{(1u << a) | (1u << b), t}, 1}};
        EXPECT_EQ(cc.codiff(v), expected);
      }
}

TEST(Codifferential, LaplacianKernelIsHomology) {
  liealg::GradedLieAlgebra g(catalog_entry(Family::Grassmannian, 2));
  ChainComplex cc(g);
  for (int k = 1; k < cc.max_degree(); ++k) {
    auto lo = cc.degree_basis(k - 1), mid = cc.degree_basis(k), hi = cc.degree_basis(k + 1);
    QMatrix dk = cc.codiff_matrix(mid, lo), dk1 = cc.codiff_matrix(hi, mid);
    auto diag = [&](const std::vector<Chain>& b, bool invert) {
      QMatrix m(b.size(), b.size());
      for (std::size_t i = 0; i < b.size(); ++i) m(i, i) = invert ? Rational(1 / cc.norm2(b[i])) : cc.norm2(b[i]);
      return m;
    };
    QMatrix gk = diag(mid, false);
    // G_k times the Laplacian, which is symmetric for the trace inner product.
    QMatrix glap = dk.transpose() * diag(lo, false) * dk + gk * dk1 * diag(hi, true) * dk1.transpose() * gk;
    EXPECT_EQ(glap, glap.transpose());
    EXPECT_TRUE(exactla::is_positive_semidefinite(glap));
    auto h = homology_components(cc, k, full_options());
    EXPECT_EQ(exactla::Integer(exactla::kernel_basis(glap).size()), total_dim(h)) << "k=" << k;
  }
}

TEST(Homology, HodgeAndEuler) {
  for (const auto& spec : small_catalog()) {
    liealg::GradedLieAlgebra g(spec);
    ChainComplex cc(g);
    exactla::Integer euler = 0;
    for (int k = 0; k <= cc.max_degree(); ++k) {
      auto h = homology_components(cc, k, full_options());
      EXPECT_TRUE(h.full);
      EXPECT_TRUE(h.hodge_additive) << spec.name << " k=" << k;
      EXPECT_TRUE(h.component_dims_match) << spec.name << " k=" << k;
      EXPECT_EQ(h.chain_dim, cc.chain_dim(k));
      EXPECT_EQ(h.harmonic_dim + h.rank_codiff + h.rank_codiff_next, h.chain_dim);
      for (const auto& c : h.components) {
        EXPECT_EQ(homogeneity_of(cc, c.hw_vector), c.homogeneity);
        EXPECT_TRUE(cc.codiff(c.hw_vector).empty());
      }
      euler += (k % 2 ? -1 : 1) * total_dim(h);
    }
    EXPECT_EQ(euler, 0) << spec.name;
  }
}

TEST(Homology, DegreeZeroIsLowestSummand) {
  for (const auto& spec : small_catalog()) {
    liealg::GradedLieAlgebra g(spec);
    ChainComplex cc(g);
    auto h = homology_components(cc, 0);
    ASSERT_EQ(h.components.size(), 1u) << spec.name;
    EXPECT_EQ(h.components[0].homogeneity, -g.depth());
    EXPECT_EQ(h.components[0].dim, exactla::Integer(g.grade_indices(-g.depth()).size()));
  }
}

TEST(Homology, MatchesKostantOracle) {
  for (const auto& spec : small_catalog()) {
    liealg::GradedLieAlgebra g(spec);
    ChainComplex cc(g);
    for (int k = 0; k <= cc.max_degree(); ++k) {
      auto h = homology_components(cc, k);
      auto preds = kostant_oracle(g, k);
      auto cmp = attach_oracle(h, preds);
      EXPECT_TRUE(cmp.agree) << spec.name << " k=" << k << "\n" << cmp.diagnostics;
      for (const auto& c : h.components) {
        ASSERT_GE(c.oracle_index, 0);
        EXPECT_EQ(preds[c.oracle_index].homogeneity, c.homogeneity);
        EXPECT_EQ(preds[c.oracle_index].dim, c.dim);
      }
    }
  }
}

TEST(Homology, HighestWeightModeMatchesFull) {
  liealg::GradedLieAlgebra g(catalog_entry(Family::QuaternionicContact, 1));
  ChainComplex cc(g);
  HomologyOptions hw;
  hw.mode = HomologyOptions::Mode::HighestWeightOnly;
  HomologyOptions serial = full_options();
  serial.parallel = false;
  for (int k = 0; k <= cc.max_degree(); ++k) {
    auto a = homology_components(cc, k, full_options());
    auto b = homology_components(cc, k, hw);
    auto c = homology_components(cc, k, serial);
    EXPECT_FALSE(b.full);
    ASSERT_EQ(a.components.size(), b.components.size());
    ASSERT_EQ(a.components.size(), c.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) {
      EXPECT_EQ(a.components[i].highest_weight, b.components[i].highest_weight);
      EXPECT_EQ(a.components[i].hw_vector, c.components[i].hw_vector);
    }
    EXPECT_EQ(a.harmonic_dim, c.harmonic_dim);
  }
}

TEST(Homology, GrassmannianThree) {
  liealg::GradedLieAlgebra g(catalog_entry(Family::Grassmannian, 3));
  ChainComplex cc(g);
  auto h1 = homology_components(cc, 1);
  bool found = false;
  for (const auto& c : h1.components) found = found || (c.dim == 24 && c.homogeneity == 0);
  EXPECT_TRUE(found);
  auto h2 = homology_components(cc, 2);
  ASSERT_EQ(h2.components.size(), 2u);
  EXPECT_EQ(h2.components[0].homogeneity, 1);
  EXPECT_TRUE(h2.components[0].torsion);
  EXPECT_EQ(h2.components[1].homogeneity, 2);
  EXPECT_FALSE(h2.components[1].torsion);
}

TEST(Homology, HomogeneityOfMixedVector) {
  liealg::GradedLieAlgebra g(catalog_entry(Family::ContactProjective, 2));
  ChainComplex cc(g);
  const auto& neg = g.grade_indices(-2);
  const auto& zero = g.grade_indices(0);
  EXPECT_EQ(homogeneity_of(cc, ChainVec{{Chain{0, std::uint32_t(neg[0])}, 3}}), -2);
  EXPECT_EQ(homogeneity_of(cc, ChainVec{{Chain{1, std::uint32_t(zero[0])}, 1}}),
            g.basis(cc.pplus()[0]).grade);
  EXPECT_EQ(homogeneity_of(cc, ChainVec{{Chain{0, std::uint32_t(neg[0])}, 1}, {Chain{0, std::uint32_t(zero[0])}, 1}}),
            std::nullopt);
}

TEST(Homology, GeneratedComponentsHaveWeylDimension) {
  liealg::GradedLieAlgebra g(catalog_entry(Family::LagrangeanContact, 2));
  ChainComplex cc(g);
  for (int k = 0; k <= 2; ++k) {
    auto h = homology_components(cc, k);
    for (auto& c : h.components) {
      generate_component(cc, c);
      EXPECT_EQ(exactla::Integer(c.harmonic_basis.size()), c.dim);
      for (const auto& v : c.harmonic_basis) {
        EXPECT_TRUE(cc.codiff(v).empty());
        EXPECT_EQ(homogeneity_of(cc, v), c.homogeneity);
      }
    }
  }
}
