#include <gtest/gtest.h>

#include <random>

#include "bggkit/exactla/linalg.hpp"
#include "bggkit/liealg/graded_algebra.hpp"
#include "bggkit/rootsys/root_system.hpp"

using namespace bggkit;
using namespace bggkit::liealg;
using exactla::QMatrix;

namespace {

std::vector<std::size_t> dims(const GradedLieAlgebra& g) {
  std::vector<std::size_t> out;
  for (auto [grade, d] : g.grading_summand_dims()) out.push_back(d);
  return out;
}

QVector unit(const GradedLieAlgebra& g, std::size_t i) {
  QVector v(g.dim());
  v[i] = 1;
  return v;
}

std::vector<StructureSpec> small_catalog() {
  return {catalog_entry(Family::Projective, 2),        catalog_entry(Family::ContactProjective, 3),
          catalog_entry(Family::Grassmannian, 2),      catalog_entry(Family::Grassmannian, 3),
          catalog_entry(Family::Quaternionic, 2),      catalog_entry(Family::LagrangeanContact, 2),
          catalog_entry(Family::CR, 2),                catalog_entry(Family::QuaternionicContact, 1),
          catalog_entry(Family::QuaternionicContact, 2), parse_structure("B3:1"),
          parse_structure("D4:2")};
}

}  // namespace

TEST(GradedAlgebra, SummandDims) {
  EXPECT_EQ(dims(GradedLieAlgebra(rootsys::Series::A, 1, {1})), (std::vector<std::size_t>{1, 1, 1}));
  GradedLieAlgebra a3(rootsys::Series::A, 3, {2});
  EXPECT_EQ(a3.depth(), 1);
  EXPECT_EQ(dims(a3), (std::vector<std::size_t>{4, 7, 4}));
  GradedLieAlgebra c4(rootsys::Series::C, 4, {2});
  EXPECT_EQ(c4.depth(), 2);
  EXPECT_EQ(dims(c4), (std::vector<std::size_t>{3, 8, 14, 8, 3}));
  EXPECT_EQ(dims(GradedLieAlgebra(parse_structure("A3:1,3"))), (std::vector<std::size_t>{1, 4, 5, 4, 1}));
  EXPECT_EQ(dims(GradedLieAlgebra(catalog_entry(Family::Quaternionic, 2))), (std::vector<std::size_t>{8, 19, 8}));
}

TEST(GradedAlgebra, BaseDimensionsPerFamily) {
  for (int n = 1; n <= 3; ++n) {
    if (n >= 2) EXPECT_EQ(GradedLieAlgebra(catalog_entry(Family::Grassmannian, n)).negative_indices().size(), std::size_t(2 * n));
    EXPECT_EQ(GradedLieAlgebra(catalog_entry(Family::LagrangeanContact, n)).negative_indices().size(), std::size_t(2 * n + 1));
    EXPECT_EQ(GradedLieAlgebra(catalog_entry(Family::QuaternionicContact, n)).negative_indices().size(), std::size_t(4 * n + 3));
    EXPECT_EQ(GradedLieAlgebra(catalog_entry(Family::Quaternionic, n)).negative_indices().size(), std::size_t(4 * n));
  }
}

TEST(GradedAlgebra, BracketAxioms) {
  for (const auto& spec : small_catalog()) {
    GradedLieAlgebra g(spec);
    const std::size_t d = g.dim();
    EXPECT_EQ(rootsys::weyl_dimension(g.roots(), g.roots().root_to_weight(g.roots().highest_root())), long(d));
    for (std::size_t i = 0; i < d; ++i) {
      EXPECT_TRUE(g.bracket_basis(i, i).empty());
      // [E, b] = grade(b) b
      QVector eb = g.bracket(g.grading_element(), unit(g, i));
      QVector expect = unit(g, i);
      for (auto& c : expect) c *= g.basis(i).grade;
      EXPECT_EQ(eb, expect) << spec.name << " basis " << i;
      // transpose duality
      QMatrix t = g.to_matrix(unit(g, i)).transpose();
      EXPECT_EQ(g.to_matrix(unit(g, g.basis(i).transpose)), t);
      EXPECT_EQ(g.basis(g.basis(i).transpose).grade, -g.basis(i).grade);
      for (std::size_t j = 0; j < d; ++j) {
        const int gs = g.basis(i).grade + g.basis(j).grade;
        for (const auto& [k, c] : g.bracket_basis(i, j)) EXPECT_EQ(g.basis(k).grade, gs);
        // commutator round-trip through matrices
        QMatrix x = g.to_matrix(unit(g, i)), y = g.to_matrix(unit(g, j));
        if (i < 6 || j < 6) EXPECT_EQ(g.to_matrix(g.bracket(unit(g, i), unit(g, j))), x * y - y * x);
      }
    }
  }
}

TEST(GradedAlgebra, JacobiOnAllTriples) {
  for (const auto& spec : small_catalog()) {
    GradedLieAlgebra g(spec);
    const std::size_t d = g.dim();
    auto br = [&](std::size_t i, const SparseVec& v) {
      QVector out(d);
      for (const auto& [k, c] : v)
        for (const auto& [m, e] : g.bracket_basis(i, k)) out[m] += c * e;
      return out;
    };
    std::size_t bad = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) {
          QVector s = br(i, g.bracket_basis(j, k));
          QVector t = br(j, g.bracket_basis(k, i));
          QVector u = br(k, g.bracket_basis(i, j));
          for (std::size_t m = 0; m < d; ++m)
            if (sgn(s[m] + t[m] + u[m]) != 0) ++bad;
        }
    EXPECT_EQ(bad, 0u) << spec.name;
  }
}

TEST(GradedAlgebra, KillingForm) {
  GradedLieAlgebra g(rootsys::Series::A, 3, {2});
  auto g1 = g.grade_indices(1), gm1 = g.grade_indices(-1);
  for (auto i : g1)
    for (auto j : g1) EXPECT_EQ(g.killing_pairing(unit(g, i), unit(g, j)), 0);
  QMatrix pair(g1.size(), gm1.size());
  for (std::size_t a = 0; a < g1.size(); ++a)
    for (std::size_t b = 0; b < gm1.size(); ++b) pair(a, b) = g.killing_pairing(unit(g, g1[a]), unit(g, gm1[b]));
  EXPECT_EQ(exactla::rank(pair), 4u);
  // The recorded constant reproduces tr(ad x ad y).
  for (const auto& spec : small_catalog()) {
    GradedLieAlgebra h(spec);
    EXPECT_GT(h.killing_pairing(h.grading_element(), h.grading_element()), 0);
    std::mt19937 rng(4);
    for (int t = 0; t < 3; ++t) {
      QVector x(h.dim()), y(h.dim());
      for (auto& c : x) c = int(rng() % 5) - 2;
      for (auto& c : y) c = int(rng() % 5) - 2;
      Rational tr = 0;
      for (std::size_t b = 0; b < h.dim(); ++b) tr += h.bracket(x, h.bracket(y, unit(h, b)))[b];
      EXPECT_EQ(tr, h.killing_pairing(x, y)) << spec.name;
    }
  }
}

TEST(GradedAlgebra, AbelianNilradical) {
  GradedLieAlgebra g(rootsys::Series::A, 3, {2});
  std::mt19937 rng(2);
  QVector x(g.dim()), y(g.dim());
  for (auto i : g.grade_indices(1)) {
    x[i] = int(rng() % 7) - 3;
    y[i] = int(rng() % 7) - 3;
  }
  EXPECT_TRUE(exactla::is_zero(g.bracket(x, y)));
}

TEST(Catalog, Parsing) {
  EXPECT_EQ(parse_structure("grassmannian:3").rank, 4);
  auto s = parse_structure("A3:1,3");
  EXPECT_EQ(s.crossed, (NodeSet{1, 3}));
  EXPECT_THROW(parse_structure("bogus:1"), UnknownStructure);
  EXPECT_THROW(parse_structure("A3:4"), UnknownStructure);
  EXPECT_THROW(parse_structure("grassmannian:x"), UnknownStructure);
  EXPECT_TRUE(parse_structure("cr:2").involution);
  EXPECT_EQ(catalog_names().size(), 7u);
}
