#include <gtest/gtest.h>

#include <random>

#include "bggkit/exactla/linalg.hpp"

using namespace bggkit::exactla;

namespace {

QMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> d(-5, 5);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = make_rational(d(rng), 1 + (d(rng) + 5) % 3);
  return m;
}

}  // namespace

TEST(Kernel, IdentityHasTrivialKernel) {
  EXPECT_TRUE(kernel_basis(QMatrix::identity(2)).empty());
}

TEST(Kernel, RowOfOnes) {
  QMatrix m(1, 2);
  m(0, 0) = 1;
  m(0, 1) = 1;
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], -k[0][1]);
  EXPECT_FALSE(is_zero(k[0]));
}

TEST(Kernel, RandomRankFiveByConstruction) {
  std::mt19937 rng(7);
  // Product of 6x5 and 5x9 factors has rank at most 5.
  QMatrix m = random_matrix(rng, 6, 5) * random_matrix(rng, 5, 9);
  auto k = kernel_basis(m);
  EXPECT_EQ(rank(m), 5u);
  EXPECT_EQ(k.size(), 4u);
  for (const auto& v : k) EXPECT_TRUE(is_zero(m * v));
  QMatrix stacked = QMatrix::vstack(m, QMatrix::from_rows(k, 9));
  EXPECT_EQ(rank(stacked), 9u);
}

TEST(Rank, Basics) {
  EXPECT_EQ(rank(QMatrix(3, 3)), 0u);
  EXPECT_EQ(rank(QMatrix::identity(4)), 4u);
  QMatrix a3 = QMatrix::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, 3);
  EXPECT_EQ(rank(a3), 3u);
}

TEST(Rank, MatchesKernelCount) {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    QMatrix m = random_matrix(rng, r, c);
    if (t % 3 == 0) m = m * random_matrix(rng, c, 2) * random_matrix(rng, 2, c);
    EXPECT_EQ(rank(m) + kernel_basis(m).size(), m.cols());
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(Solve, Cases) {
  QVector b = {3, Rational(1, 2)};
  EXPECT_EQ(*solve(QMatrix::identity(2), b), b);
  EXPECT_FALSE(solve(QMatrix(2, 2), b).has_value());
  std::mt19937 rng(3);
  QMatrix m = random_matrix(rng, 5, 5);
  while (rank(m) < 5) m = random_matrix(rng, 5, 5);
  QVector rb = random_matrix(rng, 5, 1).column(0);
  auto x = solve(m, rb);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m * *x, rb);
}

TEST(Quotient, Cases) {
  auto r = quotient_representatives({{1, 0}}, 2);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (QVector{0, 1}));
  EXPECT_TRUE(quotient_representatives({{1, 0}, {0, 1}}, 2).empty());
  std::mt19937 rng(5);
  QMatrix s = random_matrix(rng, 3, 7);
  while (rank(s) < 3) s = random_matrix(rng, 3, 7);
  std::vector<QVector> sub = {s.row(0), s.row(1), s.row(2)};
  auto q = quotient_representatives(sub, 7);
  EXPECT_EQ(q.size(), 4u);
  auto all = sub;
  all.insert(all.end(), q.begin(), q.end());
  EXPECT_EQ(rank(QMatrix::from_rows(all, 7)), 7u);
}

TEST(Quotient, ReportsDependency) {
  try {
    quotient_representatives({{1, 2, 3}, {0, 1, 0}, {2, 5, 6}}, 3);
    FAIL() << "expected LinearDependence";
  } catch (const LinearDependence& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Inverse, RoundTrip) {
  std::mt19937 rng(9);
  QMatrix m = random_matrix(rng, 4, 4);
  while (rank(m) < 4) m = random_matrix(rng, 4, 4);
  auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, QMatrix::identity(4));
  EXPECT_FALSE(inverse(QMatrix(2, 2)).has_value());
}

TEST(Semidefinite, GramAndIndefinite) {
  std::mt19937 rng(1);
  QMatrix a = random_matrix(rng, 3, 5);
  EXPECT_TRUE(is_positive_semidefinite(a * a.transpose()));
  QMatrix h = QMatrix::from_rows({{0, 1}, {1, 0}}, 2);
  EXPECT_FALSE(is_positive_semidefinite(h));
}

TEST(Intersect, CoordinatePlanes) {
  auto s = intersect_spans({{1, 0, 0}, {0, 1, 0}}, {{0, 1, 0}, {0, 0, 1}}, 3);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(primitive(s[0]), (QVector{0, 1, 0}));
}

TEST(Sparse, MatchesDense) {
  SparseQMatrix s(3, 3);
  s.add(0, 1, 2);
  s.add(0, 1, -2);
  s.add(2, 0, Rational(1, 3));
  s.finalize();
  EXPECT_EQ(s.nonzeros(), 1u);
  QMatrix d = s.to_dense();
  QVector v = {3, 1, 1};
  EXPECT_EQ(s.apply(v), d * v);
  EXPECT_EQ((s * s).to_dense(), d * d);
}

TEST(Sparse, EliminationMatchesDense) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = 3 + t % 7, c = 4 + t % 9;
    QMatrix d = random_matrix(rng, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (coin(rng) != 0) d(i, j) = 0;
    if (t % 4 == 0) d = d * random_matrix(rng, c, 2) * random_matrix(rng, 2, c);
    SparseQMatrix s(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) s.add(i, j, d(i, j));
    s.finalize();
    EXPECT_EQ(rank(s), rank(d));
    auto ker = kernel_basis(s);
    EXPECT_EQ(ker.size(), c - rank(d));
    for (const auto& v : ker) EXPECT_EQ(d * v, QVector(r));
    if (!ker.empty()) EXPECT_EQ(rank(QMatrix::from_columns(ker, c)), ker.size());
    EXPECT_EQ(kernel_basis_exact(s).size(), ker.size());
    for (const auto& v : kernel_basis_exact(s)) EXPECT_EQ(d * v, QVector(r));
  }
  EXPECT_EQ(kernel_basis(SparseQMatrix(0, 3)).size(), 3u);
}

TEST(Sparse, LargeEntriesFallBackToExact) {
  // Kernel vector (2^40, -1) cannot be lifted from a 61-bit residue with
  // 30-bit bounds, so the exact path must take over.
  SparseQMatrix s(1, 2);
  s.add(0, 0, 1);
  s.add(0, 1, Rational(Integer(1) << 40));
  s.finalize();
  auto ker = kernel_basis(s);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(ker[0][0] + ker[0][1] * (Rational(Integer(1) << 40)), 0);
  EXPECT_EQ(ker[0][1], 1);
}
