#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "bggkit/rootsys/weyl.hpp"

using namespace bggkit::rootsys;

TEST(RootSystem, ClassicalCounts) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(RootSystem(Series::A, n).positive_roots().size(), std::size_t(n * (n + 1) / 2));
  for (int n = 2; n <= 6; ++n) {
    EXPECT_EQ(RootSystem(Series::B, n).positive_roots().size(), std::size_t(n * n));
    EXPECT_EQ(RootSystem(Series::C, n).positive_roots().size(), std::size_t(n * n));
  }
  for (int n = 3; n <= 6; ++n) EXPECT_EQ(RootSystem(Series::D, n).positive_roots().size(), std::size_t(n * (n - 1)));
  EXPECT_THROW(RootSystem(Series::B, 1), UnsupportedRootSystem);
  EXPECT_THROW(RootSystem(Series::D, 2), UnsupportedRootSystem);
}

TEST(RootSystem, C4LongRoots) {
  RootSystem c4(Series::C, 4);
  // 2 eps_1 = 2a1 + 2a2 + 2a3 + a4 is the highest root; 2 eps_4 = a4.
  EXPECT_EQ(c4.highest_root(), (RootCoords{2, 2, 2, 1}));
  EXPECT_GE(c4.root_index({0, 0, 0, 1}), 0);
  int long_roots = 0;
  for (const auto& r : c4.positive_roots())
    if (c4.inner(r, r) == c4.inner(c4.highest_root(), c4.highest_root())) ++long_roots;
  EXPECT_EQ(long_roots, 4);
}

TEST(RootSystem, A3ByBruteForceClosure) {
  // eps_i - eps_j for i < j, written in simple-root coordinates.
  RootSystem a3(Series::A, 3);
  std::set<RootCoords> expect;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      RootCoords r(3, 0);
      for (int k = i; k < j; ++k) r[k] = 1;
      expect.insert(r);
    }
  std::set<RootCoords> got(a3.positive_roots().begin(), a3.positive_roots().end());
  EXPECT_EQ(got, expect);
}

namespace {

int inversions(const std::vector<int>& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++c;
  return c;
}

}  // namespace

TEST(Weyl, A3Grassmannian) {
  RootSystem a3(Series::A, 3);
  auto reps = minimal_coset_reps(a3, {2});
  EXPECT_EQ(length_distribution(reps), (std::vector<std::size_t>{1, 1, 2, 1, 1}));
  // Oracle: permutations of 4 letters with w^{-1} increasing on {1,2} and {3,4}.
  std::vector<int> p = {0, 1, 2, 3};
  std::vector<std::size_t> dist(7, 0);
  do {
    std::vector<int> inv(4);
    for (int i = 0; i < 4; ++i) inv[p[i]] = i;
    if (inv[0] < inv[1] && inv[2] < inv[3]) ++dist[inversions(p)];
  } while (std::next_permutation(p.begin(), p.end()));
  dist.resize(5);
  EXPECT_EQ(length_distribution(reps), dist);
}

TEST(Weyl, CosetCounts) {
  RootSystem a3(Series::A, 3);
  EXPECT_EQ(minimal_coset_reps(a3, {1, 3}).size(), 12u);
  EXPECT_EQ(minimal_coset_reps(a3, {1, 2, 3}).size(), 24u);
  RootSystem c3(Series::C, 3);
  const std::size_t order_c3 = minimal_coset_reps(c3, {1, 2, 3}).size();
  EXPECT_EQ(order_c3, 48u);
  // |W^p| * |W_levi| = |W| for every crossing of A3, B3, C3, D4.
  for (auto [s, n] : std::vector<std::pair<Series, int>>{{Series::A, 3}, {Series::B, 3}, {Series::C, 3}, {Series::D, 4}}) {
    RootSystem rs(s, n);
    const std::size_t w = minimal_coset_reps(rs, all_nodes(rs)).size();
    for (int mask = 1; mask < (1 << n); ++mask) {
      NodeSet crossed;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) crossed.insert(i + 1);
      auto levi = complement(rs, crossed);
      // Levi Weyl group order from its longest element: enumerate with all nodes crossed
      // inside the Levi by counting elements of length-bounded BFS on levi nodes.
      std::size_t levi_order = 1;
      if (!levi.empty()) {
        std::set<std::vector<std::vector<int>>> seen;
        std::vector<WeylElement> todo{identity_element(rs)};
        seen.insert(todo[0].matrix);
        while (!todo.empty()) {
          WeylElement cur = todo.back();
          todo.pop_back();
          for (int i : levi) {
            auto nxt = multiply_simple_right(rs, cur, i);
            if (seen.insert(nxt.matrix).second) todo.push_back(nxt);
          }
        }
        levi_order = seen.size();
      }
      EXPECT_EQ(minimal_coset_reps(rs, crossed).size() * levi_order, w) << rs.name() << " mask " << mask;
    }
  }
}

TEST(Weyl, AffineAction) {
  RootSystem a3(Series::A, 3);
  Weight theta = a3.root_to_weight(a3.highest_root());
  EXPECT_EQ(theta.coords, (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(affine_weyl_action(a3, identity_element(a3), theta), theta);
  auto s2 = multiply_simple_right(a3, identity_element(a3), 2);
  EXPECT_EQ(affine_weyl_action(a3, s2, theta).coords, (std::vector<std::int64_t>{2, -2, 2}));
  // (v w) . lambda = v . (w . lambda) and w^{-1} undoes w.
  for (const auto& w : minimal_coset_reps(a3, {1, 2, 3})) {
    WeylElement winv = identity_element(a3);
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) winv = multiply_simple_right(a3, winv, *it);
    EXPECT_EQ(affine_weyl_action(a3, winv, affine_weyl_action(a3, w, theta)), theta);
    WeylElement vw = s2;
    for (int l : w.word) vw = multiply_simple_right(a3, vw, l);
    EXPECT_EQ(affine_weyl_action(a3, vw, theta), affine_weyl_action(a3, s2, affine_weyl_action(a3, w, theta)));
  }
}

TEST(Weyl, InversionSetSizeIsLength) {
  RootSystem c3(Series::C, 3);
  for (const auto& w : minimal_coset_reps(c3, {2})) EXPECT_EQ(inversion_set(c3, w).size(), w.length());
}

TEST(Weyl, LongestElement) {
  RootSystem a3(Series::A, 3);
  EXPECT_EQ(longest_element(a3, all_nodes(a3)).length(), 6u);
  EXPECT_EQ(longest_element(RootSystem(Series::C, 3), {1, 2, 3}).length(), 9u);
}

TEST(Weyl, BruhatCoversA3Grassmannian) {
  RootSystem a3(Series::A, 3);
  auto reps = minimal_coset_reps(a3, {2});
  auto covers = bruhat_covers(a3, reps);
  // Hasse diagram of Gr(2,4) Schubert cells: a diamond in the middle, 6 edges.
  EXPECT_EQ(covers.size(), 6u);
}

TEST(WeylDimension, Basics) {
  RootSystem a1(Series::A, 1);
  EXPECT_EQ(weyl_dimension(a1, Weight{{0}}), 1);
  EXPECT_EQ(weyl_dimension(a1, Weight{{1}}), 2);
  for (auto [s, n, dim] : std::vector<std::tuple<Series, int, int>>{
           {Series::A, 3, 15}, {Series::B, 3, 21}, {Series::C, 4, 36}, {Series::D, 4, 28}, {Series::A, 5, 35}}) {
    RootSystem rs(s, n);
    EXPECT_EQ(weyl_dimension(rs, rs.root_to_weight(rs.highest_root())), dim) << rs.name();
  }
  EXPECT_THROW(weyl_dimension(a1, Weight{{-1}}), std::invalid_argument);
}
