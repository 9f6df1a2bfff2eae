#include "tropvb/intlin.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tropvb/semiring.hpp"  // Rat, for the determinant oracle

using namespace tropvb;

namespace {

std::mt19937_64 rng(20240811);

IntMat random_matrix(size_t rows, size_t cols, Int lo = -6, Int hi = 6) {
  std::uniform_int_distribution<Int> d(lo, hi);
  IntMat m(rows, IntVec(cols));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

// |det| by fraction-free elimination; enough to certify unimodularity.
Int abs_det(IntMat m) {
  size_t n = m.size();
  Rat det = 1;
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      Rat f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  if (det < 0) det = -det;
  EXPECT_EQ(boost::multiprecision::denominator(det), 1);
  return static_cast<Int>(boost::multiprecision::numerator(det));
}

TEST(SmithForm, ReconstructsAndDivides) {
  for (int trial = 0; trial < 200; ++trial) {
    size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMat a = random_matrix(rows, cols);
    SmithForm s = smith_form(a);
    IntMat d = mat_mul_int(mat_mul_int(s.u, a), s.v);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        EXPECT_EQ(d[i][j], i == j && i < s.diag.size() ? s.diag[i] : 0);
    for (int i = 0; i + 1 < s.rank; ++i)
      EXPECT_EQ(s.diag[i + 1] % s.diag[i], 0);
    EXPECT_EQ(abs_det(s.u), 1);
    EXPECT_EQ(abs_det(s.v), 1);
    EXPECT_EQ(mat_mul_int(s.u, s.uinv), identity_mat(rows));
    EXPECT_EQ(mat_mul_int(s.v, s.vinv), identity_mat(cols));
  }
}

TEST(Kernel, AnnihilatesAndIsSaturated) {
  for (int trial = 0; trial < 100; ++trial) {
    size_t rows = 1 + rng() % 3, cols = 1 + rng() % 4;
    IntMat a = random_matrix(rows, cols);
    auto ker = kernel_basis(a, cols);
    for (const auto& v : ker) EXPECT_TRUE(is_zero_vec(mat_vec(a, v)));
    EXPECT_EQ(static_cast<int>(ker.size()) + lattice_rank(a),
              static_cast<int>(cols));
  }
}

TEST(Kernel, EmptyMatrixGivesFullLattice) {
  auto ker = kernel_basis({}, 3);
  EXPECT_EQ(ker.size(), 3u);
}

TEST(Solve, RoundTripsRandomSystems) {
  std::uniform_int_distribution<Int> d(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    size_t rows = 1 + rng() % 3, cols = 1 + rng() % 4;
    IntMat a = random_matrix(rows, cols);
    IntVec x(cols);
    for (auto& v : x) v = d(rng);
    IntVec b = mat_vec(a, x);
    auto sol = solve_integer(a, b, cols);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(mat_vec(a, *sol), b);
  }
}

TEST(Solve, DetectsUnsolvable) {
  // 2x = 1 has no integer solution.
  EXPECT_FALSE(solve_integer({{2}}, {1}, 1).has_value());
  // Inconsistent overdetermined system.
  EXPECT_FALSE(solve_integer({{1, 0}, {1, 0}}, {0, 1}, 2).has_value());
}

TEST(SublatticeReducer, CanonicalRepresentatives) {
  SublatticeReducer red({{0, 1}}, 2);
  EXPECT_EQ(red.reduce({3, 7}), (IntVec{3, 0}));
  EXPECT_TRUE(red.contains({0, -4}));
  EXPECT_FALSE(red.contains({1, 0}));
  // Representatives are constant on cosets.
  std::uniform_int_distribution<Int> d(-10, 10);
  SublatticeReducer mixed({{2, 1, 0}, {0, 3, 1}}, 3);
  for (int trial = 0; trial < 100; ++trial) {
    IntVec u{d(rng), d(rng), d(rng)};
    IntVec shifted = vec_add(u, vec_add(vec_scale(d(rng), {2, 1, 0}),
                                        vec_scale(d(rng), {0, 3, 1})));
    EXPECT_EQ(mixed.reduce(u), mixed.reduce(shifted));
  }
}

TEST(Quotient, HandComputedPresentations) {
  // Z^2 / <(0,1)> is free of rank 1 with projection (x, y) -> x.
  auto q1 = lattice_quotient(2, {{0, 1}});
  EXPECT_EQ(q1.free_rank, 1);
  EXPECT_TRUE(q1.invariant_factors.empty());
  EXPECT_TRUE(q1.is_trivial_element(q1.project({0, 5})));
  EXPECT_FALSE(q1.is_trivial_element(q1.project({1, 5})));

  // Z^2 / <(2,0),(0,1)> is Z/2.
  auto q2 = lattice_quotient(2, {{2, 0}, {0, 1}});
  EXPECT_EQ(q2.free_rank, 0);
  EXPECT_EQ(q2.invariant_factors, (IntVec{2}));

  // Z^2 / 0 is Z^2.
  auto q3 = lattice_quotient(2, {});
  EXPECT_EQ(q3.free_rank, 2);
  EXPECT_TRUE(q3.invariant_factors.empty());
}

TEST(Quotient, ProjectionKillsExactlyTheSubgroup) {
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = 2 + rng() % 2;
    size_t k = 1 + rng() % 2;
    std::vector<IntVec> gens;
    for (size_t i = 0; i < k; ++i) gens.push_back(random_matrix(1, n)[0]);
    auto q = lattice_quotient(n, gens);
    for (const auto& g : gens)
      EXPECT_TRUE(q.is_trivial_element(q.project(g)));
    // projection * lift is the identity on presentation coordinates.
    IntMat pl = mat_mul_int(q.projection, q.lift);
    EXPECT_EQ(pl, identity_mat(q.coords()));
  }
}

TEST(Quotient, TorsionOrderMatchesCosetCount) {
  // Brute-force coset count for 2x2 subgroups of full rank.
  std::uniform_int_distribution<Int> d(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    IntVec g1{d(rng), d(rng)}, g2{d(rng), d(rng)};
    Int det = g1[0] * g2[1] - g1[1] * g2[0];
    if (det == 0) continue;
    auto q = lattice_quotient(2, {g1, g2});
    EXPECT_EQ(q.free_rank, 0);
    Int order = 1;
    for (Int f : q.invariant_factors) order *= f;
    // Count distinct cosets among representatives in a large box.
    SublatticeReducer red({g1, g2}, 2);
    std::set<IntVec> reps;
    for (Int x = -10; x <= 10; ++x)
      for (Int y = -10; y <= 10; ++y) reps.insert(red.reduce({x, y}));
    EXPECT_EQ(static_cast<Int>(reps.size()), std::llabs(det));
    EXPECT_EQ(order, std::llabs(det));
  }
}

TEST(SameSublattice, DetectsEquality) {
  EXPECT_TRUE(same_sublattice({{1, 0}, {0, 1}}, {{1, 1}, {0, 1}}, 2));
  EXPECT_TRUE(same_sublattice({{2, 0}}, {{-2, 0}}, 2));
  EXPECT_FALSE(same_sublattice({{2, 0}}, {{1, 0}}, 2));
}

}  // namespace
