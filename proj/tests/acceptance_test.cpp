// End-to-end acceptance suite. Each test is one criterion and prints a
// single pass/fail line; everything is exact, there are no tolerances.

#include <gtest/gtest.h>

#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <variant>

#include "tropvb/corpus.hpp"
#include "tropvb/json_io.hpp"
#include "tropvb/klyachko.hpp"
#include "tropvb/picard.hpp"
#include "tropvb/semimatrix.hpp"
#include "tropvb/sn_group.hpp"
#include "test_support.hpp"

using namespace tropvb;
namespace tt = tropvb::testing;

namespace {

std::mt19937_64 rng(0x5eedf00d);

void report(int criterion, const std::string& what) {
  std::cout << "[criterion " << criterion << "] "
            << (::testing::Test::HasFailure() ? "FAIL" : "PASS") << "  " << what
            << std::endl;
}

Matrix<Boole> boolean_matrix(int n, unsigned mask) {
  Matrix<Boole> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Boole((mask >> (i * n + j)) & 1);
  return m;
}

Trop random_unit_scalar() {
  std::uniform_int_distribution<long long> num(-24, 24);
  std::uniform_int_distribution<long long> den(1, 9);
  return Trop(Rat(num(rng), den(rng)));
}

// 1. Over B with n <= 3, the invertible matrices found by brute-force
// inverse search are exactly the n! permutation matrices and exactly the
// decompose successes.
TEST(Acceptance, Criterion01GlStructureTheorem) {
  for (int n = 1; n <= 3; ++n) {
    const unsigned total = 1u << (n * n);
    std::vector<Matrix<Boole>> all;
    all.reserve(total);
    for (unsigned mask = 0; mask < total; ++mask)
      all.push_back(boolean_matrix(n, mask));
    const Matrix<Boole> id = Matrix<Boole>::identity(n);

    std::set<unsigned> brute_invertible;
    for (unsigned a = 0; a < total; ++a)
      for (unsigned b = 0; b < total; ++b)
        if (all[a] * all[b] == id && all[b] * all[a] == id) {
          brute_invertible.insert(a);
          break;
        }

    std::set<unsigned> decompose_invertible_set;
    std::set<unsigned> permutation_matrices;
    for (unsigned a = 0; a < total; ++a)
      if (std::holds_alternative<GenPerm<Boole>>(decompose_invertible(all[a])))
        decompose_invertible_set.insert(a);
    for (const auto& g : enumerate_invertible_boolean(n)) {
      Matrix<Boole> m = g.to_matrix();
      for (unsigned a = 0; a < total; ++a)
        if (all[a] == m) permutation_matrices.insert(a);
    }

    EXPECT_EQ(brute_invertible.size(), permutation_matrices.size());
    EXPECT_EQ(brute_invertible, permutation_matrices) << "n = " << n;
    EXPECT_EQ(brute_invertible, decompose_invertible_set) << "n = " << n;
    size_t factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    EXPECT_EQ(brute_invertible.size(), factorial);
  }
  report(1, "invertible Boolean matrices (n <= 3) are exactly the "
            "permutation matrices, by exhaustive inverse search");
}

// 2. 500 random generalized permutation matrices over T round-trip through
// decomposition and multiply to the identity exactly.
TEST(Acceptance, Criterion02DecomposeReconstruct) {
  auto perms_by_n = std::map<int, std::vector<Perm>>{};
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    auto& perms = perms_by_n[n];
    if (perms.empty()) perms = all_permutations(n);
    GenPerm<Trop> g;
    g.perm = perms[rng() % perms.size()];
    for (int i = 0; i < n; ++i) g.diag.push_back(random_unit_scalar());
    Matrix<Trop> m = g.to_matrix();
    auto r = decompose_invertible(m);
    auto* back = std::get_if<GenPerm<Trop>>(&r);
    ASSERT_NE(back, nullptr);
    EXPECT_EQ(back->perm, g.perm);
    EXPECT_EQ(back->diag, g.diag);
    EXPECT_EQ(m * back->inverse().to_matrix(), Matrix<Trop>::identity(n));
    EXPECT_EQ(back->inverse().to_matrix() * m, Matrix<Trop>::identity(n));
  }
  report(2, "500 random generalized permutation matrices over T decompose "
            "and invert exactly");
}

// 3. The convolution group reproduces the S3 Cayley table and all antipode
// inverses.
TEST(Acceptance, Criterion03ConvolutionGroup) {
  auto elements = all_permutations(3);
  int products = 0;
  for (const Perm& a : elements)
    for (const Perm& b : elements) {
      EXPECT_EQ(convolve({3, a}, {3, b}).sigma, compose(a, b));
      ++products;
    }
  EXPECT_EQ(products, 36);
  for (const Perm& a : elements) {
    EXPECT_EQ(convolve({3, a}, antipode({3, a})), SnSelection::identity(3));
    EXPECT_EQ(convolve(antipode({3, a}), {3, a}), SnSelection::identity(3));
  }
  report(3, "convolution reproduces the S3 Cayley table (36 products) and "
            "all 6 antipode inverses");
}

// 4. Dual cone is an involution on 200 random strongly convex cones of
// rank <= 3; every pairing inequality holds exactly.
TEST(Acceptance, Criterion04DualityInvolution) {
  std::uniform_int_distribution<Int> d(-5, 5);
  int tested = 0;
  while (tested < 200) {
    int rank = 1 + static_cast<int>(rng() % 3);
    std::vector<IntVec> rays;
    for (int i = 0, n = 1 + static_cast<int>(rng() % (rank + 2)); i < n; ++i) {
      IntVec v(rank);
      for (auto& x : v) x = d(rng);
      if (!is_zero_vec(v)) rays.push_back(v);
    }
    if (rays.empty()) continue;
    Cone c = extremal_rays(Cone(rank, rays));
    if (!is_strongly_convex(c)) continue;
    ++tested;
    Cone dual = dual_cone(c);
    for (const auto& u : dual.rays())
      for (const auto& v : c.rays()) EXPECT_GE(dot(u, v), 0);
    EXPECT_EQ(dual_cone(dual), c);
  }
  report(4, "dual cone is an involution on 200 random strongly convex cones "
            "(rank <= 3), pairings exact");
}

// 5. Class groups of the corpus match the classical smooth-complete count
// and the four-term sequence is certified exact on every corpus fan.
TEST(Acceptance, Criterion05PicardCorpus) {
  struct Row {
    const char* name;
    Fan fan;
    Int expected_rank;
    bool complete;
  };
  std::vector<Row> rows{
      {"A2", corpus::a2(), 0, false},  {"P1", corpus::p1(), 1, true},
      {"P2", corpus::p2(), 1, true},   {"P1xP1", corpus::p1xp1(), 2, true},
      {"F1", corpus::f1(), 2, true},
  };
  for (const auto& row : rows) {
    PicardReport r = picard(row.fan);  // throws on any exactness failure
    EXPECT_EQ(r.pic.free_rank, row.expected_rank) << row.name;
    EXPECT_TRUE(r.pic.invariant_factors.empty()) << row.name;
    if (row.complete) {
      Int oracle = static_cast<Int>(row.fan.rays().size()) - row.fan.rank();
      EXPECT_EQ(r.pic.free_rank, oracle) << row.name;
    }
  }
  report(5, "Pic(A2)=0, Pic(P1)=Z, Pic(P2)=Z, Pic(P1xP1)=Z^2, Pic(F1)=Z^2, "
            "cross-checked against #rays - rank; exactness certified");
}

// 6. The character kernel vanishes on the complete corpus fans and is
// Z*(0,1) on the single-ray fan in Z^2.
TEST(Acceptance, Criterion06KernelTerm) {
  for (const char* name : {"P1", "P2", "P1xP1", "F1"}) {
    for (const auto& entry : corpus::gallery())
      if (entry.name == name)
        EXPECT_TRUE(character_kernel(entry.fan).empty()) << name;
  }
  auto k = character_kernel(corpus::single_ray());
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(primitive(k[0]), (IntVec{0, 1}));
  report(6, "character kernel is 0 on complete corpus fans and Z*(0,1) on "
            "the single-ray fan");
}

// 7. The three equivalent compatibility conditions agree on 1000 randomized
// family candidates, valid and invalid, per corpus fan.
TEST(Acceptance, Criterion07KlyachkoEquivalence) {
  for (const auto& entry : corpus::gallery()) {
    tt::FamilySampler sampler(entry.fan);
    int checked = 0;
    while (checked < 1000) {
      auto fam = sampler.sample(rng);
      auto valid_report = check_family_conditions(entry.fan, fam.reps);
      EXPECT_TRUE(valid_report.agree()) << entry.name;
      EXPECT_TRUE(valid_report.ok()) << entry.name;
      ++checked;
      if (auto bad = tt::perturbed_reps(entry.fan, fam, rng)) {
        auto invalid_report = check_family_conditions(entry.fan, *bad);
        EXPECT_TRUE(invalid_report.agree()) << entry.name;
        EXPECT_FALSE(invalid_report.ok()) << entry.name;
        ++checked;
      }
    }
  }
  report(7, "the three family compatibility conditions agree on 1000 "
            "candidates per corpus fan");
}

// 8. Classification round trip: tuples of families survive the passage
// through jump data up to a column permutation; isomorphism holds exactly
// for permuted pairs and fails for single-jump perturbations.
TEST(Acceptance, Criterion08ClassificationRoundTrip) {
  for (const auto& entry : corpus::gallery()) {
    tt::FamilySampler sampler(entry.fan);
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<KlyachkoFamily> tuple;
        for (int k = 0; k < n; ++k) tuple.push_back(sampler.sample(rng));
        DeltaKlyachkoSpace space = tuple_to_space(tuple);

        auto r = space_to_tuple(space);
        auto* back = std::get_if<std::vector<KlyachkoFamily>>(&r);
        ASSERT_NE(back, nullptr) << entry.name;
        std::multiset<std::vector<IntVec>> want, got;
        for (const auto& f : tuple) want.insert(f.reps);
        for (const auto& f : *back) got.insert(f.reps);
        EXPECT_EQ(want, got) << entry.name;
        EXPECT_EQ(tuple_to_space(*back), space) << entry.name;

        // Isomorphism: permuted columns yes, any single bump no.
        DeltaKlyachkoSpace permuted = space;
        if (n > 1) {
          size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
          for (auto& row : permuted.jumps) std::swap(row[i], row[j]);
        }
        EXPECT_TRUE(isomorphic(space, permuted)) << entry.name;
        DeltaKlyachkoSpace bumped = space;
        bumped.jumps[rng() % bumped.jumps.size()][rng() % n] += 1;
        EXPECT_FALSE(isomorphic(space, bumped)) << entry.name;
      }
    }
  }
  report(8, "tuple -> space -> tuple recovers families up to column "
            "permutation on every corpus fan (n = 1..3, 100 tuples each)");
}

// 9. Random rank-2 and rank-3 cocycles built as disguised direct sums split
// back into the original multiset of line bundle classes, independent of
// the anchor choice.
TEST(Acceptance, Criterion09Splitting) {
  for (const auto& fan : {corpus::p1(), corpus::p2()}) {
    tt::FamilySampler sampler(fan);
    PicardContext ctx(fan);
    auto perms2 = all_permutations(2);
    auto perms3 = all_permutations(3);
    for (int n : {2, 3}) {
      for (int trial = 0; trial < 25; ++trial) {
        std::vector<KlyachkoFamily> families;
        std::vector<LineCocycle<Trop>> lines;
        std::multiset<IntVec> want;
        for (int k = 0; k < n; ++k) {
          families.push_back(sampler.sample(rng));
          lines.push_back(family_to_cocycle<Trop>(families.back()));
          want.insert(ctx.pic_class(families.back()));
        }
        RankCocycle<Trop> c = direct_sum(lines);
        std::map<int, GenPermUnit<Trop>> frames;
        const auto& perms = n == 2 ? perms2 : perms3;
        for (int ch : c.charts) {
          GenPermUnit<Trop> frame;
          frame.perm = perms[rng() % perms.size()];
          for (int i = 0; i < n; ++i)
            frame.diag.push_back(
                MonoidUnit<Trop>{random_unit_scalar(), IntVec(fan.rank(), 0)});
          frames[ch] = frame;
        }
        RankCocycle<Trop> disguised = conjugate(c, frames);

        for (SplitAnchor anchor :
             {SplitAnchor::SmallestChart, SplitAnchor::LargestChart}) {
          auto r = split_cocycle(disguised, anchor);
          auto* split = std::get_if<std::vector<LineCocycle<Trop>>>(&r);
          ASSERT_NE(split, nullptr);
          std::multiset<IntVec> got;
          for (const auto& l : *split)
            got.insert(classify_line_bundle(ctx, l).pic_coords);
          EXPECT_EQ(got, want);
        }
      }
    }
  }
  report(9, "disguised rank-2/3 direct sums over P1 and P2 split into the "
            "original class multisets under both anchors");
}

// 10. Every valid line cocycle over the affine-plane face fan trivializes;
// the equivariant obstruction fires exactly off the orthogonal characters.
TEST(Acceptance, Criterion10AffineTriviality) {
  Fan fan = corpus::a2();
  tt::FamilySampler sampler(fan);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = sampler.sample(rng);
    auto c = tt::face_fan_cocycle<Trop>(f);
    auto r = trivialize_affine(c);
    auto* t = std::get_if<AffineTrivialization<Trop>>(&r);
    ASSERT_NE(t, nullptr);
    for (int a : c.charts)
      for (int b : c.charts) {
        if (a == b) continue;
        EXPECT_EQ(t->units.at(a).inverse() * t->units.at(b),
                  c.transitions.at({a, b}));
      }
  }
  // The quadrant has trivial perp, so only the zero character passes.
  auto c = tt::face_fan_cocycle<Trop>(trivial_family(fan));
  for (Int x = -2; x <= 2; ++x)
    for (Int y = -2; y <= 2; ++y) {
      auto r = trivialize_affine(c, IntVec{x, y});
      bool obstructed = std::holds_alternative<EquivariantObstruction>(r);
      EXPECT_EQ(obstructed, !(x == 0 && y == 0));
    }
  report(10, "valid cocycles over the affine plane trivialize; equivariant "
             "obstruction fires exactly for characters outside the perp");
}

// 11. Matroid export: per-ray flat chains are nested and terminate at the
// empty set and the full ground set, across the criterion-8 batch sizes.
TEST(Acceptance, Criterion11MatroidExport) {
  for (const auto& entry : corpus::gallery()) {
    tt::FamilySampler sampler(entry.fan);
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<KlyachkoFamily> tuple;
        for (int k = 0; k < n; ++k) tuple.push_back(sampler.sample(rng));
        MatroidBundle m = matroid_bundle(tuple_to_space(tuple));
        EXPECT_EQ(m.ground, n);
        EXPECT_EQ(m.rays.size(), entry.fan.rays().size());
        for (const auto& chain : m.rays) {
          ASSERT_FALSE(chain.flats.empty());
          EXPECT_TRUE(chain.flats.front().members.empty());
          EXPECT_EQ(chain.flats.back().members.size(),
                    static_cast<size_t>(n));
          for (size_t i = 0; i + 1 < chain.flats.size(); ++i) {
            EXPECT_GT(chain.flats[i].threshold, chain.flats[i + 1].threshold);
            for (int k : chain.flats[i].members) {
              const auto& next = chain.flats[i + 1].members;
              EXPECT_TRUE(std::find(next.begin(), next.end(), k) != next.end());
            }
          }
        }
      }
    }
  }
  report(11, "per-ray flat chains are nested from the empty set to the full "
             "ground set on the criterion-8 batch");
}

}  // namespace
