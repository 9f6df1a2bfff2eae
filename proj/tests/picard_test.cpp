#include "tropvb/picard.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tropvb/corpus.hpp"
#include "test_support.hpp"

using namespace tropvb;
namespace tt = tropvb::testing;

namespace {

std::mt19937_64 rng(140719);

TEST(CharacterKernel, FullDimensionalConeKillsEverything) {
  EXPECT_TRUE(character_kernel(corpus::a2()).empty());
  EXPECT_TRUE(character_kernel(corpus::p2()).empty());
  EXPECT_TRUE(character_kernel(corpus::p1()).empty());
}

TEST(CharacterKernel, SingleRayKeepsOneDirection) {
  auto k = character_kernel(corpus::single_ray());
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(primitive(k[0]), (IntVec{0, 1}));
}

TEST(EquivariantPicard, CorpusGroups) {
  EXPECT_EQ(equivariant_picard(corpus::a2()).group.free_rank, 2);
  EXPECT_EQ(equivariant_picard(corpus::p1()).group.free_rank, 2);
  EXPECT_EQ(equivariant_picard(corpus::p2()).group.free_rank, 3);
  EXPECT_EQ(equivariant_picard(corpus::p1xp1()).group.free_rank, 4);
  EXPECT_EQ(equivariant_picard(corpus::f1()).group.free_rank, 4);
  for (const auto& entry : corpus::gallery())
    EXPECT_TRUE(equivariant_picard(entry.fan).group.invariant_factors.empty())
        << entry.name;
}

TEST(EquivariantPicard, GeneratorsAreValidFamilies) {
  for (const auto& entry : corpus::gallery()) {
    auto eq = equivariant_picard(entry.fan);
    EXPECT_EQ(eq.generators.size(), eq.group.coords());
    for (const auto& g : eq.generators)
      EXPECT_FALSE(check_family(entry.fan, g.reps).has_value()) << entry.name;
  }
}

TEST(Picard, CorpusGroupsMatchTheClassicalCount) {
  struct Expected {
    const char* name;
    Int pic_rank;
  };
  // For the smooth complete fans, rank = #rays - rank(Lambda).
  EXPECT_EQ(picard(corpus::a2()).pic.free_rank, 0);
  EXPECT_EQ(picard(corpus::p1()).pic.free_rank, 1);
  EXPECT_EQ(picard(corpus::p2()).pic.free_rank, 1);
  EXPECT_EQ(picard(corpus::p1xp1()).pic.free_rank, 2);
  EXPECT_EQ(picard(corpus::f1()).pic.free_rank, 2);
  for (const auto& entry : corpus::gallery()) {
    auto r = picard(entry.fan);
    EXPECT_TRUE(r.pic.invariant_factors.empty()) << entry.name;
  }
}

TEST(Picard, ReportShapes) {
  auto r = picard(corpus::p2());
  EXPECT_EQ(r.psi.size(), r.pic_g.coords());
  for (const auto& row : r.psi) EXPECT_EQ(row.size(), 2u);
  EXPECT_EQ(r.forget.size(), r.pic.coords());
  EXPECT_TRUE(r.kernel.empty());
}

TEST(Picard, SingleRayFanIsExact) {
  auto r = picard(corpus::single_ray());
  // Pic_G = Z (one ray chart, quotient by its perp), kernel = Z.
  EXPECT_EQ(r.kernel.size(), 1u);
  EXPECT_EQ(r.pic_g.free_rank, 1);
  EXPECT_EQ(r.pic.free_rank, 0);
}

TEST(Picard, InvalidFanIsRejected) {
  Fan bad(1, {{1}, {-1}}, {{0}, {1}});
  EXPECT_THROW(picard(bad), Error);
}

TEST(Classify, TrivialCocycleIsZeroWithTrivialLift) {
  Fan fan = corpus::p2();
  PicardContext ctx(fan);
  auto c = family_to_cocycle<Trop>(trivial_family(fan));
  auto cls = classify_line_bundle(ctx, c);
  EXPECT_TRUE(ctx.pic().is_trivial_element(cls.pic_coords));
  EXPECT_EQ(cls.lift, trivial_family(fan));
}

TEST(Classify, RoundTripsThroughFamilies) {
  for (const auto& entry : corpus::gallery()) {
    PicardContext ctx(entry.fan);
    for (int trial = 0; trial < 100; ++trial) {
      auto f = tt::random_family(entry.fan, rng);
      auto cls = classify_line_bundle(ctx, family_to_cocycle<Trop>(f));
      EXPECT_EQ(cls.pic_coords, ctx.pic_class(f)) << entry.name;
    }
  }
}

TEST(Classify, P1DegreeBookkeeping) {
  Fan fan = corpus::p1();
  PicardContext ctx(fan);
  ASSERT_EQ(ctx.pic().free_rank, 1);
  auto degree_class = [&](Int d) {
    // Transition exponent d on the torus overlap.
    auto f = make_family(fan, {{0}, {0}, {d}});
    return classify_line_bundle(ctx, family_to_cocycle<Trop>(f)).pic_coords;
  };
  IntVec one = degree_class(1);
  EXPECT_NE(one, (IntVec{0}));
  for (Int d = -3; d <= 3; ++d)
    EXPECT_EQ(degree_class(d), vec_scale(d, one));
  // Scalar rescalings do not move the class.
  auto f = make_family(fan, {{0}, {0}, {2}});
  auto c = family_to_cocycle<Trop>(f);
  for (auto& [key, unit] : c.transitions)
    unit.scalar = key.first < key.second ? Trop(5) : Trop(-5);
  EXPECT_EQ(classify_line_bundle(ctx, c).pic_coords, degree_class(2));
}

TEST(Classify, GroupLawMatchesFamilyProduct) {
  Fan fan = corpus::f1();
  PicardContext ctx(fan);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = tt::random_family(fan, rng);
    auto b = tt::random_family(fan, rng);
    IntVec sum = ctx.pic_g().normalize(
        vec_add(ctx.pic_g_class(a), ctx.pic_g_class(b)));
    EXPECT_EQ(ctx.pic_g_class(family_mul(a, b)), sum);
  }
}

TEST(Classify, CharacterTwistsDieInPic) {
  Fan fan = corpus::p1xp1();
  PicardContext ctx(fan);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = tt::random_family(fan, rng);
    IntVec x{static_cast<Int>(rng() % 7) - 3, static_cast<Int>(rng() % 7) - 3};
    // Twist by a character: add x to every representative.
    std::vector<IntVec> reps = f.reps;
    for (auto& r : reps) r = vec_add(r, x);
    auto twisted = make_family(fan, reps);
    EXPECT_EQ(ctx.pic_class(twisted), ctx.pic_class(f));
    if (!is_zero_vec(x))
      EXPECT_NE(ctx.pic_g_class(twisted), ctx.pic_g_class(f));
  }
}

}  // namespace
