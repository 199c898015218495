#include "margulis/packing.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles/oracle.hpp"

namespace margulis::packing {
namespace {

using bounds::BoundParams;

const Isometry kParabolicX(1.0, 1.0, 0.0, 1.0);
const Isometry kParabolicI(1.0, Complex(0.0, 1.0), 0.0, 1.0);
const Isometry kSanovX(1.0, 2.0, 0.0, 1.0);
const Isometry kSanovY(1.0, 0.0, 2.0, 1.0);

oracle::BigMat big(const Isometry& g) {
  auto c = [](Complex z) { return oracle::BigComplex{z.real(), z.imag()}; };
  return {c(g.a()), c(g.b()), c(g.c()), c(g.d())};
}

TEST(CosetLowerBound, Examples) {
  EXPECT_NEAR(coset_lower_bound(1), std::log(4.0 / 5.0), 1e-15);
  // log(2 * 1594322 / 53), mpmath
  EXPECT_NEAR(coset_lower_bound(13), 11.004814392467578371, 1e-13);
  EXPECT_NEAR(coset_lower_bound(1000), 1091.011136239812401676808, 1e-10);
}

TEST(CosetLowerBound, ExactAndLogPathsAgree) {
  for (std::uint64_t n = 1; n <= kExactCosetLimit; ++n) {
    EXPECT_NEAR(coset_lower_bound_exact(n), coset_lower_bound_log(n), 1e-12) << n;
  }
  EXPECT_THROW(coset_lower_bound(0), DomainError);
}

TEST(PackingConstant, Certificate) {
  const double v = hypgeom::ball_volume(0.052);
  EXPECT_NEAR(v, 0.000589, 0.000589e-3);
  const Extended ratio = packing_constant_ratio<Extended>(0.104);
  // 1 / (sinh 0.104 - 0.104) = 5331.0943536..., mpmath
  EXPECT_NEAR(static_cast<double>(ratio), 5331.0943536319813468, 1e-9);
  EXPECT_GT(ratio, Extended(5330));
  EXPECT_LT(ratio, Extended(5334));
}

TEST(PackingChain, BlockedAtN0104) {
  const auto r = packing_chain_check(BoundParams::with_lambda(0.104));
  EXPECT_EQ(r.n, 13u);
  EXPECT_GE(r.margin, 0.0);
  EXPECT_DOUBLE_EQ(r.margin, r.coset_lower - r.volume_ratio);
  EXPECT_NEAR(r.constant_ratio, 5331.0943536319813468, 1e-8);
  EXPECT_EQ(r.constant_bound, 5334.0);
  const auto e = packing_chain_check(BoundParams::with_lambda(0.104), Precision::extended);
  EXPECT_EQ(e.n, 13u);
  EXPECT_NEAR(e.small_ball_volume, 0.00058929601413816304102, 3e-19);
}

TEST(PackingChain, MarginRederivedWithoutGap) {
  // margin = log 2(3^N-1)/(4N+1) - log[(sinh(2N lambda + mu) - ...)/(sinh mu - mu)],
  // evaluated here directly in 256 bits.
  for (double lambda : {0.1005, 0.15, 0.2, 0.3, 0.4, 0.45}) {
    const auto r = packing_chain_check(BoundParams::with_lambda(lambda));
    oracle::Big pow3 = 1;
    for (std::uint64_t i = 0; i < r.n; ++i) pow3 *= 3;
    const oracle::Big x = oracle::Big(2) * oracle::Big(r.n) * oracle::Big(lambda) + oracle::Big(0.104);
    const oracle::Big mu(0.104);
    const oracle::Big coset = 2 * (pow3 - 1) / oracle::Big(4 * r.n + 1);
    const oracle::Big ratio = (sinh(x) - x) / oracle::series_sinh_minus_x(mu);
    EXPECT_GE(coset, ratio) << lambda;
    EXPECT_NEAR(r.margin, static_cast<double>(log(coset) - log(ratio)), 1e-9) << lambda;
  }
}

TEST(PackingChain, DegenerateMuFailsCertificate) {
  BoundParams p = BoundParams::with_lambda(0.3);
  p.mu = 1e-3;
  EXPECT_THROW(packing_chain_check(p), DomainError);
  EXPECT_THROW(packing_chain_check(p, Precision::extended), DomainError);
}

TEST(RelationLengthBound, Examples) {
  EXPECT_EQ(relation_length_bound(BoundParams::with_lambda(0.104)), 104u);
  EXPECT_EQ(relation_length_bound(BoundParams::with_lambda(0.3)), 8u * 24u);
  BoundParams tiny = BoundParams::with_lambda(1e-6);
  tiny.mu = 1e-6;
  EXPECT_EQ(relation_length_bound(tiny), 8u);
}

TEST(SearchRelation, CommutingParabolics) {
  const auto w = search_relation({kParabolicX, kParabolicI}, 6);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->to_string(), "xyXY");
  EXPECT_LE(w->length(), relation_length_bound(BoundParams::with_lambda(0.104)));
}

TEST(SearchRelation, EqualGenerators) {
  const auto w = search_relation({kParabolicX, kParabolicX}, 4);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->to_string(), "xY");
}

TEST(SearchRelation, MinusIdentityCounts) {
  // x of order 4 in SL(2,C) is an involution in PSL: x^2 = -I.
  const Isometry rot(0.0, -1.0, 1.0, 0.0);
  const auto w = search_relation({rot, kSanovY}, 4);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->to_string(), "xx");
}

TEST(SearchRelation, SanovPairIsFreeUpTo12) {
  EXPECT_FALSE(search_relation({kSanovX, kSanovY}, 12, 1e-6).has_value());
}

TEST(SearchRelation, SanovProductsStayFarFromIdentity) {
  // Independent re-check on a lower radius: evaluate every nontrivial word of
  // V_8 in 256-bit arithmetic.
  const auto ball = freegroup::enumerate_ball(8);
  oracle::Big closest = 1e9;
  for (std::size_t i = 1; i < ball.size(); ++i) {
    closest = std::min(closest, oracle::distance_to_projective_identity(ball[i].to_string(), big(kSanovX), big(kSanovY)));
  }
  EXPECT_GE(closest, oracle::Big(1));
}

TEST(SearchRelation, HitsRecheckAtExtendedPrecision) {
  const std::pair<Isometry, Isometry> pairs[] = {
      {kParabolicX, kParabolicI},
      {kParabolicX, kParabolicX},
      {Isometry(0.0, -1.0, 1.0, 0.0), Isometry(1.0, 1.0, -1.0, 0.0)},  // modular group: S^2 = (ST)^3 = -I
  };
  for (const auto& [x, y] : pairs) {
    const auto w = search_relation({x, y}, 8);
    ASSERT_TRUE(w.has_value());
    EXPECT_LT(oracle::distance_to_projective_identity(w->to_string(), big(x), big(y)), oracle::Big(1e-9))
        << w->to_string();
    EXPECT_LT(std::abs(evaluate(*w, x, y).trace()) - 2.0, 1e-9);
  }
}

TEST(SearchRelation, ShortestAndFirstInShortlex) {
  // For the modular-group pair every relation shorter than the returned one
  // must fail; checked by scanning V_{|w|-1} with the 256-bit evaluator.
  const Isometry s(0.0, -1.0, 1.0, 0.0), u(1.0, 1.0, -1.0, 0.0);
  const auto w = search_relation({s, u}, 8);
  ASSERT_TRUE(w.has_value());
  const auto ball = freegroup::enumerate_ball(w->length());
  for (std::size_t i = 1; i < ball.size(); ++i) {
    const auto v = ball[i];
    if (!(v < *w)) break;
    EXPECT_GT(oracle::distance_to_projective_identity(v.to_string(), big(s), big(u)), oracle::Big(1e-6))
        << v.to_string();
  }
}

TEST(SearchRelation, CapAndToleranceChecked) {
  EXPECT_THROW(search_relation({kSanovX, kSanovY}, 15), CapExceeded);
  EXPECT_THROW(search_relation({kSanovX, kSanovY}, 3, 0.0), DomainError);
  EXPECT_FALSE(search_relation({kSanovX, kSanovY}, 0).has_value());
}

TEST(Evaluate, WordProduct) {
  const auto w = freegroup::ReducedWord::parse("xyXY");
  const auto m = evaluate(w, kParabolicX, kParabolicI);
  EXPECT_NEAR(std::abs(m.a() - 1.0) + std::abs(m.b()) + std::abs(m.c()) + std::abs(m.d() - 1.0), 0.0, 1e-15);
}

}  // namespace
}  // namespace margulis::packing
