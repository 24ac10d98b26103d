#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ltbe/ltbe.hpp"

namespace ltbe {
namespace {

const Value kTrue = Value::boolean(true);
const Value kFalse = Value::boolean(false);

TEST(Semiring, BoolOperations) {
  EXPECT_EQ(*add(kTrue, kFalse), kTrue);
  EXPECT_EQ(*add(kFalse, kFalse), kFalse);
  EXPECT_EQ(mul(kTrue, kFalse), kFalse);
  EXPECT_EQ(mul(kTrue, kTrue), kTrue);
  EXPECT_TRUE(leq(kFalse, kTrue));
  EXPECT_FALSE(leq(kTrue, kFalse));
  EXPECT_EQ(gap(kTrue, kFalse), 1.0);
  EXPECT_EQ(gap(kTrue, kTrue), 0.0);
}

TEST(Semiring, TropicalAddIsMin) {
  EXPECT_EQ(*add(Value::cost(3), Value::cost(5)), Value::cost(3));
  EXPECT_EQ(*add(Value::infinity(), Value::cost(4)), Value::cost(4));
  EXPECT_EQ(*add(Value::infinity(), Value::infinity()), Value::infinity());
}

TEST(Semiring, TropicalMulIsPlus) {
  EXPECT_EQ(mul(Value::cost(3), Value::cost(5)), Value::cost(8));
  EXPECT_EQ(mul(Value::cost(3), Value::infinity()), Value::infinity());
  EXPECT_EQ(mul(Value::cost(0), Value::cost(7)), Value::cost(7));
}

TEST(Semiring, TropicalOrderIsReversed) {
  EXPECT_TRUE(leq(Value::cost(5), Value::cost(3)));
  EXPECT_FALSE(leq(Value::cost(3), Value::cost(5)));
  EXPECT_TRUE(leq(Value::infinity(), Value::cost(0)));
  EXPECT_FALSE(leq(Value::cost(0), Value::infinity()));
}

TEST(Semiring, TropicalGap) {
  EXPECT_TRUE(std::isinf(gap(Value::infinity(), Value::cost(4))));
  EXPECT_EQ(gap(Value::cost(4), Value::cost(9)), 5.0);
  EXPECT_EQ(gap(Value::infinity(), Value::infinity()), 0.0);
}

TEST(Semiring, TropicalOverflowIsRejected) {
  const Value big = Value::cost(std::numeric_limits<std::uint64_t>::max());
  EXPECT_THROW(mul(big, Value::cost(1)), Error);
}

TEST(Semiring, ProbPartialAddition) {
  EXPECT_FALSE(add(Value::prob(0.7), Value::prob(0.6)).has_value());
  EXPECT_DOUBLE_EQ(add(Value::prob(0.25), Value::prob(0.5))->as_prob(), 0.75);
  EXPECT_DOUBLE_EQ(add(Value::prob(0.5), Value::prob(0.5))->as_prob(), 1.0);
}

TEST(Semiring, ProbAdditionToleratesRoundingAboveOne) {
  const auto s = add(Value::prob(0.1 + 0.2), Value::prob(0.7));
  ASSERT_TRUE(s.has_value());
  EXPECT_LE(s->as_prob(), 1.0);
}

TEST(Semiring, ProbMulAndGap) {
  EXPECT_DOUBLE_EQ(mul(Value::prob(0.5), Value::prob(0.5)).as_prob(), 0.25);
  EXPECT_DOUBLE_EQ(gap(Value::prob(0.25), Value::prob(0.5)), 0.25);
  EXPECT_TRUE(leq(Value::prob(0.25), Value::prob(0.5)));
}

TEST(Semiring, ProbOutsideUnitIntervalIsRejected) {
  EXPECT_THROW(Value::prob(1.5), Error);
  EXPECT_THROW(Value::prob(-0.1), Error);
  EXPECT_THROW(Value::prob(std::nan("")), Error);
}

TEST(Semiring, ZeroAndOne) {
  EXPECT_EQ(Value::one(SemiringKind::Tropical), Value::cost(0));
  EXPECT_EQ(Value::zero(SemiringKind::Tropical), Value::infinity());
  EXPECT_EQ(Value::one(SemiringKind::Prob), Value::prob(1));
  EXPECT_EQ(Value::zero(SemiringKind::Prob), Value::prob(0));
  EXPECT_TRUE(Value::one(SemiringKind::Bool).is_one());
  EXPECT_TRUE(Value::zero(SemiringKind::Bool).is_zero());
}

TEST(Semiring, MixedKindsAreRejected) {
  try {
    (void)add(Value::prob(0.5), Value::cost(1));
    FAIL() << "expected KindMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
  EXPECT_THROW(mul(kTrue, Value::prob(1)), Error);
  EXPECT_THROW(leq(kTrue, Value::cost(1)), Error);
  EXPECT_THROW(Value::cost(3).as_prob(), Error);
}

TEST(Semiring, ParseValue) {
  EXPECT_EQ(parse_value(SemiringKind::Tropical, "inf"), Value::infinity());
  EXPECT_EQ(parse_value(SemiringKind::Tropical, "12"), Value::cost(12));
  EXPECT_EQ(parse_value(SemiringKind::Bool, "true"), kTrue);
  EXPECT_DOUBLE_EQ(parse_value(SemiringKind::Prob, "0.125").as_prob(), 0.125);
  EXPECT_THROW(parse_value(SemiringKind::Tropical, "-1"), Error);
  EXPECT_THROW(parse_value(SemiringKind::Prob, "0.5x"), Error);
  EXPECT_THROW(parse_value(SemiringKind::Bool, "yes"), Error);
  EXPECT_THROW(parse_kind("real"), Error);
}

TEST(Semiring, JsonRoundTrip) {
  for (const Value& v : {kTrue, Value::prob(0.375), Value::cost(4), Value::infinity()}) {
    EXPECT_EQ(value_from_json(v.kind(), value_to_json(v)), v);
  }
  EXPECT_THROW(value_from_json(SemiringKind::Tropical, nlohmann::json(-3)), Error);
  EXPECT_THROW(value_from_json(SemiringKind::Bool, nlohmann::json(1)), Error);
}

TEST(SemiringLaws, AllKindsPass) {
  for (auto kind : {SemiringKind::Bool, SemiringKind::Prob, SemiringKind::Tropical}) {
    const LawReport r = check_semiring_laws(kind, 2000, 7);
    EXPECT_TRUE(r.all_passed()) << r.summary();
  }
}

TEST(SemiringLaws, BoolIsExhaustive) {
  const LawReport r = check_semiring_laws(SemiringKind::Bool, 1, 1);
  for (const auto& law : r.results) {
    if (law.law == "add-commutative") EXPECT_EQ(law.checked, 8u);
  }
}

// Distributivity of tropical multiplication over min, independently evaluated.
TEST(SemiringProperty, TropicalDistributesOverMin) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> d(0, 1000);
  for (int i = 0; i < 1000; ++i) {
    const auto a = d(rng), b = d(rng), c = d(rng);
    EXPECT_EQ(mul(Value::cost(a), *add(Value::cost(b), Value::cost(c))),
              Value::cost(a + std::min(b, c)));
  }
}

}  // namespace
}  // namespace ltbe
