#include <gtest/gtest.h>

#include "ltbe/ltbe.hpp"

namespace ltbe {
namespace {

TEST(Branching, CanonicalizesEntries) {
  const BranchVal v = make_branchval(SemiringKind::Prob, {{Term::state("y"), Value::prob(0.25)},
                                                          {Term::state("x"), Value::prob(0.5)},
                                                          {Term::state("z"), Value::prob(0)}});
  ASSERT_EQ(v.support.size(), 2u);
  EXPECT_EQ(v.support[0].first.key(), "x");
  EXPECT_TRUE(validate_branchval(v));
  EXPECT_DOUBLE_EQ(total_mass(v), 0.75);
}

TEST(Branching, ExcessMassIsInvalid) {
  const BranchVal raw{SemiringKind::Prob,
                      {{Term::state("x"), Value::prob(0.5)}, {Term::state("y"), Value::prob(0.6)}}};
  EXPECT_FALSE(validate_branchval(raw));
  EXPECT_THROW(make_branchval(SemiringKind::Prob, raw.support), Error);
}

TEST(Branching, UnsortedOrZeroSupportIsInvalid) {
  const BranchVal unsorted{SemiringKind::Bool,
                           {{Term::state("y"), Value::boolean(true)}, {Term::state("x"), Value::boolean(true)}}};
  EXPECT_FALSE(validate_branchval(unsorted));
  const BranchVal zero{SemiringKind::Tropical, {{Term::state("x"), Value::infinity()}}};
  EXPECT_FALSE(validate_branchval(zero));
}

TEST(Branching, DuplicateKeysAreRejected) {
  try {
    (void)make_subset({Term::state("x"), Term::state("x")});
    FAIL() << "expected ValidationError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  }
}

TEST(Branching, ForeignKindWeightIsRejected) {
  try {
    (void)make_branchval(SemiringKind::Prob, {{Term::state("x"), Value::cost(1)}});
    FAIL() << "expected KindMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}

TEST(Branching, EmptyValueIsValid) {
  for (auto kind : {SemiringKind::Bool, SemiringKind::Prob, SemiringKind::Tropical}) {
    EXPECT_TRUE(validate_branchval(make_branchval(kind, {})));
  }
}

TEST(Branching, UnitIsSingletonWithWeightOne) {
  const BranchVal v = unit_branchval(SemiringKind::Tropical, Term::state("x"));
  ASSERT_EQ(v.support.size(), 1u);
  EXPECT_EQ(v.support[0].second, Value::cost(0));
}

TEST(MonadConsistency, ProbMapIsInjectiveNotSurjective) {
  const MonadReport r = check_monad_consistency(SemiringKind::Prob, 2);
  EXPECT_TRUE(r.laws.all_passed()) << r.laws.summary();
  EXPECT_TRUE(r.injective);
  EXPECT_FALSE(r.surjective);
  ASSERT_FALSE(r.missing.empty());
  double mass = 0;
  for (const auto& v : r.missing.front().first) mass += v.as_prob();
  for (const auto& v : r.missing.front().second) mass += v.as_prob();
  EXPECT_GT(mass, 1.0);
}

TEST(MonadConsistency, BoolAndTropicalMapsAreBijective) {
  for (auto kind : {SemiringKind::Bool, SemiringKind::Tropical}) {
    const MonadReport r = check_monad_consistency(kind, 2);
    EXPECT_TRUE(r.laws.all_passed()) << r.laws.summary();
    EXPECT_TRUE(r.injective);
    EXPECT_TRUE(r.surjective);
  }
}

TEST(MonadConsistency, SizeBoundIsChecked) {
  EXPECT_THROW(check_monad_consistency(SemiringKind::Bool, 0), Error);
  EXPECT_THROW(check_monad_consistency(SemiringKind::Bool, 5), Error);
}

}  // namespace
}  // namespace ltbe
