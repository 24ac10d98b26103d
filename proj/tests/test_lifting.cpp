#include <gtest/gtest.h>

#include <set>

#include "ltbe/ltbe.hpp"
#include "support/generators.hpp"

namespace ltbe {
namespace {

using testing::Gen;
using testing::ids;

const SemiringKind kKinds[] = {SemiringKind::Bool, SemiringKind::Prob, SemiringKind::Tropical};

Term stop() { return Term::inj(0, Term::atom("*")); }
Term step(const std::string& label, const std::string& s) {
  return Term::inj(1, Term::pair(Term::atom(label), Term::state(s)));
}
Term weighted(SemiringKind kind, std::vector<std::pair<std::string, Value>> entries) {
  std::vector<std::pair<Term, Value>> out;
  for (auto& [s, w] : entries) out.emplace_back(Term::state(s), w);
  return Term::branch(make_branchval(kind, std::move(out)));
}

TEST(LiftPoly, TerminationAndLabels) {
  const PolyExpr f = parse_poly("1 + {a,b} * Id");
  ValRel r(SemiringKind::Prob, {"x"}, {"y"}, Value::prob(0.4));
  EXPECT_EQ(lift_poly_entry(f, r, stop(), stop()), Value::prob(1));
  EXPECT_EQ(lift_poly_entry(f, r, step("a", "x"), step("a", "y")), Value::prob(0.4));
  EXPECT_EQ(lift_poly_entry(f, r, step("a", "x"), step("b", "y")), Value::prob(0));
  EXPECT_EQ(lift_poly_entry(f, r, stop(), step("a", "y")), Value::prob(0));
}

TEST(LiftPoly, ProductMultiplies) {
  const PolyExpr f = parse_poly("Id * Id");
  ValRel r(SemiringKind::Tropical, {"x1", "x2"}, {"y"}, Value::cost(0));
  r.set(0, 0, Value::cost(2));
  r.set(1, 0, Value::cost(5));
  const Term u = Term::pair(Term::state("x1"), Term::state("x2"));
  const Term v = Term::pair(Term::state("y"), Term::state("y"));
  EXPECT_EQ(lift_poly_entry(f, r, u, v), Value::cost(7));
}

TEST(LiftPoly, PowerFoldsOverComponents) {
  const PolyExpr f = parse_poly("Id^{a,b}");
  ValRel r(SemiringKind::Bool, {"x1", "x2"}, {"y"}, Value::boolean(true));
  r.set(1, 0, Value::boolean(false));
  auto tup = [](const std::string& p, const std::string& q) {
    return Term::tuple({{"a", Term::state(p)}, {"b", Term::state(q)}});
  };
  EXPECT_EQ(lift_poly_entry(f, r, tup("x1", "x1"), tup("y", "y")), Value::boolean(true));
  EXPECT_EQ(lift_poly_entry(f, r, tup("x1", "x2"), tup("y", "y")), Value::boolean(false));
}

TEST(LiftPoly, FullLiftHasEnumeratedCarriers) {
  const PolyExpr f = parse_poly("1 + {a} * Id");
  const ValRel r = top({"x1", "x2"}, {"y"}, SemiringKind::Bool);
  const ValRel lifted = lift_poly(f, r);
  EXPECT_EQ(lifted.rows().size(), 3u);
  EXPECT_EQ(lifted.cols().size(), 2u);
}

TEST(LiftPoly, ShapeMismatchIsTypeError) {
  const PolyExpr f = parse_poly("Id * Id");
  const ValRel r = top({"x"}, {"y"}, SemiringKind::Bool);
  try {
    (void)lift_poly_entry(f, r, Term::state("x"), Term::state("y"));
    FAIL() << "expected TypeError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeError);
  }
}

TEST(Extension, TropicalMinimumOverSupport) {
  ValRel r(SemiringKind::Tropical, {"x1", "x2"}, {"y"}, Value::cost(0));
  r.set(0, 0, Value::cost(3));
  const Term t = weighted(SemiringKind::Tropical, {{"x1", Value::cost(2)}, {"x2", Value::cost(5)}});
  EXPECT_EQ(lift_extension(r, {t}).at(0, 0), Value::cost(5));
}

TEST(Extension, ProbScalesByWeight) {
  const ValRel r = top({"x"}, {"y"}, SemiringKind::Prob);
  const Term t = weighted(SemiringKind::Prob, {{"x", Value::prob(0.5)}});
  EXPECT_DOUBLE_EQ(lift_extension(r, {t}).at(0, 0).as_prob(), 0.5);
}

TEST(Extension, EmptyValueGivesZero) {
  for (auto k : kKinds) {
    const ValRel r = top({"x"}, {"y"}, k);
    EXPECT_EQ(lift_extension(r, {weighted(k, {})}).at(0, 0), Value::zero(k));
  }
}

TEST(Extension, KindMismatchIsRejected) {
  const ValRel r = top({"x"}, {"y"}, SemiringKind::Bool);
  try {
    (void)lift_extension(r, {weighted(SemiringKind::Prob, {{"x", Value::prob(1)}})});
    FAIL() << "expected KindMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}

TEST(DoubleExtension, TropicalExample) {
  ValRel r(SemiringKind::Tropical, {"x"}, {"y1", "y2"}, Value::cost(0));
  r.set(0, 0, Value::cost(7));
  r.set(0, 1, Value::cost(2));
  const Term t = weighted(SemiringKind::Tropical, {{"x", Value::cost(1)}});
  const Term u = weighted(SemiringKind::Tropical, {{"y1", Value::cost(0)}, {"y2", Value::cost(4)}});
  EXPECT_EQ(lift_double_extension(r, {t}, {u}).at(0, 0), Value::cost(7));
}

TEST(EgliMilner, EmptySets) {
  const ValRel r = top({"x"}, {"y"}, SemiringKind::Bool);
  const Term empty = Term::branch(make_subset({}));
  const Term some = Term::branch(make_subset({Term::state("x")}));
  EXPECT_EQ(lift_egli_milner(r, {empty}, {empty}).at(0, 0), Value::boolean(true));
  EXPECT_EQ(lift_egli_milner(r, {some}, {empty}).at(0, 0), Value::boolean(false));
  EXPECT_EQ(lift_egli_milner(r, {empty}, {Term::branch(make_subset({Term::state("y")}))}).at(0, 0),
            Value::boolean(false));
}

TEST(EgliMilner, BothDirectionsNeeded) {
  ValRel r(SemiringKind::Bool, {"x1", "x2"}, {"y"}, Value::boolean(false));
  r.set(0, 0, Value::boolean(true));
  const Term u = Term::branch(make_subset({Term::state("x1"), Term::state("x2")}));
  const Term v = Term::branch(make_subset({Term::state("y")}));
  EXPECT_EQ(lift_egli_milner(r, {u}, {v}).at(0, 0), Value::boolean(false));
  r.set(1, 0, Value::boolean(true));
  EXPECT_EQ(lift_egli_milner(r, {u}, {v}).at(0, 0), Value::boolean(true));
}

TEST(EgliMilner, NonBoolIsRejected) {
  const ValRel r = top({"x"}, {"y"}, SemiringKind::Prob);
  EXPECT_THROW(lift_egli_milner(r, {}, {}), Error);
}

// Every property below compares against an independent evaluation.

std::vector<Term> random_branches(Gen& g, SemiringKind k, const std::vector<std::string>& xs, int n) {
  std::vector<Term> cands;
  for (const auto& x : xs) cands.push_back(Term::state(x));
  std::vector<Term> out;
  std::set<std::string> seen;
  for (int i = 0; i < n; ++i) {
    Term t = Term::branch(g.branch(k, cands, xs.size()));
    if (seen.insert(t.key()).second) out.push_back(t);
  }
  return out;
}

TEST(ExtensionProperty, UnitLaw) {
  Gen g(11);
  for (auto k : kKinds) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto xs = ids("x", g.uniform(1, 5));
      const auto ys = ids("y", g.uniform(1, 5));
      const ValRel r = g.relation(k, xs, ys);
      std::vector<Term> units;
      for (const auto& x : xs) units.push_back(Term::branch(unit_branchval(k, Term::state(x))));
      const ValRel lifted = lift_extension(r, units);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) EXPECT_EQ(lifted.at(i, j), r.at(i, j));
      }
    }
  }
}

TEST(ExtensionProperty, BoolIsExistence) {
  Gen g(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto xs = ids("x", g.uniform(1, 4));
    const auto ys = ids("y", g.uniform(1, 4));
    const ValRel r = g.relation(SemiringKind::Bool, xs, ys);
    const auto ts = random_branches(g, SemiringKind::Bool, xs, 4);
    const ValRel lifted = lift_extension(r, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        bool any = false;
        for (const auto& [x, w] : ts[i].branch_value().support) any = any || r.at(x.key(), ys[j]).as_bool();
        EXPECT_EQ(lifted.at(i, j).as_bool(), any);
      }
    }
  }
}

TEST(ExtensionProperty, BilinearIsLeftThenRight) {
  Gen g(13);
  for (auto k : kKinds) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto xs = ids("x", g.uniform(1, 4));
      const auto ys = ids("y", g.uniform(1, 4));
      const ValRel r = g.relation(k, xs, ys);
      const auto ts = random_branches(g, k, xs, 3);
      const auto us = random_branches(g, k, ys, 3);
      const ValRel both = lift_double_extension(r, ts, us);
      const ValRel staged = lift_right_extension(lift_extension(r, ts), us);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = 0; j < us.size(); ++j) {
          EXPECT_TRUE(approx_equal(both.at(i, j), staged.at(i, j)))
              << both.at(i, j).to_string() << " vs " << staged.at(i, j).to_string();
        }
      }
    }
  }
}

TEST(ExtensionProperty, EgliMilnerBelowBilinearForNonemptySets) {
  Gen g(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto xs = ids("x", g.uniform(1, 4));
    const auto ys = ids("y", g.uniform(1, 4));
    const ValRel r = g.relation(SemiringKind::Bool, xs, ys);
    const auto ts = random_branches(g, SemiringKind::Bool, xs, 3);
    const auto us = random_branches(g, SemiringKind::Bool, ys, 3);
    const ValRel em = lift_egli_milner(r, ts, us);
    const ValRel bi = lift_double_extension(r, ts, us);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = 0; j < us.size(); ++j) {
        if (ts[i].branch_value().support.empty()) continue;
        EXPECT_TRUE(leq(em.at(i, j), bi.at(i, j)));
      }
    }
  }
}

TEST(LiftingProperty, AllLiftingsAreMonotone) {
  Gen g(15);
  const PolyExpr f = parse_poly("1 + {a,b} * Id * Id");
  for (auto k : kKinds) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto xs = ids("x", g.uniform(1, 3));
      const auto ys = ids("y", g.uniform(1, 3));
      const ValRel big = g.relation(k, xs, ys);
      const ValRel small = g.below(big);
      ASSERT_TRUE(pointwise_leq(small, big));
      EXPECT_TRUE(pointwise_leq(lift_poly(f, small), lift_poly(f, big)));
      const auto ts = random_branches(g, k, xs, 3);
      const auto us = random_branches(g, k, ys, 3);
      EXPECT_TRUE(pointwise_leq(lift_extension(small, ts), lift_extension(big, ts)));
      EXPECT_TRUE(pointwise_leq(lift_double_extension(small, ts, us), lift_double_extension(big, ts, us)));
      if (k == SemiringKind::Bool) {
        EXPECT_TRUE(pointwise_leq(lift_egli_milner(small, ts, us), lift_egli_milner(big, ts, us)));
      }
    }
  }
}

}  // namespace
}  // namespace ltbe
