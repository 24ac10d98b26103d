#include <gtest/gtest.h>

#include <set>

#include "ltbe/ltbe.hpp"
#include "support/generators.hpp"

namespace ltbe {
namespace {

Term stop() { return Term::inj(0, Term::atom("*")); }
Term step(const std::string& label, const std::string& s) {
  return Term::inj(1, Term::pair(Term::atom(label), Term::state(s)));
}

TEST(PolyExpr, ParsesAndPrintsCanonically) {
  const PolyExpr e = parse_poly("1 + {a} * Id");
  EXPECT_EQ(e.tag(), PolyExpr::Tag::Coprod);
  EXPECT_EQ(parse_poly(e.to_string()), e);
  EXPECT_EQ(parse_poly("{*} + {a}*Id"), e);
}

TEST(PolyExpr, PowerAndNesting) {
  const PolyExpr e = parse_poly("{acc,rej} * Id^{a,b}");
  EXPECT_EQ(e.tag(), PolyExpr::Tag::Prod);
  EXPECT_EQ(e.children()[1].tag(), PolyExpr::Tag::Power);
  EXPECT_EQ(parse_poly(e.to_string()), e);
  const PolyExpr nested = parse_poly("(Id + 1)^{x} * (Id * Id)");
  EXPECT_EQ(parse_poly(nested.to_string()), nested);
}

TEST(PolyExpr, RejectsMalformedText) {
  for (const char* bad : {"", "Id +", "{}", "{a,a}", "Id^{}", "(Id", "Foo", "Id Id"}) {
    try {
      (void)parse_poly(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) << bad;
    }
  }
}

TEST(PolyExpr, ValidateTerm) {
  const PolyExpr f = parse_poly("1 + {a} * Id");
  const std::vector<std::string> states{"s", "t"};
  EXPECT_TRUE(validate_term(f, stop(), states));
  EXPECT_TRUE(validate_term(f, step("a", "s"), states));
  EXPECT_FALSE(validate_term(f, step("b", "s"), states));
  EXPECT_FALSE(validate_term(f, step("a", "u"), states));
  EXPECT_FALSE(validate_term(f, Term::inj(2, Term::atom("*")), states));
  EXPECT_FALSE(validate_term(f, Term::inj(1, Term::atom("a")), states));
}

TEST(PolyExpr, EnumerateSmallFunctor) {
  const auto terms = enumerate_terms(parse_poly("1 + {a,b} * Id"), std::vector<std::string>{"s", "t"});
  EXPECT_EQ(terms.size(), 5u);
  std::set<std::string> keys;
  for (const auto& t : terms) keys.insert(t.key());
  EXPECT_EQ(keys.size(), 5u);
}

TEST(PolyExpr, PowerCountIsBaseToTheExponent) {
  const PolyExpr e = parse_poly("(1 + Id)^{a,b,c}");
  EXPECT_EQ(count_terms(e, 2, 1000), 27u);
  EXPECT_EQ(enumerate_terms(e, std::vector<std::string>{"s", "t"}).size(), 27u);
}

TEST(PolyExpr, CountMatchesEnumeration) {
  for (const char* text : {"Id", "1", "Id * Id", "{a,b} + Id * {c}", "(Id + {x})^{p,q}"}) {
    const PolyExpr e = parse_poly(text);
    for (std::size_t n = 0; n <= 3; ++n) {
      EXPECT_EQ(count_terms(e, n, 100000), enumerate_terms(e, testing::ids("s", n)).size()) << text << " n=" << n;
    }
  }
}

TEST(PolyExpr, EnumerationCapIsEnforced) {
  const PolyExpr e = parse_poly("Id^{a,b,c,d,e,f,g,h}");
  try {
    (void)enumerate_terms(e, std::vector<std::string>{"0", "1", "2", "3", "4", "5", "6", "7", "8"}, 1000);
    FAIL() << "expected CombinatorialLimit";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::CombinatorialLimit);
  }
}

TEST(Term, KeysAreStructural) {
  EXPECT_EQ(step("a", "s").key(), step("a", "s").key());
  EXPECT_NE(step("a", "s").key(), step("a", "t").key());
  EXPECT_EQ(Term::state("s").key(), "s");
  EXPECT_THROW(Term::atom("x").branch_value(), Error);
}

}  // namespace
}  // namespace ltbe
