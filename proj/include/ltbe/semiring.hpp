#pragma once

// Truth values induced by the three supported branching monads:
//   powerset                -> ({false,true}, or, false, and, true)
//   sub-distributions       -> ([0,1], +, 0, *, 1), + partial (defined iff a+b <= 1)
//   finite-support weights  -> (N u {inf}, min, inf, +, 0)
// together with their natural orders and the law-check harness.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ltbe/error.hpp"

namespace ltbe {

enum class SemiringKind { Bool, Prob, Tropical };

/// Tolerance for sub-probability mass and Prob comparisons.
inline constexpr double kProbEpsilon = 1e-9;

inline std::string_view to_string(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::Bool: return "bool";
    case SemiringKind::Prob: return "prob";
    case SemiringKind::Tropical: return "tropical";
  }
  return "?";
}

inline SemiringKind parse_kind(std::string_view name) {
  if (name == "bool") return SemiringKind::Bool;
  if (name == "prob") return SemiringKind::Prob;
  if (name == "tropical") return SemiringKind::Tropical;
  throw Error(ErrorCode::ParseError, "unknown semiring kind '" + std::string(name) + "'");
}

/// Extended natural number; `infinite` is a distinguished symbol, never a large integer.
struct Cost {
  bool infinite = false;
  std::uint64_t amount = 0;

  bool operator==(const Cost&) const = default;
};

class Value {
 public:
  static Value boolean(bool b) { return Value(b); }

  static Value prob(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream os;
      os << "probability " << p << " outside [0,1]";
      throw Error(ErrorCode::ValidationError, os.str());
    }
    return Value(p);
  }

  static Value cost(std::uint64_t n) { return Value(Cost{false, n}); }
  static Value infinity() { return Value(Cost{true, 0}); }

  /// Additive unit; the bottom of the natural order.
  static Value zero(SemiringKind kind) {
    switch (kind) {
      case SemiringKind::Bool: return boolean(false);
      case SemiringKind::Prob: return Value(0.0);
      case SemiringKind::Tropical: return infinity();
    }
    return boolean(false);
  }

  /// Multiplicative unit; the top of the natural order.
  static Value one(SemiringKind kind) {
    switch (kind) {
      case SemiringKind::Bool: return boolean(true);
      case SemiringKind::Prob: return Value(1.0);
      case SemiringKind::Tropical: return cost(0);
    }
    return boolean(true);
  }

  SemiringKind kind() const {
    switch (payload_.index()) {
      case 0: return SemiringKind::Bool;
      case 1: return SemiringKind::Prob;
      default: return SemiringKind::Tropical;
    }
  }

  bool as_bool() const { return get<bool>(SemiringKind::Bool); }
  double as_prob() const { return get<double>(SemiringKind::Prob); }
  Cost as_cost() const { return get<Cost>(SemiringKind::Tropical); }

  bool is_zero() const { return *this == zero(kind()); }
  bool is_one() const { return *this == one(kind()); }

  bool operator==(const Value&) const = default;

  std::string to_string() const {
    switch (kind()) {
      case SemiringKind::Bool: return as_bool() ? "true" : "false";
      case SemiringKind::Prob: {
        std::ostringstream os;
        os.precision(17);
        os << as_prob();
        return os.str();
      }
      case SemiringKind::Tropical: {
        const Cost c = as_cost();
        return c.infinite ? "inf" : std::to_string(c.amount);
      }
    }
    return "?";
  }

 private:
  explicit Value(bool b) : payload_(b) {}
  explicit Value(double p) : payload_(p) {}
  explicit Value(Cost c) : payload_(c) {}

  template <typename T>
  T get(SemiringKind expected) const {
    if (const T* p = std::get_if<T>(&payload_)) return *p;
    throw Error(ErrorCode::KindMismatch, "expected a " + std::string(ltbe::to_string(expected)) +
                                             " value, got " + std::string(ltbe::to_string(kind())));
  }

  std::variant<bool, double, Cost> payload_;
};

inline void require_same_kind(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) {
    throw Error(ErrorCode::KindMismatch, std::string(to_string(a.kind())) + " vs " +
                                             std::string(to_string(b.kind())));
  }
}

/// Partial addition. Only Prob can be undefined (a + b > 1 + epsilon); a defined
/// Prob sum within the tolerance band is clamped to 1.
inline std::optional<Value> add(const Value& a, const Value& b) {
  require_same_kind(a, b);
  switch (a.kind()) {
    case SemiringKind::Bool: return Value::boolean(a.as_bool() || b.as_bool());
    case SemiringKind::Prob: {
      const double s = a.as_prob() + b.as_prob();
      if (s > 1.0 + kProbEpsilon) return std::nullopt;
      return Value::prob(std::min(s, 1.0));
    }
    case SemiringKind::Tropical: {
      const Cost x = a.as_cost();
      const Cost y = b.as_cost();
      if (x.infinite) return b;
      if (y.infinite) return a;
      return Value::cost(std::min(x.amount, y.amount));
    }
  }
  return std::nullopt;
}

inline Value mul(const Value& a, const Value& b) {
  require_same_kind(a, b);
  switch (a.kind()) {
    case SemiringKind::Bool: return Value::boolean(a.as_bool() && b.as_bool());
    case SemiringKind::Prob: return Value::prob(a.as_prob() * b.as_prob());
    case SemiringKind::Tropical: {
      const Cost x = a.as_cost();
      const Cost y = b.as_cost();
      if (x.infinite || y.infinite) return Value::infinity();
      if (x.amount > std::numeric_limits<std::uint64_t>::max() - y.amount) {
        throw Error(ErrorCode::ValidationError, "tropical cost overflow");
      }
      return Value::cost(x.amount + y.amount);
    }
  }
  return a;
}

/// Natural order: a below b iff b = a + z for some z. Tropical order is >= on costs.
inline bool leq(const Value& a, const Value& b) {
  require_same_kind(a, b);
  switch (a.kind()) {
    case SemiringKind::Bool: return !a.as_bool() || b.as_bool();
    case SemiringKind::Prob: return a.as_prob() <= b.as_prob();
    case SemiringKind::Tropical: {
      const Cost x = a.as_cost();
      const Cost y = b.as_cost();
      if (x.infinite) return true;
      if (y.infinite) return false;
      return x.amount >= y.amount;
    }
  }
  return false;
}

/// Convergence distance. A jump between a finite cost and infinity is +inf.
inline double gap(const Value& a, const Value& b) {
  require_same_kind(a, b);
  switch (a.kind()) {
    case SemiringKind::Bool: return a.as_bool() == b.as_bool() ? 0.0 : 1.0;
    case SemiringKind::Prob: return std::fabs(a.as_prob() - b.as_prob());
    case SemiringKind::Tropical: {
      const Cost x = a.as_cost();
      const Cost y = b.as_cost();
      if (x == y) return 0.0;
      if (x.infinite || y.infinite) return std::numeric_limits<double>::infinity();
      return static_cast<double>(x.amount > y.amount ? x.amount - y.amount : y.amount - x.amount);
    }
  }
  return 0.0;
}

/// Equality up to `tol` for Prob, exact otherwise.
inline bool approx_equal(const Value& a, const Value& b, double tol = kProbEpsilon) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == SemiringKind::Prob) return std::fabs(a.as_prob() - b.as_prob()) <= tol;
  return a == b;
}

/// Parses the textual form used on the command line: bool accepts true/false/1/0,
/// prob a decimal, tropical a nonnegative integer or `inf`.
inline Value parse_value(SemiringKind kind, std::string_view text) {
  const std::string s(text);
  auto fail = [&] {
    return Error(ErrorCode::ParseError,
                 "'" + s + "' is not a " + std::string(to_string(kind)) + " value");
  };
  switch (kind) {
    case SemiringKind::Bool:
      if (s == "true" || s == "1") return Value::boolean(true);
      if (s == "false" || s == "0") return Value::boolean(false);
      throw fail();
    case SemiringKind::Prob: {
      std::size_t used = 0;
      double p = 0;
      try {
        p = std::stod(s, &used);
      } catch (const std::exception&) {
        throw fail();
      }
      if (used != s.size()) throw fail();
      return Value::prob(p);
    }
    case SemiringKind::Tropical: {
      if (s == "inf") return Value::infinity();
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw fail();
      try {
        return Value::cost(std::stoull(s));
      } catch (const std::exception&) {
        throw fail();
      }
    }
  }
  throw fail();
}

template <typename Json = nlohmann::json>
Json value_to_json(const Value& v) {
  switch (v.kind()) {
    case SemiringKind::Bool: return Json(v.as_bool());
    case SemiringKind::Prob: return Json(v.as_prob());
    case SemiringKind::Tropical: {
      const Cost c = v.as_cost();
      if (c.infinite) return Json("inf");
      return Json(c.amount);
    }
  }
  return Json(nullptr);
}

inline Value value_from_json(SemiringKind kind, const nlohmann::json& j) {
  switch (kind) {
    case SemiringKind::Bool:
      if (j.is_boolean()) return Value::boolean(j.get<bool>());
      break;
    case SemiringKind::Prob:
      if (j.is_number()) return Value::prob(j.get<double>());
      break;
    case SemiringKind::Tropical:
      if (j.is_string() && j.get<std::string>() == "inf") return Value::infinity();
      if (j.is_number_unsigned()) return Value::cost(j.get<std::uint64_t>());
      if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return Value::cost(static_cast<std::uint64_t>(j.get<std::int64_t>()));
      }
      break;
  }
  throw Error(ErrorCode::TypeError,
              "'" + j.dump() + "' is not a " + std::string(to_string(kind)) + " weight");
}

// ---------------------------------------------------------------------------
// Law reports

struct LawResult {
  std::string law;
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;
};

struct LawReport {
  std::string subject;
  std::vector<LawResult> results;

  bool all_passed() const {
    for (const auto& r : results) {
      if (!r.passed) return false;
    }
    return true;
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << subject << " " << r.law << " (" << r.checked
         << " checks)";
      if (!r.passed) os << " counterexample: " << r.counterexample;
      os << "\n";
    }
    return os.str();
  }
};

namespace detail {

class LawTally {
 public:
  explicit LawTally(std::string subject) { report_.subject = std::move(subject); }

  template <typename Describe>
  void check(const std::string& law, bool ok, Describe&& describe) {
    LawResult& r = slot(law);
    ++r.checked;
    if (!ok && r.passed) {
      r.passed = false;
      r.counterexample = describe();
    }
  }

  LawReport take() { return std::move(report_); }

 private:
  LawResult& slot(const std::string& law) {
    for (auto& r : report_.results) {
      if (r.law == law) return r;
    }
    report_.results.push_back(LawResult{law, true, 0, {}});
    return report_.results.back();
  }

  LawReport report_;
};

inline bool same_partial(const std::optional<Value>& x, const std::optional<Value>& y) {
  if (x.has_value() != y.has_value()) return false;
  return !x || approx_equal(*x, *y);
}

inline std::string show(const std::optional<Value>& v) { return v ? v->to_string() : "undefined"; }

inline std::optional<Value> add_opt(const std::optional<Value>& a, const std::optional<Value>& b) {
  if (!a || !b) return std::nullopt;
  return add(*a, *b);
}

inline void check_triple(LawTally& t, const Value& a, const Value& b, const Value& c) {
  const SemiringKind k = a.kind();
  const Value zero = Value::zero(k);
  const Value one = Value::one(k);
  auto triple = [&] {
    return "a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string();
  };

  const auto ab = add(a, b);
  t.check("add-commutative", same_partial(ab, add(b, a)), [&] {
    return triple() + ": a+b=" + show(ab) + " b+a=" + show(add(b, a));
  });
  const auto lhs = add_opt(ab, c);
  const auto rhs = add_opt(a, add(b, c));
  t.check("add-associative", same_partial(lhs, rhs), [&] {
    return triple() + ": (a+b)+c=" + show(lhs) + " a+(b+c)=" + show(rhs);
  });
  t.check("add-unit", same_partial(add(zero, a), a), [&] { return triple(); });

  t.check("mul-commutative", approx_equal(mul(a, b), mul(b, a)), [&] { return triple(); });
  const Value m1 = mul(mul(a, b), c);
  const Value m2 = mul(a, mul(b, c));
  t.check("mul-associative", approx_equal(m1, m2), [&] {
    return triple() + ": (ab)c=" + m1.to_string() + " a(bc)=" + m2.to_string();
  });
  t.check("mul-unit", mul(one, a) == a, [&] { return triple(); });
  t.check("annihilation", mul(a, zero) == zero, [&] { return triple(); });

  if (const auto bc = add(b, c)) {
    const auto distributed = add(mul(a, b), mul(a, c));
    const Value factored = mul(a, *bc);
    t.check("partial-distributivity", distributed && approx_equal(*distributed, factored), [&] {
      return triple() + ": ab+ac=" + show(distributed) + " a(b+c)=" + factored.to_string();
    });
  }

  t.check("order-reflexive", leq(a, a), [&] { return triple(); });
  if (leq(a, b) && leq(b, c)) {
    t.check("order-transitive", leq(a, c), [&] { return triple(); });
  }
  t.check("order-antisymmetric", !(leq(a, b) && leq(b, a)) || a == b, [&] { return triple(); });
  t.check("order-bottom", leq(zero, a), [&] { return triple(); });
  t.check("order-top", leq(a, one), [&] { return triple(); });
  if (ab) {
    t.check("order-natural", leq(a, *ab), [&] { return triple() + ": a+b=" + show(ab); });
  }
  if (leq(a, b)) {
    t.check("mul-monotone", leq(mul(a, c), mul(b, c)) && leq(mul(c, a), mul(c, b)),
            [&] { return triple(); });
  }
}

}  // namespace detail

/// Checks the partial commutative semiring laws and the order axioms. Bool is
/// checked exhaustively; Prob samples uniformly from [0,1] and Tropical from
/// {0..32, inf}, `samples` triples each.
inline LawReport check_semiring_laws(SemiringKind kind, std::size_t samples, std::uint64_t seed) {
  detail::LawTally tally("semiring/" + std::string(to_string(kind)));
  if (kind == SemiringKind::Bool) {
    for (int i = 0; i < 8; ++i) {
      detail::check_triple(tally, Value::boolean(i & 1), Value::boolean(i & 2),
                           Value::boolean(i & 4));
    }
    return tally.take();
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> cost(0, 33);
  auto draw = [&]() -> Value {
    if (kind == SemiringKind::Prob) return Value::prob(unit(rng));
    const int c = cost(rng);
    return c == 33 ? Value::infinity() : Value::cost(static_cast<std::uint64_t>(c));
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const Value a = draw();
    const Value b = draw();
    const Value c = draw();
    detail::check_triple(tally, a, b, c);
  }
  return tally.take();
}

}  // namespace ltbe
