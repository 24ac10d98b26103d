#pragma once

// Desk-scale consistency harness for the branching monads. Elements of T(X)
// are enumerated densely on a small weight grid and the monad structure
// (unit, multiplication, functor action) is evaluated with plain arithmetic,
// independently of the semiring and lifting code it is compared against.
//
// Checked:
//   * the map T(X+Y) -> T X x T Y, phi |-> (mu . T p1, mu . T p2)(phi), is
//     injective (partial additivity) and, for additive monads, surjective;
//   * the addition it induces on T1 agrees with the semiring `add`;
//   * the extension lifting satisfies the unit triangle and 1-linearity.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ltbe/branching.hpp"
#include "ltbe/lifting.hpp"
#include "ltbe/relation.hpp"
#include "ltbe/semiring.hpp"

namespace ltbe {

/// Dense element of T(n): one weight per element of an n-element set.
using DenseWeights = std::vector<Value>;

struct MonadReport {
  LawReport laws;
  bool injective = true;
  bool surjective = true;
  /// Pairs in T X x T Y without a preimage (capped at 64).
  std::vector<std::pair<DenseWeights, DenseWeights>> missing;
};

namespace detail {

/// Raw monad arithmetic on T1, written without the semiring module.
struct RawArith {
  SemiringKind kind;

  Value plus(const Value& a, const Value& b) const {
    switch (kind) {
      case SemiringKind::Bool: return Value::boolean(a.as_bool() || b.as_bool());
      case SemiringKind::Prob: return Value::prob(std::min(1.0, a.as_prob() + b.as_prob()));
      case SemiringKind::Tropical: {
        const Cost x = a.as_cost(), y = b.as_cost();
        if (x.infinite) return b;
        if (y.infinite) return a;
        return Value::cost(std::min(x.amount, y.amount));
      }
    }
    return a;
  }

  Value times(const Value& a, const Value& b) const {
    switch (kind) {
      case SemiringKind::Bool: return Value::boolean(a.as_bool() && b.as_bool());
      case SemiringKind::Prob: return Value::prob(a.as_prob() * b.as_prob());
      case SemiringKind::Tropical: {
        const Cost x = a.as_cost(), y = b.as_cost();
        if (x.infinite || y.infinite) return Value::infinity();
        return Value::cost(x.amount + y.amount);
      }
    }
    return a;
  }

  Value zero() const {
    switch (kind) {
      case SemiringKind::Bool: return Value::boolean(false);
      case SemiringKind::Prob: return Value::prob(0.0);
      case SemiringKind::Tropical: return Value::infinity();
    }
    return Value::boolean(false);
  }

  /// Weight grid used for enumeration.
  std::vector<Value> grid() const {
    switch (kind) {
      case SemiringKind::Bool: return {Value::boolean(false), Value::boolean(true)};
      case SemiringKind::Prob: {
        std::vector<Value> g;
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) g.push_back(Value::prob(p));
        return g;
      }
      case SemiringKind::Tropical: {
        std::vector<Value> g;
        for (std::uint64_t c = 0; c < 4; ++c) g.push_back(Value::cost(c));
        g.push_back(Value::infinity());
        return g;
      }
    }
    return {};
  }

  bool valid(const DenseWeights& w) const {
    if (kind != SemiringKind::Prob) return true;
    double s = 0;
    for (const auto& v : w) s += v.as_prob();
    return s <= 1.0 + kProbEpsilon;
  }

  /// All grid elements of T(n).
  std::vector<DenseWeights> elements(std::size_t n) const {
    std::vector<DenseWeights> out{{}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<DenseWeights> next;
      for (const auto& prefix : out) {
        for (const auto& g : grid()) {
          next.push_back(prefix);
          next.back().push_back(g);
        }
      }
      out = std::move(next);
    }
    std::erase_if(out, [&](const DenseWeights& w) { return !valid(w); });
    return out;
  }

  /// mu_X applied to the finite formal sum  sum_k weights[k] . values[k].
  DenseWeights flatten(const std::vector<std::pair<Value, DenseWeights>>& formal,
                       std::size_t n) const {
    DenseWeights out(n, zero());
    for (const auto& [w, elem] : formal) {
      for (std::size_t x = 0; x < n; ++x) out[x] = plus(out[x], times(w, elem[x]));
    }
    return out;
  }

  DenseWeights unit(std::size_t n, std::size_t at) const {
    DenseWeights out(n, zero());
    out[at] = Value::one(kind);
    return out;
  }
};

inline std::string encode(const DenseWeights& w) {
  std::string s;
  for (const auto& v : w) s += v.to_string() + ";";
  return s;
}

inline BranchVal to_branchval(SemiringKind kind, const DenseWeights& w) {
  std::vector<std::pair<Term, Value>> entries;
  for (std::size_t i = 0; i < w.size(); ++i) entries.emplace_back(Term::state("x" + std::to_string(i)), w[i]);
  return make_branchval(kind, std::move(entries));
}

}  // namespace detail

/// Runs the harness for carriers |X| = |Y| = 1 .. size_bound (size_bound <= 4).
inline MonadReport check_monad_consistency(SemiringKind kind, std::size_t size_bound) {
  if (size_bound < 1 || size_bound > 4) {
    throw Error(ErrorCode::ValidationError, "size bound must lie in 1..4");
  }
  const detail::RawArith raw{kind};
  MonadReport rep;
  detail::LawTally tally("monad/" + std::string(to_string(kind)));

  // The map T(X+Y) -> T X x T Y.
  for (std::size_t m = 1; m <= size_bound; ++m) {
    const std::size_t n = 2 * m;
    // p1 = [eta, 0] and p2 = [0, eta] on X + Y = {0..m-1} + {m..2m-1}.
    auto image = [&](const DenseWeights& phi) {
      std::vector<std::pair<Value, DenseWeights>> left, right;
      for (std::size_t i = 0; i < n; ++i) {
        left.emplace_back(phi[i], i < m ? raw.unit(m, i) : DenseWeights(m, raw.zero()));
        right.emplace_back(phi[i], i < m ? DenseWeights(m, raw.zero()) : raw.unit(m, i - m));
      }
      return std::make_pair(raw.flatten(left, m), raw.flatten(right, m));
    };
    std::map<std::string, std::string> preimage;
    for (const auto& phi : raw.elements(n)) {
      const auto [a, b] = image(phi);
      const std::string key = detail::encode(a) + "|" + detail::encode(b);
      const auto [it, fresh] = preimage.emplace(key, detail::encode(phi));
      const bool ok = fresh || it->second == detail::encode(phi);
      if (!ok) rep.injective = false;
      tally.check("map-injective", ok, [&] {
        return "|X|=" + std::to_string(m) + ": " + it->second + " and " + detail::encode(phi) +
               " share image " + key;
      });
    }
    const auto tx = raw.elements(m);
    for (const auto& a : tx) {
      for (const auto& b : tx) {
        const bool hit = preimage.count(detail::encode(a) + "|" + detail::encode(b)) > 0;
        if (!hit) {
          rep.surjective = false;
          if (rep.missing.size() < 64) rep.missing.emplace_back(a, b);
        }
        if (kind != SemiringKind::Prob) {
          tally.check("map-surjective", hit, [&] {
            return "no preimage for " + detail::encode(a) + "|" + detail::encode(b);
          });
        }
      }
    }
  }

  // Induced addition on T1 versus the semiring addition.
  for (const auto& a : raw.grid()) {
    for (const auto& b : raw.grid()) {
      const DenseWeights phi{a, b};
      const std::optional<Value> semiring_sum = add(a, b);
      if (raw.valid(phi)) {
        // T[1,1] collapses both summands of 1 + 1 onto the single point.
        const Value induced = raw.flatten({{a, {Value::one(kind)}}, {b, {Value::one(kind)}}}, 1)[0];
        tally.check("induced-addition", semiring_sum && approx_equal(*semiring_sum, induced), [&] {
          return a.to_string() + " + " + b.to_string() + ": induced " + induced.to_string() +
                 ", semiring " + (semiring_sum ? semiring_sum->to_string() : "undefined");
        });
      } else {
        tally.check("induced-addition", !semiring_sum, [&] {
          return a.to_string() + " + " + b.to_string() + " has no preimage but add is defined";
        });
      }
    }
  }

  // Extension lifting: unit triangle and 1-linearity, |X| = min(bound, 2), |Y| = 1.
  const std::size_t nx = std::min<std::size_t>(size_bound, 2);
  std::vector<std::string> xs;
  for (std::size_t i = 0; i < nx; ++i) xs.push_back("x" + std::to_string(i));
  const auto tx = raw.elements(nx);
  std::vector<DenseWeights> relations{{}};
  for (std::size_t i = 0; i < nx; ++i) {
    std::vector<DenseWeights> next;
    for (const auto& prefix : relations) {
      for (const auto& g : raw.grid()) {
        next.push_back(prefix);
        next.back().push_back(g);
      }
    }
    relations = std::move(next);
  }
  for (const auto& column : relations) {
    ValRel r(kind, xs, {"y"}, Value::zero(kind));
    for (std::size_t i = 0; i < nx; ++i) r.set(i, 0, column[i]);
    for (std::size_t i = 0; i < nx; ++i) {
      const Value lifted = extension_entry(detail::to_branchval(kind, raw.unit(nx, i)), r, 0);
      tally.check("extension-unit", lifted == column[i], [&] {
        return "R=" + detail::encode(column) + " x" + std::to_string(i) + ": " + lifted.to_string();
      });
    }
    for (std::size_t p = 0; p < tx.size(); ++p) {
      for (std::size_t q = p + 1; q < tx.size(); ++q) {
        for (const auto& w1 : raw.grid()) {
          for (const auto& w2 : raw.grid()) {
            if (!raw.valid({w1, w2})) continue;
            const DenseWeights flat = raw.flatten({{w1, tx[p]}, {w2, tx[q]}}, nx);
            const Value lhs = extension_entry(detail::to_branchval(kind, flat), r, 0);
            const Value rhs = raw.plus(
                raw.times(w1, extension_entry(detail::to_branchval(kind, tx[p]), r, 0)),
                raw.times(w2, extension_entry(detail::to_branchval(kind, tx[q]), r, 0)));
            tally.check("extension-linear", approx_equal(lhs, rhs), [&] {
              return "R=" + detail::encode(column) + " t1=" + detail::encode(tx[p]) +
                     " t2=" + detail::encode(tx[q]) + ": " + lhs.to_string() + " vs " +
                     rhs.to_string();
            });
          }
        }
      }
    }
  }

  rep.laws = tally.take();
  return rep;
}

}  // namespace ltbe
