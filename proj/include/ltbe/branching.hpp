#pragma once

// Finite-support branching values. Powerset, sub-distribution and weight
// monads share one weight-function representation: a subset is the set of
// keys carrying `true`.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ltbe/error.hpp"
#include "ltbe/semiring.hpp"
#include "ltbe/term.hpp"

namespace ltbe {

/// Total mass of a Prob value (0 for other kinds).
inline double total_mass(const BranchVal& v) {
  double s = 0;
  if (v.kind != SemiringKind::Prob) return s;
  for (const auto& entry : v.support) s += entry.second.as_prob();
  return s;
}

/// True iff `v` is canonical: support strictly sorted by key, every weight of
/// kind `v.kind` and nonzero, Bool weights all true, Prob mass <= 1 + epsilon.
inline bool validate_branchval(const BranchVal& v) {
  for (std::size_t i = 0; i < v.support.size(); ++i) {
    const auto& [term, weight] = v.support[i];
    if (weight.kind() != v.kind || weight.is_zero()) return false;
    if (i > 0 && !(v.support[i - 1].first.key() < term.key())) return false;
  }
  return total_mass(v) <= 1.0 + kProbEpsilon;
}

/// Canonicalizes a listed weight function: drops zero weights, sorts by key.
/// Repeated keys, foreign-kind weights and excess Prob mass are rejected.
inline BranchVal make_branchval(SemiringKind kind, std::vector<std::pair<Term, Value>> entries) {
  BranchVal v{kind, {}};
  for (auto& e : entries) {
    if (e.second.kind() != kind) {
      throw Error(ErrorCode::KindMismatch, "weight " + e.second.to_string() + " in a " +
                                               std::string(to_string(kind)) + " branching value");
    }
    if (!e.second.is_zero()) v.support.push_back(std::move(e));
  }
  std::sort(v.support.begin(), v.support.end(),
            [](const auto& a, const auto& b) { return a.first.key() < b.first.key(); });
  for (std::size_t i = 1; i < v.support.size(); ++i) {
    if (v.support[i - 1].first.key() == v.support[i].first.key()) {
      throw Error(ErrorCode::ValidationError,
                  "branching value lists " + v.support[i].first.key() + " twice");
    }
  }
  if (total_mass(v) > 1.0 + kProbEpsilon) {
    throw Error(ErrorCode::ValidationError,
                "sub-distribution mass " + std::to_string(total_mass(v)) + " exceeds 1");
  }
  return v;
}

/// Subset as a Bool weight function.
inline BranchVal make_subset(std::vector<Term> members) {
  std::vector<std::pair<Term, Value>> entries;
  for (auto& m : members) entries.emplace_back(std::move(m), Value::boolean(true));
  return make_branchval(SemiringKind::Bool, std::move(entries));
}

/// Dirac / singleton value: the monad unit at `x`.
inline BranchVal unit_branchval(SemiringKind kind, Term x) {
  return make_branchval(kind, {{std::move(x), Value::one(kind)}});
}

}  // namespace ltbe
