#pragma once

// Bounded-depth reference evaluator. Computes the depth-d iterate directly
// from the nested transition values with plain recursive arithmetic; it does
// not use the lifting or engine code.
//
//   value(c, z, 0)   = 1
//   value(c, z, d+1) = expand(gamma(c), zeta(z)) with leaves value(c', z', d)
// where expand folds (+) over branching supports with (*) weights, multiplies
// across products, compares atoms and injection tags.

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ltbe/error.hpp"
#include "ltbe/polyfunctor.hpp"
#include "ltbe/relation.hpp"
#include "ltbe/system.hpp"

namespace ltbe {

namespace detail {

class OracleEval {
 public:
  OracleEval(const System& left, const System& right, bool both_branch, std::size_t cap)
      : left_(left), right_(right), both_branch_(both_branch), kind_(left.stack.kind), cap_(cap) {
    for (std::size_t i = 0; i < left.size(); ++i) left_index_[left.states[i]] = i;
    for (std::size_t i = 0; i < right.size(); ++i) right_index_[right.states[i]] = i;
  }

  ValRel matrix(std::size_t depth) {
    ValRel out(kind_, left_.states, right_.states, unit());
    for (std::size_t c = 0; c < left_.size(); ++c) {
      for (std::size_t z = 0; z < right_.size(); ++z) out.set(c, z, value(c, z, depth));
    }
    return out;
  }

 private:
  Value value(std::size_t c, std::size_t z, std::size_t depth) {
    if (depth == 0) return unit();
    const auto key = std::make_tuple(c, z, depth);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    Value v = expand(left_.transitions[c], right_.transitions[z], 0, 0, depth);
    memo_.emplace(key, v);
    return v;
  }

  Value expand(const Term& s, const Term& t, std::size_t li, std::size_t ri, std::size_t depth) {
    if (++work_ > cap_) {
      throw Error(ErrorCode::CombinatorialLimit, "oracle expansion exceeds cap " + std::to_string(cap_));
    }
    const auto& layers = left_.stack.layers;
    if (li == layers.size()) {
      return value(left_index_.at(s.text()), right_index_.at(t.text()), depth - 1);
    }
    if (layers[li].is_branch()) {
      Value acc = nothing();
      for (const auto& [x, wx] : s.branch_value().support) {
        if (both_branch_) {
          for (const auto& [y, wy] : t.branch_value().support) {
            acc = plus(acc, times(times(wx, wy), expand(x, y, li + 1, ri + 1, depth)));
          }
        } else {
          acc = plus(acc, times(wx, expand(x, t, li + 1, ri, depth)));
        }
      }
      return acc;
    }
    return shape(layers[li].expr(), s, t, li, ri, depth);
  }

  Value shape(const PolyExpr& e, const Term& s, const Term& t, std::size_t li, std::size_t ri,
              std::size_t depth) {
    switch (e.tag()) {
      case PolyExpr::Tag::Id: return expand(s, t, li + 1, ri + 1, depth);
      case PolyExpr::Tag::Const: return s.text() == t.text() ? unit() : nothing();
      case PolyExpr::Tag::Prod:
        return times(shape(e.children()[0], s.children()[0], t.children()[0], li, ri, depth),
                     shape(e.children()[1], s.children()[1], t.children()[1], li, ri, depth));
      case PolyExpr::Tag::Coprod:
        if (s.index() != t.index()) return nothing();
        return shape(e.children()[s.index()], s.children()[0], t.children()[0], li, ri, depth);
      case PolyExpr::Tag::Power: {
        Value acc = unit();
        for (std::size_t k = 0; k < s.children().size(); ++k) {
          acc = times(acc, shape(e.body(), s.children()[k], t.children()[k], li, ri, depth));
        }
        return acc;
      }
    }
    return nothing();
  }

  Value unit() const {
    switch (kind_) {
      case SemiringKind::Bool: return Value::boolean(true);
      case SemiringKind::Prob: return Value::prob(1.0);
      case SemiringKind::Tropical: return Value::cost(0);
    }
    return Value::boolean(true);
  }

  Value nothing() const {
    switch (kind_) {
      case SemiringKind::Bool: return Value::boolean(false);
      case SemiringKind::Prob: return Value::prob(0.0);
      case SemiringKind::Tropical: return Value::infinity();
    }
    return Value::boolean(false);
  }

  Value plus(const Value& a, const Value& b) const {
    switch (kind_) {
      case SemiringKind::Bool: return Value::boolean(a.as_bool() || b.as_bool());
      case SemiringKind::Prob: return Value::prob(std::min(1.0, a.as_prob() + b.as_prob()));
      case SemiringKind::Tropical: {
        const Cost x = a.as_cost(), y = b.as_cost();
        if (x.infinite) return b;
        if (y.infinite) return a;
        return x.amount <= y.amount ? a : b;
      }
    }
    return a;
  }

  Value times(const Value& a, const Value& b) const {
    switch (kind_) {
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

  const System& left_;
  const System& right_;
  bool both_branch_;
  SemiringKind kind_;
  std::size_t cap_;
  std::size_t work_ = 0;
  std::unordered_map<std::string, std::size_t> left_index_;
  std::unordered_map<std::string, std::size_t> right_index_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Value> memo_;
};

}  // namespace detail

/// Depth-d iterate of the linear-time operator, computed by direct expansion.
inline ValRel oracle_matrix(const System& sys, const SpecSystem& spec, std::size_t depth,
                            std::size_t cap = enumeration_cap()) {
  if (spec.stack.layers != linear_part(sys.stack).layers) {
    throw Error(ErrorCode::StackMismatch, "specification type does not match the system");
  }
  return detail::OracleEval(sys, spec, false, cap).matrix(depth);
}

/// Depth-d iterate of the common-trace operator, computed by direct expansion.
inline ValRel oracle_common(const System& a, const System& b, std::size_t depth,
                            std::size_t cap = enumeration_cap()) {
  if (!(a.stack == b.stack)) throw Error(ErrorCode::StackMismatch, "systems differ in type");
  return detail::OracleEval(a, b, true, cap).matrix(depth);
}

}  // namespace ltbe
