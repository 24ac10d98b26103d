#pragma once

// Greatest-fixpoint iteration of the composed relation operators.
//
// For a system (C, gamma) of type L1 o ... o Ln and a second coalgebra (D, delta),
// one operator application walks the layers innermost first:
//   polynomial layer -> Rel(F) on both sides
//   branching layer  -> extension lifting (left only for linear-time
//                       behaviour, bilinear for common traces, Egli-Milner for
//                       bisimilarity)
// and finally reindexes along gamma x delta. Iteration starts at the all-one
// relation and descends.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltbe/error.hpp"
#include "ltbe/lifting.hpp"
#include "ltbe/relation.hpp"
#include "ltbe/system.hpp"

namespace ltbe {

enum class BranchMode { LeftExtension, DoubleExtension, EgliMilner };

/// The monotone operator on Rel(C, D) for one pair of coalgebras. Lifted
/// relations are materialized only on terms that actually occur in the two
/// transition structures.
class TraceOperator {
 public:
  /// Linear-time behaviour: `spec` must have type linear_part(sys.stack).
  static TraceOperator behaviour(const System& sys, const SpecSystem& spec) {
    if (spec.stack.layers != linear_part(sys.stack).layers) {
      throw Error(ErrorCode::StackMismatch, "specification type " + spec.stack.to_string() +
                                                " is not the linear part of " + sys.stack.to_string());
    }
    return TraceOperator(sys, spec, BranchMode::LeftExtension);
  }

  /// Common traces (bilinear lifting) or bisimilarity (Egli-Milner lifting).
  static TraceOperator symmetric(const System& a, const System& b, BranchMode mode) {
    if (!(a.stack == b.stack)) {
      throw Error(ErrorCode::StackMismatch, a.stack.to_string() + " vs " + b.stack.to_string());
    }
    if (mode == BranchMode::EgliMilner && a.stack.kind != SemiringKind::Bool) {
      throw Error(ErrorCode::KindMismatch, "bisimilarity is defined for bool systems");
    }
    return TraceOperator(a, b, mode);
  }

  SemiringKind kind() const { return kind_; }
  const CarrierPtr& rows() const { return rows_; }
  const CarrierPtr& cols() const { return cols_; }

  ValRel apply(const ValRel& r) const {
    if (r.kind() != kind_) throw Error(ErrorCode::KindMismatch, "relation of wrong kind");
    if (!(r.rows() == *rows_) || !(r.cols() == *cols_)) {
      throw Error(ErrorCode::CarrierMismatch, "relation is not over the systems' state sets");
    }
    ValRel cur = r;
    for (std::size_t i = layers_.size(); i-- > 0;) {
      const Layer& layer = layers_[i];
      const auto& lefts = left_levels_[i];
      const auto& rights = right_levels_[right_level_[i]];
      if (!layer.is_branch()) {
        cur = lift_poly_on(layer.expr(), cur, lefts, rights);
      } else if (mode_ == BranchMode::LeftExtension) {
        cur = lift_extension(cur, lefts);
      } else if (mode_ == BranchMode::DoubleExtension) {
        cur = lift_double_extension(cur, lefts, rights);
      } else {
        cur = lift_egli_milner(cur, lefts, rights);
      }
    }
    return reindex(
        rows_, cols_, [this](const std::string& c) { return left_key_.at(c); },
        [this](const std::string& d) { return right_key_.at(d); }, cur);
  }

 private:
  TraceOperator(const System& left, const System& right, BranchMode mode)
      : mode_(mode), kind_(left.stack.kind), layers_(left.stack.layers),
        rows_(left.carrier()), cols_(right.carrier()) {
    for (std::size_t i = 0; i < left.size(); ++i) {
      left_key_[left.states[i]] = left.transitions[i].key();
    }
    for (std::size_t i = 0; i < right.size(); ++i) {
      right_key_[right.states[i]] = right.transitions[i].key();
    }
    left_levels_ = levels(left.stack, left.transitions);
    right_levels_ = levels(right.stack, right.transitions);
    std::size_t j = 0;
    for (const auto& l : layers_) {
      right_level_.push_back(j);
      if (mode_ != BranchMode::LeftExtension || !l.is_branch()) ++j;
    }
  }

  /// Distinct terms occurring at each layer boundary, sorted by key.
  static std::vector<std::vector<Term>> levels(const TypeStack& stack,
                                               const std::vector<Term>& transitions) {
    std::vector<std::vector<Term>> out;
    std::vector<Term> cur = unique(transitions);
    for (const auto& layer : stack.layers) {
      std::vector<Term> next;
      for (const auto& t : cur) {
        if (layer.is_branch()) {
          for (const auto& entry : t.branch_value().support) next.push_back(entry.first);
        } else {
          collect_leaves(layer.expr(), t, next);
        }
      }
      out.push_back(std::move(cur));
      cur = unique(std::move(next));
    }
    out.push_back(std::move(cur));
    return out;
  }

  static void collect_leaves(const PolyExpr& expr, const Term& t, std::vector<Term>& out) {
    switch (expr.tag()) {
      case PolyExpr::Tag::Id: out.push_back(t); return;
      case PolyExpr::Tag::Const: return;
      case PolyExpr::Tag::Prod:
        collect_leaves(expr.children()[0], t.children()[0], out);
        collect_leaves(expr.children()[1], t.children()[1], out);
        return;
      case PolyExpr::Tag::Coprod:
        collect_leaves(expr.children()[t.index()], t.children()[0], out);
        return;
      case PolyExpr::Tag::Power:
        for (const auto& c : t.children()) collect_leaves(expr.body(), c, out);
        return;
    }
  }

  static std::vector<Term> unique(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end(),
                            [](const Term& a, const Term& b) { return a.key() == b.key(); }),
                terms.end());
    return terms;
  }

  BranchMode mode_;
  SemiringKind kind_;
  std::vector<Layer> layers_;
  CarrierPtr rows_;
  CarrierPtr cols_;
  std::unordered_map<std::string, std::string> left_key_;
  std::unordered_map<std::string, std::string> right_key_;
  std::vector<std::vector<Term>> left_levels_;
  std::vector<std::vector<Term>> right_levels_;
  std::vector<std::size_t> right_level_;
};

struct FixpointOptions {
  /// Defaults to 10 * |C| * |D| + 10.
  std::optional<std::size_t> max_iterations;
  /// Prob convergence bound on max_gap; Bool and Tropical need an exact repeat.
  double tolerance = 1e-9;
  /// Stop once every entry is strictly below this value in the natural order.
  std::optional<Value> threshold;
  /// Tropical entries above this bound that still move signal divergence.
  std::uint64_t divergence_cap = 1'000'000;
};

struct FixpointReport {
  ValRel result;
  std::size_t iterations = 0;
  bool converged = false;
  double final_gap = 0;
  bool threshold_exit = false;
  bool diverged = false;
};

namespace detail {

inline bool tropical_diverging(const ValRel& r, std::uint64_t cap) {
  for (std::size_t i = 0; i < r.rows().size(); ++i) {
    for (std::size_t j = 0; j < r.cols().size(); ++j) {
      const Cost c = r.at(i, j).as_cost();
      if (!c.infinite && c.amount > cap) return true;
    }
  }
  return false;
}

inline bool all_below(const ValRel& r, const Value& threshold) {
  for (std::size_t i = 0; i < r.rows().size(); ++i) {
    for (std::size_t j = 0; j < r.cols().size(); ++j) {
      if (leq(threshold, r.at(i, j))) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Descending iteration R0 = top, R(k+1) = op(Rk), truncated at omega.
inline FixpointReport run_fixpoint(const TraceOperator& op, const FixpointOptions& opts) {
  const SemiringKind kind = op.kind();
  const std::size_t max_iter =
      opts.max_iterations.value_or(10 * op.rows()->size() * op.cols()->size() + 10);
  if (max_iter < 1) throw Error(ErrorCode::ValidationError, "max_iterations must be >= 1");
  if (!(opts.tolerance >= 0)) throw Error(ErrorCode::ValidationError, "tolerance must be >= 0");
  if (opts.threshold && opts.threshold->kind() != kind) {
    throw Error(ErrorCode::KindMismatch, "threshold of wrong kind");
  }

  FixpointReport rep{top(op.rows(), op.cols(), kind)};
  for (std::size_t k = 1; k <= max_iter; ++k) {
    ValRel next = op.apply(rep.result);
    if (!pointwise_leq(next, rep.result)) {
      throw Error(ErrorCode::MonotonicityViolation,
                  "iterate " + std::to_string(k) + " rose above its predecessor");
    }
    rep.final_gap = max_gap(next, rep.result);
    rep.result = std::move(next);
    rep.iterations = k;
    const bool settled =
        kind == SemiringKind::Prob ? rep.final_gap <= opts.tolerance : rep.final_gap == 0;
    if (settled) {
      rep.converged = true;
      break;
    }
    if (kind == SemiringKind::Tropical && detail::tropical_diverging(rep.result, opts.divergence_cap)) {
      rep.diverged = true;
      break;
    }
    if (opts.threshold && detail::all_below(rep.result, *opts.threshold)) {
      rep.threshold_exit = true;
      break;
    }
  }
  return rep;
}

/// One application of the linear-time operator to R over C x Z.
inline ValRel step_operator(const System& sys, const SpecSystem& spec, const ValRel& r) {
  return TraceOperator::behaviour(sys, spec).apply(r);
}

/// Extent to which each system state exhibits each specification state's behaviour.
inline FixpointReport behaviour(const System& sys, const SpecSystem& spec,
                                const FixpointOptions& opts = {}) {
  return run_fixpoint(TraceOperator::behaviour(sys, spec), opts);
}

/// Probability / joint cost / existence of a maximal trace common to both states.
inline FixpointReport common_trace(const System& a, const System& b,
                                   const FixpointOptions& opts = {}) {
  return run_fixpoint(TraceOperator::symmetric(a, b, BranchMode::DoubleExtension), opts);
}

/// Largest bisimulation between two bool systems of the same type.
inline FixpointReport bisimilarity(const System& a, const System& b,
                                   const FixpointOptions& opts = {}) {
  return run_fixpoint(TraceOperator::symmetric(a, b, BranchMode::EgliMilner), opts);
}

}  // namespace ltbe
