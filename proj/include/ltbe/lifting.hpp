#pragma once

// Relation transformers:
//   lift_poly             Rel(F) for a polynomial F, by structural recursion
//   lift_extension        1-linear extension  T X x Y   -> S
//   lift_right_extension  2-linear extension  X x T Y   -> S
//   lift_double_extension bilinear extension  T X x T Y -> S
//   lift_egli_milner      powerset lifting used for bisimilarity
// Lifted relations are materialized on explicitly supplied carriers of terms;
// the keys of those terms become the row/column ids of the result.

#include <string>
#include <vector>

#include "ltbe/branching.hpp"
#include "ltbe/error.hpp"
#include "ltbe/polyfunctor.hpp"
#include "ltbe/relation.hpp"
#include "ltbe/semiring.hpp"
#include "ltbe/term.hpp"

namespace ltbe {

namespace detail {

inline CarrierPtr key_carrier(const std::vector<Term>& terms) {
  std::vector<std::string> ids;
  ids.reserve(terms.size());
  for (const auto& t : terms) ids.push_back(t.key());
  return make_carrier(std::move(ids));
}

[[noreturn]] inline void shape_error(const PolyExpr& expr, const Term& t) {
  throw Error(ErrorCode::TypeError, "term " + t.key() + " is not of shape " + expr.to_string());
}

inline const BranchVal& branch_of(const Term& t, SemiringKind kind) {
  const BranchVal& v = t.branch_value();
  if (v.kind != kind) {
    throw Error(ErrorCode::KindMismatch, "branching value " + t.key() + " is " +
                                             std::string(to_string(v.kind)) + ", relation is " +
                                             std::string(to_string(kind)));
  }
  return v;
}

inline Value checked_add(const Value& acc, const Value& x) {
  auto s = add(acc, x);
  if (!s) throw Error(ErrorCode::UndefinedSum, acc.to_string() + " + " + x.to_string());
  return *s;
}

inline std::size_t row_of(const ValRel& r, const Term& x) {
  const auto i = r.rows().find(x.key());
  if (!i) throw Error(ErrorCode::CarrierMismatch, "'" + x.key() + "' is not a row of the relation");
  return *i;
}

inline std::size_t col_of(const ValRel& r, const Term& y) {
  const auto j = r.cols().find(y.key());
  if (!j) throw Error(ErrorCode::CarrierMismatch, "'" + y.key() + "' is not a column of the relation");
  return *j;
}

}  // namespace detail

/// Rel(expr)(R) evaluated at one pair of expr-shaped terms.
inline Value lift_poly_entry(const PolyExpr& expr, const ValRel& r, const Term& u, const Term& v) {
  using T = Term::Tag;
  const SemiringKind k = r.kind();
  switch (expr.tag()) {
    case PolyExpr::Tag::Id: return r.at(u.key(), v.key());
    case PolyExpr::Tag::Const:
      if (!u.is(T::Atom)) detail::shape_error(expr, u);
      if (!v.is(T::Atom)) detail::shape_error(expr, v);
      return u.text() == v.text() ? Value::one(k) : Value::zero(k);
    case PolyExpr::Tag::Prod:
      if (!u.is(T::Pair)) detail::shape_error(expr, u);
      if (!v.is(T::Pair)) detail::shape_error(expr, v);
      return mul(lift_poly_entry(expr.children()[0], r, u.children()[0], v.children()[0]),
                 lift_poly_entry(expr.children()[1], r, u.children()[1], v.children()[1]));
    case PolyExpr::Tag::Coprod:
      if (!u.is(T::Inj) || u.index() >= expr.children().size()) detail::shape_error(expr, u);
      if (!v.is(T::Inj) || v.index() >= expr.children().size()) detail::shape_error(expr, v);
      if (u.index() != v.index()) return Value::zero(k);
      return lift_poly_entry(expr.children()[u.index()], r, u.children()[0], v.children()[0]);
    case PolyExpr::Tag::Power: {
      if (!u.is(T::Tuple) || u.labels() != expr.atoms()) detail::shape_error(expr, u);
      if (!v.is(T::Tuple) || v.labels() != expr.atoms()) detail::shape_error(expr, v);
      Value acc = Value::one(k);
      for (std::size_t i = 0; i < u.children().size(); ++i) {
        acc = mul(acc, lift_poly_entry(expr.body(), r, u.children()[i], v.children()[i]));
      }
      return acc;
    }
  }
  return Value::zero(k);
}

/// Rel(expr)(R) restricted to lefts x rights.
inline ValRel lift_poly_on(const PolyExpr& expr, const ValRel& r, const std::vector<Term>& lefts,
                           const std::vector<Term>& rights) {
  ValRel out(r.kind(), detail::key_carrier(lefts), detail::key_carrier(rights),
             Value::zero(r.kind()));
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    for (std::size_t j = 0; j < rights.size(); ++j) {
      out.set(i, j, lift_poly_entry(expr, r, lefts[i], rights[j]));
    }
  }
  return out;
}

/// Rel(expr)(R) on the whole of F(X) x F(Y), X and Y being R's carriers.
inline ValRel lift_poly(const PolyExpr& expr, const ValRel& r) {
  return lift_poly_on(expr, r, enumerate_terms(expr, r.rows().ids()),
                      enumerate_terms(expr, r.cols().ids()));
}

/// sum_{x in supp t} t(x) * R(x, y) for one branching value and one column.
inline Value extension_entry(const BranchVal& t, const ValRel& r, std::size_t col) {
  Value acc = Value::zero(r.kind());
  for (const auto& [x, w] : t.support) {
    acc = detail::checked_add(acc, mul(w, r.at(detail::row_of(r, x), col)));
  }
  return acc;
}

/// The 1-linear extension of R to T(X) x Y, on the branching values `lefts`.
inline ValRel lift_extension(const ValRel& r, const std::vector<Term>& lefts) {
  ValRel out(r.kind(), detail::key_carrier(lefts), r.col_carrier(), Value::zero(r.kind()));
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    const BranchVal& t = detail::branch_of(lefts[i], r.kind());
    for (std::size_t j = 0; j < r.cols().size(); ++j) out.set(i, j, extension_entry(t, r, j));
  }
  return out;
}

/// The 2-linear extension of R to X x T(Y), on the branching values `rights`.
inline ValRel lift_right_extension(const ValRel& r, const std::vector<Term>& rights) {
  ValRel out(r.kind(), r.row_carrier(), detail::key_carrier(rights), Value::zero(r.kind()));
  for (std::size_t j = 0; j < rights.size(); ++j) {
    const BranchVal& u = detail::branch_of(rights[j], r.kind());
    for (std::size_t i = 0; i < r.rows().size(); ++i) {
      Value acc = Value::zero(r.kind());
      for (const auto& [y, w] : u.support) {
        acc = detail::checked_add(acc, mul(w, r.at(i, detail::col_of(r, y))));
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

/// The bilinear extension of R to T(X) x T(Y):
/// (t, u) |-> sum_{x, y} t(x) * u(y) * R(x, y).
inline ValRel lift_double_extension(const ValRel& r, const std::vector<Term>& lefts,
                                    const std::vector<Term>& rights) {
  ValRel out(r.kind(), detail::key_carrier(lefts), detail::key_carrier(rights),
             Value::zero(r.kind()));
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    const BranchVal& t = detail::branch_of(lefts[i], r.kind());
    for (std::size_t j = 0; j < rights.size(); ++j) {
      const BranchVal& u = detail::branch_of(rights[j], r.kind());
      Value acc = Value::zero(r.kind());
      for (const auto& [x, wx] : t.support) {
        const std::size_t xi = detail::row_of(r, x);
        for (const auto& [y, wy] : u.support) {
          acc = detail::checked_add(acc, mul(mul(wx, wy), r.at(xi, detail::col_of(r, y))));
        }
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

/// (U, V) related iff every x in U has an R-partner in V and vice versa.
inline ValRel lift_egli_milner(const ValRel& r, const std::vector<Term>& lefts,
                               const std::vector<Term>& rights) {
  if (r.kind() != SemiringKind::Bool) {
    throw Error(ErrorCode::KindMismatch, "Egli-Milner lifting needs a bool relation");
  }
  ValRel out(r.kind(), detail::key_carrier(lefts), detail::key_carrier(rights),
             Value::boolean(false));
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    const BranchVal& u = detail::branch_of(lefts[i], r.kind());
    std::vector<std::size_t> us;
    for (const auto& entry : u.support) us.push_back(detail::row_of(r, entry.first));
    for (std::size_t j = 0; j < rights.size(); ++j) {
      const BranchVal& v = detail::branch_of(rights[j], r.kind());
      std::vector<std::size_t> vs;
      for (const auto& entry : v.support) vs.push_back(detail::col_of(r, entry.first));
      auto related = [&](std::size_t x, std::size_t y) { return r.at(x, y).as_bool(); };
      bool ok = true;
      for (std::size_t x : us) {
        bool found = false;
        for (std::size_t y : vs) found = found || related(x, y);
        ok = ok && found;
      }
      for (std::size_t y : vs) {
        bool found = false;
        for (std::size_t x : us) found = found || related(x, y);
        ok = ok && found;
      }
      out.set(i, j, Value::boolean(ok));
    }
  }
  return out;
}

}  // namespace ltbe
