#pragma once

// Polynomial functors: Id, finite constants, binary products, finite ordered
// coproducts and finite powers G^A (the |A|-fold product of G).
//
// Textual grammar:
//   sum     := product ('+' product)*
//   product := postfix ('*' postfix)*          left associative
//   postfix := primary ('^' atoms)*
//   primary := 'Id' | '1' | atoms | '(' sum ')'
//   atoms   := '{' atom (',' atom)* '}'
// `1` abbreviates {*}. Example: `{*} + {a,b} * Id`.

#include <cctype>
#include <cstdlib>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ltbe/error.hpp"
#include "ltbe/term.hpp"

namespace ltbe {

/// Upper bound on dense enumerations; the LTBE_ENUM_CAP environment variable
/// overrides the default of 10^6.
inline std::size_t enumeration_cap() {
  if (const char* env = std::getenv("LTBE_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

class PolyExpr {
 public:
  enum class Tag { Id, Const, Prod, Coprod, Power };

  static PolyExpr id() { return PolyExpr(Node{Tag::Id, {}, {}}); }

  static PolyExpr constant(std::vector<std::string> labels) {
    check_atoms(labels, "constant");
    return PolyExpr(Node{Tag::Const, std::move(labels), {}});
  }

  /// The terminal functor 1 = {*}.
  static PolyExpr one() { return constant({"*"}); }

  static PolyExpr prod(PolyExpr left, PolyExpr right) {
    return PolyExpr(Node{Tag::Prod, {}, {std::move(left), std::move(right)}});
  }

  static PolyExpr coprod(std::vector<PolyExpr> branches) {
    if (branches.empty()) throw Error(ErrorCode::ValidationError, "coproduct needs a branch");
    return PolyExpr(Node{Tag::Coprod, {}, std::move(branches)});
  }

  static PolyExpr power(std::vector<std::string> exponent, PolyExpr body) {
    check_atoms(exponent, "exponent");
    return PolyExpr(Node{Tag::Power, std::move(exponent), {std::move(body)}});
  }

  Tag tag() const { return node_->tag; }
  /// Constant labels or power exponent.
  const std::vector<std::string>& atoms() const { return node_->atoms; }
  const std::vector<PolyExpr>& children() const { return node_->children; }
  const PolyExpr& body() const { return node_->children.front(); }

  std::string to_string() const {
    switch (tag()) {
      case Tag::Id: return "Id";
      case Tag::Const: return brace(atoms());
      case Tag::Prod: {
        const auto& l = children()[0];
        const auto& r = children()[1];
        return l.wrapped(l.tag() == Tag::Coprod) + " * " +
               r.wrapped(r.tag() == Tag::Coprod || r.tag() == Tag::Prod);
      }
      case Tag::Coprod: {
        std::string out;
        for (std::size_t i = 0; i < children().size(); ++i) {
          if (i) out += " + ";
          out += children()[i].wrapped(children()[i].tag() == Tag::Coprod);
        }
        return children().size() == 1 ? "(" + out + ")" : out;
      }
      case Tag::Power:
        return body().wrapped(body().tag() == Tag::Coprod || body().tag() == Tag::Prod) + "^" +
               brace(atoms());
    }
    return "?";
  }

  bool operator==(const PolyExpr& other) const { return to_string() == other.to_string(); }

 private:
  struct Node {
    Tag tag;
    std::vector<std::string> atoms;
    std::vector<PolyExpr> children;
  };

  explicit PolyExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  std::string wrapped(bool parens) const { return parens ? "(" + to_string() + ")" : to_string(); }

  static std::string brace(const std::vector<std::string>& atoms) {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i) out += ",";
      out += atoms[i];
    }
    return out + "}";
  }

  static void check_atoms(const std::vector<std::string>& atoms, const char* what) {
    if (atoms.empty()) throw Error(ErrorCode::ValidationError, std::string(what) + " is empty");
    std::set<std::string> seen;
    for (const auto& a : atoms) {
      if (a.empty()) throw Error(ErrorCode::ValidationError, std::string(what) + " has empty atom");
      if (!seen.insert(a).second) {
        throw Error(ErrorCode::ValidationError,
                    std::string(what) + " repeats atom '" + a + "'");
      }
    }
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  PolyExpr parse() {
    PolyExpr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  PolyExpr sum() {
    std::vector<PolyExpr> terms{product()};
    while (accept('+')) terms.push_back(product());
    if (terms.size() == 1) return terms.front();
    return PolyExpr::coprod(std::move(terms));
  }

  PolyExpr product() {
    PolyExpr e = postfix();
    while (accept('*')) e = PolyExpr::prod(std::move(e), postfix());
    return e;
  }

  PolyExpr postfix() {
    PolyExpr e = primary();
    while (accept('^')) e = PolyExpr::power(atoms(), std::move(e));
    return e;
  }

  PolyExpr primary() {
    skip();
    if (s_.substr(pos_, 2) == "Id") {
      pos_ += 2;
      return PolyExpr::id();
    }
    if (accept('1')) return PolyExpr::one();
    if (accept('(')) {
      PolyExpr e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (peek() == '{') return PolyExpr::constant(atoms());
    fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'"
                          : "unexpected end of expression");
    return PolyExpr::id();
  }

  std::vector<std::string> atoms() {
    if (!accept('{')) fail("expected '{'");
    std::vector<std::string> out;
    std::string cur;
    for (; pos_ < s_.size(); ++pos_) {
      const char c = s_[pos_];
      if (c == ',' || c == '}') {
        if (cur.empty()) fail("empty atom");
        out.push_back(cur);
        cur.clear();
        if (c == '}') {
          ++pos_;
          try {
            return PolyExpr::constant(out).atoms();
          } catch (const Error& e) {
            fail(e.what());
          }
        }
      } else if (c == '{') {
        fail("nested '{'");
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    fail("unterminated '{'");
    return out;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError,
                "functor '" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PolyExpr parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

/// Structural typing of `term` against `expr`; Id positions are checked by `leaf_ok`.
inline bool well_typed(const PolyExpr& expr, const Term& term,
                       const std::function<bool(const Term&)>& leaf_ok) {
  using T = Term::Tag;
  switch (expr.tag()) {
    case PolyExpr::Tag::Id: return leaf_ok(term);
    case PolyExpr::Tag::Const: {
      if (!term.is(T::Atom)) return false;
      for (const auto& a : expr.atoms()) {
        if (a == term.text()) return true;
      }
      return false;
    }
    case PolyExpr::Tag::Prod:
      return term.is(T::Pair) && well_typed(expr.children()[0], term.children()[0], leaf_ok) &&
             well_typed(expr.children()[1], term.children()[1], leaf_ok);
    case PolyExpr::Tag::Coprod:
      return term.is(T::Inj) && term.index() < expr.children().size() &&
             well_typed(expr.children()[term.index()], term.children()[0], leaf_ok);
    case PolyExpr::Tag::Power: {
      if (!term.is(T::Tuple) || term.labels() != expr.atoms()) return false;
      for (const auto& c : term.children()) {
        if (!well_typed(expr.body(), c, leaf_ok)) return false;
      }
      return true;
    }
  }
  return false;
}

/// True iff `term` is an element of F(states).
inline bool validate_term(const PolyExpr& expr, const Term& term,
                          const std::vector<std::string>& states) {
  const std::set<std::string> ids(states.begin(), states.end());
  return well_typed(expr, term,
                    [&](const Term& t) { return t.is(Term::Tag::State) && ids.count(t.text()); });
}

/// |F(X)| for |X| = n, saturating at `limit + 1`.
inline std::size_t count_terms(const PolyExpr& expr, std::size_t n, std::size_t limit) {
  const std::size_t over = limit + 1;
  auto sat_mul = [&](std::size_t a, std::size_t b) -> std::size_t {
    if (a == 0 || b == 0) return 0;
    return a > over / b ? over : std::min(over, a * b);
  };
  switch (expr.tag()) {
    case PolyExpr::Tag::Id: return std::min(n, over);
    case PolyExpr::Tag::Const: return std::min(expr.atoms().size(), over);
    case PolyExpr::Tag::Prod:
      return sat_mul(count_terms(expr.children()[0], n, limit),
                     count_terms(expr.children()[1], n, limit));
    case PolyExpr::Tag::Coprod: {
      std::size_t total = 0;
      for (const auto& c : expr.children()) total = std::min(over, total + count_terms(c, n, limit));
      return total;
    }
    case PolyExpr::Tag::Power: {
      const std::size_t base = count_terms(expr.body(), n, limit);
      std::size_t total = 1;
      for (std::size_t i = 0; i < expr.atoms().size(); ++i) total = sat_mul(total, base);
      return total;
    }
  }
  return 0;
}

namespace detail {

inline std::vector<Term> enumerate_over(const PolyExpr& expr, const std::vector<Term>& leaves) {
  switch (expr.tag()) {
    case PolyExpr::Tag::Id: return leaves;
    case PolyExpr::Tag::Const: {
      std::vector<Term> out;
      for (const auto& a : expr.atoms()) out.push_back(Term::atom(a));
      return out;
    }
    case PolyExpr::Tag::Prod: {
      const auto left = enumerate_over(expr.children()[0], leaves);
      const auto right = enumerate_over(expr.children()[1], leaves);
      std::vector<Term> out;
      out.reserve(left.size() * right.size());
      for (const auto& l : left) {
        for (const auto& r : right) out.push_back(Term::pair(l, r));
      }
      return out;
    }
    case PolyExpr::Tag::Coprod: {
      std::vector<Term> out;
      for (std::size_t i = 0; i < expr.children().size(); ++i) {
        for (auto& t : enumerate_over(expr.children()[i], leaves)) out.push_back(Term::inj(i, t));
      }
      return out;
    }
    case PolyExpr::Tag::Power: {
      const auto base = enumerate_over(expr.body(), leaves);
      const auto& names = expr.atoms();
      std::vector<std::vector<Term>> partial{{}};
      for (std::size_t k = 0; k < names.size(); ++k) {
        std::vector<std::vector<Term>> next;
        for (const auto& prefix : partial) {
          for (const auto& b : base) {
            next.push_back(prefix);
            next.back().push_back(b);
          }
        }
        partial = std::move(next);
      }
      std::vector<Term> out;
      for (const auto& comps : partial) {
        std::vector<std::pair<std::string, Term>> named;
        for (std::size_t k = 0; k < names.size(); ++k) named.emplace_back(names[k], comps[k]);
        out.push_back(Term::tuple(std::move(named)));
      }
      return out;
    }
  }
  return {};
}

}  // namespace detail

/// Every element of F(X), where X is given by its leaf terms, each exactly once.
inline std::vector<Term> enumerate_terms(const PolyExpr& expr, const std::vector<Term>& leaves,
                                         std::size_t cap = enumeration_cap()) {
  const std::size_t n = count_terms(expr, leaves.size(), cap);
  if (n > cap) {
    throw Error(ErrorCode::CombinatorialLimit, "'" + expr.to_string() + "' over " +
                                                   std::to_string(leaves.size()) +
                                                   " elements exceeds cap " + std::to_string(cap));
  }
  return detail::enumerate_over(expr, leaves);
}

inline std::vector<Term> enumerate_terms(const PolyExpr& expr,
                                         const std::vector<std::string>& states,
                                         std::size_t cap = enumeration_cap()) {
  std::vector<Term> leaves;
  for (const auto& s : states) leaves.push_back(Term::state(s));
  return enumerate_terms(expr, leaves, cap);
}

}  // namespace ltbe
