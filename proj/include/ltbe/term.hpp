#pragma once

// Immutable transition values. One tree type covers every layer of a type
// stack: polynomial nodes (atoms, pairs, injections, tuples), branching nodes
// (finite-support weight functions) and state references at the leaves.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ltbe/error.hpp"
#include "ltbe/semiring.hpp"

namespace ltbe {

class Term;

/// Element of T(X): a finite-support weight function. Canonical form keeps the
/// support sorted by key with no zero weights; see make_branchval().
struct BranchVal {
  SemiringKind kind = SemiringKind::Bool;
  std::vector<std::pair<Term, Value>> support;

  bool operator==(const BranchVal& other) const;
};

class Term {
 public:
  enum class Tag { State, Atom, Pair, Inj, Tuple, Branch };

  static Term state(std::string id) {
    Node n;
    n.tag = Tag::State;
    n.text = std::move(id);
    n.json = {{"state", n.text}};
    n.key = n.text;
    return Term(std::move(n));
  }

  static Term atom(std::string label) {
    Node n;
    n.tag = Tag::Atom;
    n.text = std::move(label);
    n.json = {{"atom", n.text}};
    return Term(std::move(n));
  }

  static Term pair(Term left, Term right) {
    Node n;
    n.tag = Tag::Pair;
    n.json = {{"pair", nlohmann::json::array({left.to_json(), right.to_json()})}};
    n.children = {std::move(left), std::move(right)};
    return Term(std::move(n));
  }

  static Term inj(std::size_t index, Term body) {
    Node n;
    n.tag = Tag::Inj;
    n.index = index;
    n.json = {{"inj", index}, {"of", body.to_json()}};
    n.children = {std::move(body)};
    return Term(std::move(n));
  }

  /// Components are kept in the order given (the exponent order of the functor).
  static Term tuple(std::vector<std::pair<std::string, Term>> components) {
    Node n;
    n.tag = Tag::Tuple;
    nlohmann::json obj = nlohmann::json::object();
    for (auto& [label, t] : components) {
      obj[label] = t.to_json();
      n.labels.push_back(label);
      n.children.push_back(std::move(t));
    }
    n.json = {{"tuple", std::move(obj)}};
    return Term(std::move(n));
  }

  /// Wraps a branching value; the value is taken as-is (canonicalize first).
  static Term branch(BranchVal value) {
    Node n;
    n.tag = Tag::Branch;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [t, w] : value.support) {
      if (value.kind == SemiringKind::Bool) {
        arr.push_back(t.to_json());
      } else {
        arr.push_back({{"term", t.to_json()}, {"weight", value_to_json(w)}});
      }
    }
    n.json = std::move(arr);
    n.branch = std::move(value);
    return Term(std::move(n));
  }

  Tag tag() const { return node_->tag; }
  bool is(Tag t) const { return node_->tag == t; }

  /// State id or atom label.
  const std::string& text() const { return node_->text; }
  std::size_t index() const { return node_->index; }
  const std::vector<Term>& children() const { return node_->children; }
  const std::vector<std::string>& labels() const { return node_->labels; }
  const BranchVal& branch_value() const {
    if (!node_->branch) throw Error(ErrorCode::TypeError, "not a branching value: " + key());
    return *node_->branch;
  }

  /// Canonical identity. A state's key is its bare id, so carriers of states and
  /// carriers of composite terms index relations the same way.
  const std::string& key() const { return node_->key; }
  const nlohmann::json& to_json() const { return node_->json; }

  bool operator==(const Term& other) const {
    return node_ == other.node_ || (tag() == other.tag() && key() == other.key());
  }
  bool operator<(const Term& other) const { return key() < other.key(); }

 private:
  struct Node {
    Tag tag = Tag::State;
    std::string text;
    std::size_t index = 0;
    std::vector<Term> children;
    std::vector<std::string> labels;
    std::optional<BranchVal> branch;
    nlohmann::json json;
    std::string key;
  };

  explicit Term(Node n) {
    if (n.tag != Tag::State) n.key = n.json.dump();
    node_ = std::make_shared<const Node>(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

inline bool BranchVal::operator==(const BranchVal& other) const {
  return kind == other.kind && support == other.support;
}

}  // namespace ltbe
