#pragma once

// Type stacks, finite coalgebras and their JSON file format.
//
//   { "kind": "bool|prob|tropical",
//     "stack": ["<functor>" | "T", ...],        outermost layer first
//     "states": ["c0", ...],
//     "transitions": { "c0": <value>, ... } }
//
// Values follow the stack outside-in. Polynomial layers use tagged nodes
// {"inj": i, "of": v}, {"pair": [v, v]}, {"atom": "a"}, {"tuple": {"a": v}};
// the innermost Id positions are {"state": id}. A "T" layer is a list of
// values (bool) or of {"term": v, "weight": w} records (prob, tropical).

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ltbe/branching.hpp"
#include "ltbe/error.hpp"
#include "ltbe/polyfunctor.hpp"
#include "ltbe/relation.hpp"
#include "ltbe/semiring.hpp"
#include "ltbe/term.hpp"

namespace ltbe {

/// One layer of a type stack: a polynomial functor or the branching monad.
class Layer {
 public:
  static Layer poly(PolyExpr expr) { return Layer(std::move(expr)); }
  static Layer branch() { return Layer(std::monostate{}); }

  bool is_branch() const { return std::holds_alternative<std::monostate>(layer_); }
  const PolyExpr& expr() const {
    if (is_branch()) throw Error(ErrorCode::TypeError, "branching layer has no functor");
    return std::get<PolyExpr>(layer_);
  }

  std::string to_string() const { return is_branch() ? "T" : expr().to_string(); }
  bool operator==(const Layer& other) const { return to_string() == other.to_string(); }

 private:
  explicit Layer(std::variant<std::monostate, PolyExpr> l) : layer_(std::move(l)) {}
  std::variant<std::monostate, PolyExpr> layer_;
};

/// Composite type L1 o L2 o ... o Ln; layers are listed outermost first.
struct TypeStack {
  std::vector<Layer> layers;
  SemiringKind kind = SemiringKind::Bool;

  bool has_branching() const {
    for (const auto& l : layers) {
      if (l.is_branch()) return true;
    }
    return false;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (i) out += " . ";
      out += "(" + layers[i].to_string() + ")";
    }
    return out;
  }

  bool operator==(const TypeStack&) const = default;
};

/// The branch-free part of a stack: its polynomial layers, in order.
inline TypeStack linear_part(const TypeStack& stack) {
  TypeStack out{{}, stack.kind};
  for (const auto& l : stack.layers) {
    if (!l.is_branch()) out.layers.push_back(l);
  }
  if (out.layers.empty()) {
    throw Error(ErrorCode::DegenerateStack, "stack " + stack.to_string() + " has no polynomial layer");
  }
  return out;
}

/// True iff `term` inhabits layers[from..] applied to `states`.
inline bool well_typed(const TypeStack& stack, std::size_t from, const Term& term,
                       const std::set<std::string>& states) {
  if (from == stack.layers.size()) {
    return term.is(Term::Tag::State) && states.count(term.text()) > 0;
  }
  const Layer& layer = stack.layers[from];
  auto inner = [&](const Term& t) { return well_typed(stack, from + 1, t, states); };
  if (!layer.is_branch()) return well_typed(layer.expr(), term, inner);
  if (!term.is(Term::Tag::Branch)) return false;
  const BranchVal& v = term.branch_value();
  if (v.kind != stack.kind || !validate_branchval(v)) return false;
  for (const auto& entry : v.support) {
    if (!inner(entry.first)) return false;
  }
  return true;
}

/// A finite coalgebra (states, transition) of the stack's type.
struct System {
  TypeStack stack;
  std::vector<std::string> states;
  std::vector<Term> transitions;

  std::size_t size() const { return states.size(); }
  CarrierPtr carrier() const { return make_carrier(states); }
};

/// Builds a system, checking that every transition value is well typed.
inline System make_system(TypeStack stack, std::vector<std::string> states,
                          std::vector<Term> transitions) {
  if (stack.layers.empty()) throw Error(ErrorCode::ValidationError, "empty type stack");
  if (states.size() != transitions.size()) {
    throw Error(ErrorCode::ValidationError, "one transition per state is required");
  }
  const std::set<std::string> ids(states.begin(), states.end());
  if (ids.size() != states.size()) throw Error(ErrorCode::ValidationError, "repeated state id");
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!well_typed(stack, 0, transitions[i], ids)) {
      throw Error(ErrorCode::TypeError, "transition of '" + states[i] + "' is not of type " +
                                            stack.to_string() + ": " + transitions[i].key());
    }
  }
  return System{std::move(stack), std::move(states), std::move(transitions)};
}

/// A system whose stack has no branching layer; stands in for a final coalgebra.
struct SpecSystem : System {
  SpecSystem() = default;
  explicit SpecSystem(System s) : System(std::move(s)) {
    if (stack.has_branching()) {
      throw Error(ErrorCode::ValidationError, "specification stack " + stack.to_string() +
                                                  " contains a branching layer");
    }
  }
};

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void type_error(const json& j, const std::string& expected) {
  throw Error(ErrorCode::TypeError, "expected " + expected + ", got " + j.dump());
}

inline const json& only_field(const json& j, const char* name, const std::string& expected) {
  if (!j.is_object() || j.size() != 1 || !j.contains(name)) type_error(j, expected);
  return j.at(name);
}

class TermReader {
 public:
  TermReader(const TypeStack& stack, const std::set<std::string>& states)
      : stack_(stack), states_(states) {}

  Term read(const json& j, std::size_t layer) const {
    if (layer == stack_.layers.size()) {
      const json& id = only_field(j, "state", "a {\"state\": id} reference");
      if (!id.is_string()) type_error(j, "a state id string");
      if (!states_.count(id.get<std::string>())) {
        throw Error(ErrorCode::ValidationError, "unknown state id '" + id.get<std::string>() + "'");
      }
      return Term::state(id.get<std::string>());
    }
    const Layer& l = stack_.layers[layer];
    if (l.is_branch()) return read_branch(j, layer);
    return read_poly(l.expr(), j, layer);
  }

 private:
  Term read_branch(const json& j, std::size_t layer) const {
    if (!j.is_array()) type_error(j, "a branching list");
    std::vector<std::pair<Term, Value>> entries;
    for (const auto& e : j) {
      if (stack_.kind == SemiringKind::Bool) {
        entries.emplace_back(read(e, layer + 1), Value::boolean(true));
      } else {
        if (!e.is_object() || e.size() != 2 || !e.contains("term") || !e.contains("weight")) {
          type_error(e, "a {\"term\", \"weight\"} record");
        }
        Value w = [&] {
          try {
            return value_from_json(stack_.kind, e.at("weight"));
          } catch (const Error& err) {
            if (err.code() == ErrorCode::ValidationError) throw;
            type_error(e.at("weight"), std::string(to_string(stack_.kind)) + " weight");
          }
        }();
        entries.emplace_back(read(e.at("term"), layer + 1), w);
      }
    }
    return Term::branch(make_branchval(stack_.kind, std::move(entries)));
  }

  Term read_poly(const PolyExpr& expr, const json& j, std::size_t layer) const {
    switch (expr.tag()) {
      case PolyExpr::Tag::Id: return read(j, layer + 1);
      case PolyExpr::Tag::Const: {
        const json& a = only_field(j, "atom", "an atom of " + expr.to_string());
        if (!a.is_string()) type_error(j, "an atom label");
        for (const auto& label : expr.atoms()) {
          if (label == a.get<std::string>()) return Term::atom(label);
        }
        type_error(j, "an atom of " + expr.to_string());
      }
      case PolyExpr::Tag::Prod: {
        const json& p = only_field(j, "pair", "a pair for " + expr.to_string());
        if (!p.is_array() || p.size() != 2) type_error(j, "a two-element pair");
        return Term::pair(read_poly(expr.children()[0], p[0], layer),
                          read_poly(expr.children()[1], p[1], layer));
      }
      case PolyExpr::Tag::Coprod: {
        if (!j.is_object() || j.size() != 2 || !j.contains("inj") || !j.contains("of") ||
            !j.at("inj").is_number_unsigned()) {
          type_error(j, "an injection into " + expr.to_string());
        }
        const auto i = j.at("inj").get<std::size_t>();
        if (i >= expr.children().size()) type_error(j, "an injection index in range");
        return Term::inj(i, read_poly(expr.children()[i], j.at("of"), layer));
      }
      case PolyExpr::Tag::Power: {
        const json& t = only_field(j, "tuple", "a tuple for " + expr.to_string());
        if (!t.is_object() || t.size() != expr.atoms().size()) type_error(j, "a full tuple");
        std::vector<std::pair<std::string, Term>> comps;
        for (const auto& a : expr.atoms()) {
          if (!t.contains(a)) type_error(j, "a tuple component '" + a + "'");
          comps.emplace_back(a, read_poly(expr.body(), t.at(a), layer));
        }
        return Term::tuple(std::move(comps));
      }
    }
    type_error(j, "a term");
  }

  const TypeStack& stack_;
  const std::set<std::string>& states_;
};

}  // namespace detail

/// Reads a system from parsed JSON.
inline System system_from_json(const nlohmann::json& j) {
  using detail::type_error;
  if (!j.is_object()) type_error(j, "a system object");
  for (const char* field : {"kind", "stack", "states", "transitions"}) {
    if (!j.contains(field)) throw Error(ErrorCode::ParseError, std::string("missing field '") + field + "'");
  }
  if (!j.at("kind").is_string()) type_error(j.at("kind"), "a kind string");
  TypeStack stack{{}, parse_kind(j.at("kind").get<std::string>())};
  if (!j.at("stack").is_array() || j.at("stack").empty()) type_error(j.at("stack"), "a nonempty stack");
  for (const auto& l : j.at("stack")) {
    if (!l.is_string()) type_error(l, "a layer string");
    const auto s = l.get<std::string>();
    stack.layers.push_back(s == "T" ? Layer::branch() : Layer::poly(parse_poly(s)));
  }
  if (!j.at("states").is_array()) type_error(j.at("states"), "a list of state ids");
  std::vector<std::string> states;
  for (const auto& s : j.at("states")) {
    if (!s.is_string()) type_error(s, "a state id string");
    states.push_back(s.get<std::string>());
  }
  const std::set<std::string> ids(states.begin(), states.end());
  if (ids.size() != states.size()) throw Error(ErrorCode::ValidationError, "repeated state id");

  const auto& tr = j.at("transitions");
  if (!tr.is_object()) type_error(tr, "a transitions object");
  for (const auto& [id, _] : tr.items()) {
    if (!ids.count(id)) throw Error(ErrorCode::ValidationError, "transition for unknown state '" + id + "'");
  }
  detail::TermReader reader(stack, ids);
  std::vector<Term> transitions;
  for (const auto& s : states) {
    if (!tr.contains(s)) throw Error(ErrorCode::ValidationError, "no transition for state '" + s + "'");
    transitions.push_back(reader.read(tr.at(s), 0));
  }
  return make_system(std::move(stack), std::move(states), std::move(transitions));
}

inline System parse_system(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return system_from_json(j);
}

inline SpecSystem parse_spec(std::string_view text) { return SpecSystem(parse_system(text)); }

inline nlohmann::ordered_json system_to_json(const System& sys) {
  nlohmann::ordered_json out;
  out["kind"] = std::string(to_string(sys.stack.kind));
  out["stack"] = nlohmann::ordered_json::array();
  for (const auto& l : sys.stack.layers) out["stack"].push_back(l.to_string());
  out["states"] = sys.states;
  nlohmann::ordered_json tr = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    tr[sys.states[i]] = nlohmann::ordered_json::parse(sys.transitions[i].to_json().dump());
  }
  out["transitions"] = std::move(tr);
  return out;
}

/// Canonical file text; parse_system(serialize_system(s)) reproduces s.
inline std::string serialize_system(const System& sys) { return system_to_json(sys).dump(2) + "\n"; }

}  // namespace ltbe
