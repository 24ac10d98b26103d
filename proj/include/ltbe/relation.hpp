#pragma once

// Dense semiring-valued relations R : X x Y -> S over ordered finite carriers.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "ltbe/error.hpp"
#include "ltbe/semiring.hpp"

namespace ltbe {

/// Ordered list of opaque ids with O(1) lookup.
class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::vector<std::string> ids) : ids_(std::move(ids)) {
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!index_.emplace(ids_[i], i).second) {
        throw Error(ErrorCode::ValidationError, "carrier repeats '" + ids_[i] + "'");
      }
    }
  }

  std::size_t size() const { return ids_.size(); }
  const std::string& operator[](std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }

  std::optional<std::size_t> find(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const Carrier& other) const { return ids_ == other.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

inline CarrierPtr make_carrier(std::vector<std::string> ids) {
  return std::make_shared<const Carrier>(std::move(ids));
}

class ValRel {
 public:
  ValRel(SemiringKind kind, CarrierPtr rows, CarrierPtr cols, const Value& fill)
      : kind_(kind), rows_(std::move(rows)), cols_(std::move(cols)),
        values_(rows_->size() * cols_->size(), fill) {
    if (fill.kind() != kind) throw Error(ErrorCode::KindMismatch, "fill value of wrong kind");
  }

  ValRel(SemiringKind kind, std::vector<std::string> rows, std::vector<std::string> cols,
         const Value& fill)
      : ValRel(kind, make_carrier(std::move(rows)), make_carrier(std::move(cols)), fill) {}

  SemiringKind kind() const { return kind_; }
  const Carrier& rows() const { return *rows_; }
  const Carrier& cols() const { return *cols_; }
  const CarrierPtr& row_carrier() const { return rows_; }
  const CarrierPtr& col_carrier() const { return cols_; }

  const Value& at(std::size_t i, std::size_t j) const { return values_[i * cols_->size() + j]; }

  const Value& at(const std::string& row, const std::string& col) const {
    const auto i = rows_->find(row);
    const auto j = cols_->find(col);
    if (!i || !j) {
      throw Error(ErrorCode::CarrierMismatch, "no entry (" + row + ", " + col + ")");
    }
    return at(*i, *j);
  }

  void set(std::size_t i, std::size_t j, Value v) {
    if (v.kind() != kind_) throw Error(ErrorCode::KindMismatch, "entry of wrong kind");
    values_[i * cols_->size() + j] = std::move(v);
  }

  bool same_shape(const ValRel& other) const {
    return kind_ == other.kind_ && (rows_ == other.rows_ || *rows_ == *other.rows_) &&
           (cols_ == other.cols_ || *cols_ == *other.cols_);
  }

  bool operator==(const ValRel& other) const {
    return same_shape(other) && values_ == other.values_;
  }

 private:
  SemiringKind kind_;
  CarrierPtr rows_;
  CarrierPtr cols_;
  std::vector<Value> values_;
};

/// The all-one relation, top of the pointwise order.
inline ValRel top(CarrierPtr rows, CarrierPtr cols, SemiringKind kind) {
  return ValRel(kind, std::move(rows), std::move(cols), Value::one(kind));
}

inline ValRel top(std::vector<std::string> rows, std::vector<std::string> cols,
                  SemiringKind kind) {
  return top(make_carrier(std::move(rows)), make_carrier(std::move(cols)), kind);
}

using IdMap = std::function<std::string(const std::string&)>;

/// (f, g)^* R : the relation (x, y) |-> R(f(x), g(y)) over rows x cols.
inline ValRel reindex(CarrierPtr rows, CarrierPtr cols, const IdMap& f, const IdMap& g,
                      const ValRel& r) {
  ValRel out(r.kind(), rows, cols, Value::zero(r.kind()));
  std::vector<std::size_t> col_image(cols->size());
  for (std::size_t j = 0; j < cols->size(); ++j) {
    const auto k = r.cols().find(g((*cols)[j]));
    if (!k) throw Error(ErrorCode::CarrierMismatch, "g(" + (*cols)[j] + ") outside relation");
    col_image[j] = *k;
  }
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const auto k = r.rows().find(f((*rows)[i]));
    if (!k) throw Error(ErrorCode::CarrierMismatch, "f(" + (*rows)[i] + ") outside relation");
    for (std::size_t j = 0; j < cols->size(); ++j) out.set(i, j, r.at(*k, col_image[j]));
  }
  return out;
}

inline void require_same_shape(const ValRel& a, const ValRel& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::CarrierMismatch, "relations over different carriers");
}

inline bool pointwise_leq(const ValRel& a, const ValRel& b) {
  require_same_shape(a, b);
  for (std::size_t i = 0; i < a.rows().size(); ++i) {
    for (std::size_t j = 0; j < a.cols().size(); ++j) {
      if (!leq(a.at(i, j), b.at(i, j))) return false;
    }
  }
  return true;
}

inline double max_gap(const ValRel& a, const ValRel& b) {
  require_same_shape(a, b);
  double g = 0;
  for (std::size_t i = 0; i < a.rows().size(); ++i) {
    for (std::size_t j = 0; j < a.cols().size(); ++j) g = std::max(g, gap(a.at(i, j), b.at(i, j)));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Output

/// CSV cell text: Bool as 0/1, Prob with 9 decimals, Tropical integer or `inf`.
inline std::string format_cell(const Value& v) {
  switch (v.kind()) {
    case SemiringKind::Bool: return v.as_bool() ? "1" : "0";
    case SemiringKind::Prob: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.9f", v.as_prob());
      return buf;
    }
    case SemiringKind::Tropical: return v.to_string();
  }
  return "";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Header row of column ids, then one row per row id.
inline std::string to_csv(const ValRel& r) {
  std::ostringstream os;
  os << "state";
  for (const auto& c : r.cols().ids()) os << "," << csv_field(c);
  os << "\n";
  for (std::size_t i = 0; i < r.rows().size(); ++i) {
    os << csv_field(r.rows()[i]);
    for (std::size_t j = 0; j < r.cols().size(); ++j) os << "," << format_cell(r.at(i, j));
    os << "\n";
  }
  return os.str();
}

/// Row-major list of {row, col, value} records.
inline nlohmann::ordered_json to_json_records(const ValRel& r) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.rows().size(); ++i) {
    for (std::size_t j = 0; j < r.cols().size(); ++j) {
      nlohmann::ordered_json rec;
      rec["row"] = r.rows()[i];
      rec["col"] = r.cols()[j];
      rec["value"] = value_to_json<nlohmann::ordered_json>(r.at(i, j));
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace ltbe
