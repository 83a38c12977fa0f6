#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "splearn/pomset.hpp"
#include "splearn/recogniser.hpp"

namespace splearn {

struct ClosednessDefect {
  Pomset t;  // member of ext(S) whose row matches no row of S
};

struct AssociativityDefect {
  Op op = Op::Seq;
  Pomset s1, s2, s3, sl, sr;
  Context e;
  std::size_t column = 0;
};

struct CompatibilityDefect {
  Pomset s;
  Context e;
};

/// Observation table ⟨S, E⟩ over a membership oracle. Rows are indexed by
/// pomsets, columns by one-hole contexts; the cell at (t, e) records whether
/// e[t] belongs to the target language. The membership cache is write-once
/// and shared by table filling, compatibility checking, and counterexample
/// handling, so repeated queries never reach the oracle twice.
class ObservationTable {
 public:
  using MembershipFn = std::function<bool(const Pomset&)>;

  ObservationTable(Alphabet alphabet, MembershipFn membership)
      : alphabet_(std::move(alphabet)), membership_(std::move(membership)) {
    rows_.push_back(Pomset::empty());
    columns_.push_back(Context::hole());
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Pomset>& rows() const { return rows_; }          // S
  const std::vector<Context>& columns() const { return columns_; }   // E

  bool membership(const Pomset& u) {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    bool value = membership_(u);
    cache_.emplace(u, value);
    return value;
  }

  std::vector<bool> row_of(const Pomset& t) {
    std::vector<bool> row;
    row.reserve(columns_.size());
    for (const Context& e : columns_) row.push_back(membership(plug(e, t)));
    return row;
  }

  /// ext(S) = Σ ∪ {s·t : s,t ∈ S} ∪ {s∥t : s,t ∈ S}, canonicalised,
  /// deduplicated, ordered by node count then print.
  std::vector<Pomset> ext() {
    std::set<Pomset> out;
    for (const auto& a : alphabet_.symbols()) out.insert(Pomset::letter(a));
    for (const Pomset& s : rows_) {
      for (const Pomset& t : rows_) {
        out.insert(seq(s, t));
        out.insert(par(s, t));
      }
    }
    return {out.begin(), out.end()};
  }

  /// Adds a member of ext(S) to S, recording how it decomposes over S.
  /// Letters and the unit need no decomposition; anything else must be a
  /// composition of two current members.
  void add_row(const Pomset& t) {
    if (std::find(rows_.begin(), rows_.end(), t) != rows_.end()) {
      throw TeacherInconsistentError("row already present: " + t.str());
    }
    Decomp d;
    if (t.kind() == TermKind::Seq || t.kind() == TermKind::Par) {
      d = find_decomposition(t);
      if (!d.found) {
        throw NotClosedError("pomset is not in ext(S): " + t.str());
      }
    }
    rows_.push_back(t);
    decomp_.emplace(t, d);
  }

  void add_column(const Context& e) {
    if (std::find(columns_.begin(), columns_.end(), e) != columns_.end()) {
      throw TeacherInconsistentError("column already present: " + e.str());
    }
    columns_.push_back(e);
  }

  /// First t in ext(S) (deterministic order) whose row differs from every
  /// row of S; nullopt when the table is closed.
  std::optional<ClosednessDefect> find_closedness_defect() {
    std::set<std::vector<bool>> s_rows;
    for (const Pomset& s : rows_) s_rows.insert(row_of(s));
    for (const Pomset& t : ext()) {
      if (!s_rows.count(row_of(t))) return ClosednessDefect{t};
    }
    return std::nullopt;
  }

  bool is_closed() { return !find_closedness_defect().has_value(); }

  /// Scans S³ in (node count, print) order; for each triple looks up the
  /// unique members representing the partial compositions and returns the
  /// first triple and column where the two bracketings disagree.
  std::optional<AssociativityDefect> find_associativity_defect(Op op) {
    std::vector<Pomset> sorted = rows_;
    std::sort(sorted.begin(), sorted.end());
    std::map<std::vector<bool>, Pomset> rep;
    for (const Pomset& s : sorted) {
      rep.emplace(row_of(s), s);  // sharp tables make this injective
    }
    auto representative = [&](const Pomset& t) -> Pomset {
      auto it = rep.find(row_of(t));
      if (it == rep.end()) {
        throw NotClosedError("no row of S matches " + t.str());
      }
      return it->second;
    };
    for (const Pomset& s1 : sorted) {
      for (const Pomset& s2 : sorted) {
        for (const Pomset& s3 : sorted) {
          Pomset sl = representative(compose(op, s1, s2));
          Pomset sr = representative(compose(op, s2, s3));
          std::vector<bool> left = row_of(compose(op, sl, s3));
          std::vector<bool> right = row_of(compose(op, s1, sr));
          for (std::size_t k = 0; k < columns_.size(); ++k) {
            if (left[k] != right[k]) {
              return AssociativityDefect{op, s1, s2, s3, sl, sr, columns_[k], k};
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  bool is_associative() {
    return !find_associativity_defect(Op::Seq) && !find_associativity_defect(Op::Par);
  }

  /// Repairs an associativity defect with one membership query, adding the
  /// column that separates two previously equal rows. Returns the column.
  Context fix_associativity(const AssociativityDefect& d) {
    bool b = membership(compose(d.op, compose(d.op, d.s1, d.s2), d.s3));
    bool left = row_of(compose(d.op, d.sl, d.s3))[d.column];
    Context column = left != b ? plug_context(d.e, compose(d.op, Context::hole(), d.s3))
                               : plug_context(d.e, compose(d.op, d.s1, Context::hole()));
    add_column(column);
    return column;
  }

  bool is_sharp() {
    std::set<std::vector<bool>> seen;
    for (const Pomset& s : rows_) {
      if (!seen.insert(row_of(s)).second) return false;
    }
    return true;
  }

  /// Every member of S is the unit, a letter, or carries a recorded
  /// decomposition into two members of S.
  bool is_ext_generated() const {
    for (const Pomset& s : rows_) {
      if (s.kind() == TermKind::Empty || s.kind() == TermKind::Letter) continue;
      auto it = decomp_.find(s);
      if (it == decomp_.end() || !it->second.found) return false;
      const Decomp& d = it->second;
      bool left_in = std::find(rows_.begin(), rows_.end(), d.left) != rows_.end();
      bool right_in = std::find(rows_.begin(), rows_.end(), d.right) != rows_.end();
      if (!left_in || !right_in || compose(d.op, d.left, d.right) != s) return false;
    }
    return true;
  }

  /// Builds the hypothesis recogniser from the rows of S: the carrier is the
  /// row space, compositions are looked up through closedness, the unit is
  /// the row of 1, and a row accepts when its hole column holds.
  Recogniser build_hypothesis() {
    if (!is_sharp()) throw DefectPresentError("table is not sharp");
    if (auto defect = find_closedness_defect()) {
      throw DefectPresentError("table is not closed at " + defect->t.str());
    }
    for (Op op : {Op::Seq, Op::Par}) {
      if (auto defect = find_associativity_defect(op)) {
        throw DefectPresentError("table is not associative");
      }
    }

    const std::size_t n = rows_.size();
    std::map<std::vector<bool>, Elem> index;
    for (Elem i = 0; i < n; ++i) index.emplace(row_of(rows_[i]), i);
    auto lookup = [&](const Pomset& t) { return index.at(row_of(t)); };

    std::vector<std::string> names;
    names.reserve(n);
    for (const Pomset& s : rows_) names.push_back(s.str());
    std::vector<std::vector<Elem>> seq_table(n), par_table(n);
    for (Elem i = 0; i < n; ++i) {
      for (Elem j = 0; j < n; ++j) {
        seq_table[i].push_back(lookup(seq(rows_[i], rows_[j])));
        par_table[i].push_back(lookup(par(rows_[i], rows_[j])));
      }
    }
    std::vector<Elem> letters;
    for (const auto& a : alphabet_.symbols()) letters.push_back(lookup(Pomset::letter(a)));
    std::vector<bool> accepting;
    for (const Pomset& s : rows_) accepting.push_back(membership(s));

    Elem unit = lookup(Pomset::empty());
    Recogniser hypothesis(Bimonoid(std::move(names), unit, std::move(seq_table),
                                   std::move(par_table)),
                          alphabet_, std::move(letters), std::move(accepting));
    require_valid(hypothesis.bimonoid());
    return hypothesis;
  }

  /// First (s, e) where the hypothesis disagrees with the recorded cell.
  /// Hypothesis evaluation is used on the left; no oracle queries are made
  /// beyond the cells already in the table.
  std::optional<CompatibilityDefect> find_compatibility_defect(const Recogniser& h) {
    std::vector<Pomset> sorted = rows_;
    std::sort(sorted.begin(), sorted.end());
    for (const Pomset& s : sorted) {
      std::vector<bool> cells = row_of(s);
      for (std::size_t k = 0; k < columns_.size(); ++k) {
        if (accepts(h, plug(columns_[k], s)) != cells[k]) {
          if (columns_[k] == Context::hole()) {
            throw TeacherInconsistentError(
                "hypothesis disagrees with its own table at the hole column: " + s.str());
          }
          return CompatibilityDefect{s, columns_[k]};
        }
      }
    }
    return std::nullopt;
  }

  using HandleResult = std::variant<Pomset, Context>;

  /// Counterexample recursion: replaces sub-pomsets of z by the members of S
  /// with equal rows while membership of the surrounding context is
  /// preserved, and otherwise returns the context that separates two rows
  /// currently considered equal. The table must be closed and sharp.
  HandleResult handle_counterexample(const Pomset& z, const Context& c) {
    if (in_s_or_ext(z)) {
      Pomset s = unique_representative(z);
      if (membership(plug(c, s)) == membership(plug(c, z))) return s;
      return c;
    }
    Decomposition d = decompose(z);
    // z is outside S ∪ ext(S), which contains 1 and all letters.
    if (d.kind != Decomposition::Kind::Split) {
      throw TeacherInconsistentError("unit or letter outside the table: " + z.str());
    }
    HandleResult first =
        handle_counterexample(d.left, plug_context(c, compose(d.op, Context::hole(), d.right)));
    if (std::holds_alternative<Context>(first)) return first;
    Pomset u1 = std::get<Pomset>(first);

    HandleResult second =
        handle_counterexample(d.right, plug_context(c, compose(d.op, u1, Context::hole())));
    if (std::holds_alternative<Context>(second)) return second;
    Pomset u2 = std::get<Pomset>(second);

    return handle_counterexample(compose(d.op, u1, u2), c);
  }

 private:
  struct Decomp {
    bool found = false;
    Pomset left, right;
    Op op = Op::Seq;
  };

  Decomp find_decomposition(const Pomset& t) const {
    std::vector<Pomset> sorted = rows_;
    std::sort(sorted.begin(), sorted.end());
    for (const Pomset& s1 : sorted) {
      for (const Pomset& s2 : sorted) {
        for (Op op : {Op::Seq, Op::Par}) {
          if (compose(op, s1, s2) == t) return {true, s1, s2, op};
        }
      }
    }
    return {};
  }

  bool in_s_or_ext(const Pomset& z) {
    if (std::find(rows_.begin(), rows_.end(), z) != rows_.end()) return true;
    if (z.kind() == TermKind::Letter) return alphabet_.contains(z.symbol());
    if (z.kind() == TermKind::Empty) return true;  // 1 = 1·1 with 1 ∈ S
    return find_decomposition(z).found;
  }

  Pomset unique_representative(const Pomset& z) {
    std::vector<bool> target = row_of(z);
    for (const Pomset& s : rows_) {
      if (row_of(s) == target) return s;  // unique by sharpness
    }
    throw NotClosedError("no row of S matches " + z.str());
  }

  Alphabet alphabet_;
  MembershipFn membership_;
  std::vector<Pomset> rows_;
  std::vector<Context> columns_;
  std::map<Pomset, Decomp> decomp_;
  std::map<Pomset, bool> cache_;
};

}  // namespace splearn
