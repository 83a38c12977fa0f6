#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splearn/errors.hpp"
#include "splearn/pomset.hpp"

namespace splearn {

using Elem = std::size_t;

/// A finite bimonoid: a carrier of named elements, dense operation tables
/// for the sequential (⊙) and parallel (⊛) compositions, and a shared unit.
/// Construction checks shape only; validate_axioms checks the laws.
class Bimonoid {
 public:
  Bimonoid(std::vector<std::string> names, Elem unit,
           std::vector<std::vector<Elem>> seq_table,
           std::vector<std::vector<Elem>> par_table)
      : names_(std::move(names)), unit_(unit) {
    const std::size_t n = names_.size();
    if (n == 0) throw InvalidBimonoidError("carrier must be non-empty");
    if (unit_ >= n) throw InvalidBimonoidError("unit outside carrier");
    auto flatten = [n](const std::vector<std::vector<Elem>>& table,
                       const char* which) {
      if (table.size() != n) {
        throw InvalidBimonoidError(std::string(which) + " table must have one row per element");
      }
      std::vector<Elem> flat;
      flat.reserve(n * n);
      for (const auto& row : table) {
        if (row.size() != n) {
          throw InvalidBimonoidError(std::string(which) + " table row has wrong width");
        }
        for (Elem e : row) {
          if (e >= n) throw InvalidBimonoidError(std::string(which) + " table entry outside carrier");
          flat.push_back(e);
        }
      }
      return flat;
    };
    seq_ = flatten(seq_table, "seq");
    par_ = flatten(par_table, "par");
  }

  std::size_t size() const { return names_.size(); }
  Elem unit() const { return unit_; }
  const std::string& name(Elem e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Elem> find(const std::string& name) const {
    for (Elem e = 0; e < names_.size(); ++e) {
      if (names_[e] == name) return e;
    }
    return std::nullopt;
  }

  // Row is the left operand.
  Elem seq(Elem x, Elem y) const { return seq_[x * size() + y]; }
  Elem par(Elem x, Elem y) const { return par_[x * size() + y]; }
  Elem apply(Op op, Elem x, Elem y) const {
    return op == Op::Seq ? seq(x, y) : par(x, y);
  }

 private:
  std::vector<std::string> names_;
  Elem unit_;
  std::vector<Elem> seq_, par_;
};

struct LawViolation {
  std::string law;             // e.g. "seq-associativity"
  std::vector<Elem> witness;   // elements instantiating the failed equation

  std::string describe(const Bimonoid& b) const {
    std::string out = law + " violated at (";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) out += ", ";
      out += b.name(witness[i]);
    }
    out += ")";
    return out;
  }
};

struct AxiomReport {
  bool ok = true;
  std::vector<LawViolation> violations;  // first witness per violated law
};

/// Exhaustively checks the bimonoid laws over the carrier: ⊙ associative,
/// ⊛ associative and commutative, and the unit neutral for both operations.
/// Violations are reported as data, one witness per law.
inline AxiomReport validate_axioms(const Bimonoid& b) {
  AxiomReport report;
  const std::size_t n = b.size();
  const Elem one = b.unit();

  auto record = [&](const std::string& law, std::vector<Elem> witness) {
    report.ok = false;
    report.violations.push_back({law, std::move(witness)});
  };

  for (Elem x = 0; x < n; ++x) {
    if (b.seq(one, x) != x) {
      record("seq-unit-left", {x});
      break;
    }
  }
  for (Elem x = 0; x < n; ++x) {
    if (b.seq(x, one) != x) {
      record("seq-unit-right", {x});
      break;
    }
  }
  for (Elem x = 0; x < n; ++x) {
    if (b.par(one, x) != x || b.par(x, one) != x) {
      record("par-unit", {x});
      break;
    }
  }

  bool done = false;
  for (Elem x = 0; x < n && !done; ++x) {
    for (Elem y = x + 1; y < n && !done; ++y) {
      if (b.par(x, y) != b.par(y, x)) {
        record("par-commutativity", {x, y});
        done = true;
      }
    }
  }

  done = false;
  for (Elem x = 0; x < n && !done; ++x) {
    for (Elem y = 0; y < n && !done; ++y) {
      for (Elem z = 0; z < n && !done; ++z) {
        if (b.seq(b.seq(x, y), z) != b.seq(x, b.seq(y, z))) {
          record("seq-associativity", {x, y, z});
          done = true;
        }
      }
    }
  }

  done = false;
  for (Elem x = 0; x < n && !done; ++x) {
    for (Elem y = 0; y < n && !done; ++y) {
      for (Elem z = 0; z < n && !done; ++z) {
        if (b.par(b.par(x, y), z) != b.par(x, b.par(y, z))) {
          record("par-associativity", {x, y, z});
          done = true;
        }
      }
    }
  }

  return report;
}

inline void require_valid(const Bimonoid& b) {
  AxiomReport report = validate_axioms(b);
  if (!report.ok) {
    throw InvalidBimonoidError(report.violations.front().describe(b));
  }
}

}  // namespace splearn
