#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splearn/bimonoid.hpp"
#include "splearn/enumerate.hpp"
#include "splearn/pomset.hpp"

namespace splearn {

/// A pomset recogniser: a finite bimonoid together with a letter
/// interpretation and an accepting subset. Immutable after construction and
/// safe to share between threads.
class Recogniser {
 public:
  Recogniser(Bimonoid bimonoid, Alphabet alphabet,
             std::vector<Elem> letter_interpretation, std::vector<bool> accepting)
      : bimonoid_(std::move(bimonoid)),
        alphabet_(std::move(alphabet)),
        letter_(std::move(letter_interpretation)),
        accepting_(std::move(accepting)) {
    if (letter_.size() != alphabet_.size()) {
      throw InvalidBimonoidError("letter interpretation must cover the alphabet");
    }
    for (Elem e : letter_) {
      if (e >= bimonoid_.size()) {
        throw InvalidBimonoidError("letter interpretation outside carrier");
      }
    }
    if (accepting_.size() != bimonoid_.size()) {
      throw InvalidBimonoidError("accepting set must be indexed by the carrier");
    }
  }

  const Bimonoid& bimonoid() const { return bimonoid_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return bimonoid_.size(); }
  Elem unit() const { return bimonoid_.unit(); }
  Elem letter(std::size_t alphabet_index) const { return letter_[alphabet_index]; }
  Elem letter(const std::string& symbol) const {
    return letter_[alphabet_.index_of(symbol)];
  }
  bool accepting(Elem e) const { return accepting_[e]; }
  const std::vector<bool>& accepting_set() const { return accepting_; }

 private:
  Bimonoid bimonoid_;
  Alphabet alphabet_;
  std::vector<Elem> letter_;
  std::vector<bool> accepting_;
};

/// The free-extension value i♯(u): structural fold with unit, letter
/// interpretation, ⊙ for Seq and ⊛ for Par.
inline Elem eval(const Recogniser& r, const Pomset& u) {
  switch (u.kind()) {
    case TermKind::Empty:
      return r.unit();
    case TermKind::Letter:
      return r.letter(u.symbol());
    case TermKind::Seq:
    case TermKind::Par: {
      const bool is_seq = u.kind() == TermKind::Seq;
      Elem acc = r.unit();
      for (const auto& p : u.parts()) {
        Elem pe = eval(r, p);
        acc = is_seq ? r.bimonoid().seq(acc, pe) : r.bimonoid().par(acc, pe);
      }
      return acc;
    }
    case TermKind::Hole:
      break;
  }
  throw ParseError("cannot evaluate a term with a hole");
}

inline bool accepts(const Recogniser& r, const Pomset& u) {
  return r.accepting(eval(r, u));
}

namespace detail {

// Least fixpoint of "reachable by some pomset", with the minimal witness
// node count per element. Seeds: unit by 1, letters by their symbols.
inline std::vector<std::optional<int>> reachable_node_counts(const Recogniser& r) {
  const std::size_t n = r.size();
  std::vector<std::optional<int>> dist(n);
  dist[r.unit()] = 0;
  for (std::size_t i = 0; i < r.alphabet().size(); ++i) {
    Elem e = r.letter(i);
    if (!dist[e] || *dist[e] > 1) dist[e] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem x = 0; x < n; ++x) {
      if (!dist[x]) continue;
      for (Elem y = 0; y < n; ++y) {
        if (!dist[y]) continue;
        int d = *dist[x] + *dist[y];
        for (Elem z : {r.bimonoid().seq(x, y), r.bimonoid().par(x, y)}) {
          if (!dist[z] || *dist[z] > d) {
            dist[z] = d;
            changed = true;
          }
        }
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Witness pomsets for the reachable elements, minimal in enumeration order
/// (node count, then canonical print). Unreachable elements are absent.
inline std::map<Elem, Pomset> reachable(const Recogniser& r) {
  auto dist = detail::reachable_node_counts(r);
  int max_nodes = 0;
  std::size_t reachable_count = 0;
  for (const auto& d : dist) {
    if (d) {
      ++reachable_count;
      max_nodes = std::max(max_nodes, *d);
    }
  }
  std::map<Elem, Pomset> witness;
  for (const Pomset& u : enumerate_pomsets(r.alphabet(), max_nodes)) {
    Elem e = eval(r, u);
    if (dist[e] && !witness.count(e)) {
      witness.emplace(e, u);
      if (witness.size() == reachable_count) break;
    }
  }
  return witness;
}

struct EquivalenceOutcome {
  bool equal = false;
  std::optional<Pomset> counterexample;
};

/// Exact language equivalence via the reachable part of the product. When
/// the languages differ, the returned counterexample is minimal in
/// enumeration order.
inline EquivalenceOutcome equivalence(const Recogniser& r1, const Recogniser& r2) {
  if (r1.alphabet() != r2.alphabet()) {
    throw AlphabetMismatchError("equivalence requires identical alphabets");
  }
  const std::size_t n2 = r2.size();
  auto code = [n2](Elem x, Elem y) { return x * n2 + y; };

  // Minimal witness node count per reachable product pair.
  std::map<std::size_t, int> dist;
  dist[code(r1.unit(), r2.unit())] = 0;
  for (std::size_t i = 0; i < r1.alphabet().size(); ++i) {
    std::size_t c = code(r1.letter(i), r2.letter(i));
    auto it = dist.find(c);
    if (it == dist.end() || it->second > 1) dist[c] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<std::size_t, int>> snapshot(dist.begin(), dist.end());
    for (const auto& [cx, dx] : snapshot) {
      for (const auto& [cy, dy] : snapshot) {
        Elem x1 = cx / n2, x2 = cx % n2;
        Elem y1 = cy / n2, y2 = cy % n2;
        int d = dx + dy;
        std::size_t cs = code(r1.bimonoid().seq(x1, y1), r2.bimonoid().seq(x2, y2));
        std::size_t cp = code(r1.bimonoid().par(x1, y1), r2.bimonoid().par(x2, y2));
        for (std::size_t c : {cs, cp}) {
          auto it = dist.find(c);
          if (it == dist.end() || it->second > d) {
            dist[c] = d;
            changed = true;
          }
        }
      }
    }
  }

  std::optional<int> disagreement;
  for (const auto& [c, d] : dist) {
    Elem e1 = c / n2, e2 = c % n2;
    if (r1.accepting(e1) != r2.accepting(e2)) {
      if (!disagreement || *disagreement > d) disagreement = d;
    }
  }
  if (!disagreement) return {true, std::nullopt};

  for (const Pomset& u : enumerate_pomsets(r1.alphabet(), *disagreement)) {
    if (accepts(r1, u) != accepts(r2, u)) return {false, u};
  }
  throw ClosureDivergedError("product closure and enumeration disagree");
}

namespace detail {

// Moore-style partition refinement: start from {accepting, rest}, refine by
// the one-step experiments x⊙m, m⊙x, x⊛m for every carrier element m until
// stable. Returns a block id per element; stable blocks form a congruence.
inline std::vector<std::size_t> refine_partition(const Bimonoid& b,
                                                 const std::vector<bool>& accepting) {
  const std::size_t n = b.size();
  std::vector<std::size_t> block(n);
  for (Elem x = 0; x < n; ++x) block[x] = accepting[x] ? 1 : 0;

  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (Elem x = 0; x < n; ++x) {
      std::vector<std::size_t> signature;
      signature.reserve(3 * n + 1);
      signature.push_back(block[x]);
      for (Elem m = 0; m < n; ++m) {
        signature.push_back(block[b.seq(x, m)]);
        signature.push_back(block[b.seq(m, x)]);
        signature.push_back(block[b.par(x, m)]);
      }
      auto [it, inserted] = ids.emplace(std::move(signature), ids.size());
      next[x] = it->second;
    }
    // Renumber blocks by first occurrence so ids are deterministic.
    std::map<std::size_t, std::size_t> renumber;
    for (Elem x = 0; x < n; ++x) {
      auto [it, inserted] = renumber.emplace(next[x], renumber.size());
      next[x] = it->second;
    }
    if (next == block) return block;
    block = std::move(next);
  }
}

inline Recogniser restrict_to(const Recogniser& r, const std::vector<Elem>& keep) {
  std::vector<Elem> position(r.size(), static_cast<Elem>(-1));
  for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = i;
  std::vector<std::string> names;
  std::vector<bool> accepting;
  names.reserve(keep.size());
  for (Elem e : keep) {
    names.push_back(r.bimonoid().name(e));
    accepting.push_back(r.accepting(e));
  }
  std::vector<std::vector<Elem>> seq_table(keep.size()), par_table(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      seq_table[i].push_back(position[r.bimonoid().seq(keep[i], keep[j])]);
      par_table[i].push_back(position[r.bimonoid().par(keep[i], keep[j])]);
    }
  }
  std::vector<Elem> letters;
  for (std::size_t i = 0; i < r.alphabet().size(); ++i) {
    letters.push_back(position[r.letter(i)]);
  }
  return Recogniser(Bimonoid(std::move(names), position[r.unit()],
                             std::move(seq_table), std::move(par_table)),
                    r.alphabet(), std::move(letters), std::move(accepting));
}

}  // namespace detail

/// Restrict to the reachable elements, then quotient by the refinement
/// fixpoint. The output recognises the same language (verified) and is
/// minimal; element names come from block representatives.
inline Recogniser minimize(const Recogniser& r) {
  require_valid(r.bimonoid());

  auto dist = detail::reachable_node_counts(r);
  std::vector<Elem> keep;
  for (Elem e = 0; e < r.size(); ++e) {
    if (dist[e]) keep.push_back(e);
  }
  Recogniser reach = detail::restrict_to(r, keep);

  std::vector<std::size_t> block =
      detail::refine_partition(reach.bimonoid(), reach.accepting_set());
  std::size_t block_count = *std::max_element(block.begin(), block.end()) + 1;

  std::vector<Elem> representative(block_count, static_cast<Elem>(-1));
  for (Elem e = 0; e < reach.size(); ++e) {
    if (representative[block[e]] == static_cast<Elem>(-1)) representative[block[e]] = e;
  }

  std::vector<std::string> names;
  std::vector<bool> accepting;
  for (std::size_t blk = 0; blk < block_count; ++blk) {
    names.push_back(reach.bimonoid().name(representative[blk]));
    accepting.push_back(reach.accepting(representative[blk]));
  }
  std::vector<std::vector<Elem>> seq_table(block_count), par_table(block_count);
  for (std::size_t i = 0; i < block_count; ++i) {
    for (std::size_t j = 0; j < block_count; ++j) {
      Elem x = representative[i], y = representative[j];
      seq_table[i].push_back(block[reach.bimonoid().seq(x, y)]);
      par_table[i].push_back(block[reach.bimonoid().par(x, y)]);
    }
  }
  std::vector<Elem> letters;
  for (std::size_t i = 0; i < reach.alphabet().size(); ++i) {
    letters.push_back(block[reach.letter(i)]);
  }

  Recogniser result(Bimonoid(std::move(names), block[reach.unit()],
                             std::move(seq_table), std::move(par_table)),
                    reach.alphabet(), std::move(letters), std::move(accepting));
  require_valid(result.bimonoid());
  if (!equivalence(result, r).equal) {
    throw ClosureDivergedError("minimize changed the recognised language");
  }
  return result;
}

struct MinimalityReport {
  bool minimal = false;
  std::optional<Elem> unreachable;                 // witness: element not generated
  std::optional<std::pair<Elem, Elem>> indistinct; // witness: unseparated pair
};

/// A recogniser is minimal when every element is reachable and the
/// refinement fixpoint separates every pair of elements.
inline MinimalityReport is_minimal(const Recogniser& r) {
  require_valid(r.bimonoid());
  auto dist = detail::reachable_node_counts(r);
  for (Elem e = 0; e < r.size(); ++e) {
    if (!dist[e]) return {false, e, std::nullopt};
  }
  std::vector<std::size_t> block =
      detail::refine_partition(r.bimonoid(), r.accepting_set());
  for (Elem x = 0; x < r.size(); ++x) {
    for (Elem y = x + 1; y < r.size(); ++y) {
      if (block[x] == block[y]) return {false, std::nullopt, std::make_pair(x, y)};
    }
  }
  return {true, std::nullopt, std::nullopt};
}

}  // namespace splearn
