#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splearn/depth.hpp"
#include "splearn/enumerate.hpp"
#include "splearn/pomset.hpp"
#include "splearn/recogniser.hpp"

namespace splearn {

using State = std::size_t;

/// A binary relation on a fixed state set, stored as a bit matrix. Used for
/// run relations; relations compose like boolean matrices.
class StateRelation {
 public:
  explicit StateRelation(std::size_t states)
      : n_(states), words_per_row_((states + 63) / 64), bits_(n_ * words_per_row_, 0) {}

  static StateRelation identity(std::size_t states) {
    StateRelation r(states);
    for (std::size_t i = 0; i < states; ++i) r.set(i, i);
    return r;
  }

  std::size_t states() const { return n_; }

  void set(std::size_t i, std::size_t j) {
    bits_[i * words_per_row_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_per_row_ + j / 64] >> (j % 64)) & 1;
  }

  bool merge(const StateRelation& other) {
    bool changed = false;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t next = bits_[w] | other.bits_[w];
      if (next != bits_[w]) {
        bits_[w] = next;
        changed = true;
      }
    }
    return changed;
  }

  StateRelation compose(const StateRelation& other) const {
    StateRelation out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!get(i, j)) continue;
        for (std::size_t w = 0; w < words_per_row_; ++w) {
          out.bits_[i * words_per_row_ + w] |= other.bits_[j * words_per_row_ + w];
        }
      }
    }
    return out;
  }

  bool operator==(const StateRelation& other) const { return bits_ == other.bits_; }
  bool operator<(const StateRelation& other) const { return bits_ < other.bits_; }

 private:
  std::size_t n_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

/// A pomset automaton: sequential transitions per letter and parallel
/// (fork/join) transitions keyed by state multisets of size at least two,
/// with finite support stored explicitly.
class PomsetAutomaton {
 public:
  struct Fork {
    std::vector<State> key;      // multiset, sorted, size >= 2
    std::vector<State> targets;  // sorted
  };

  PomsetAutomaton(std::vector<std::string> states, Alphabet alphabet,
                  std::vector<State> initial, std::vector<State> accepting)
      : states_(std::move(states)),
        alphabet_(std::move(alphabet)),
        initial_(states_.size(), false),
        accepting_(states_.size(), false),
        delta_(states_.size() * alphabet_.size()),
        forks_(states_.size()) {
    if (states_.empty()) throw ParseError("automaton needs at least one state");
    std::set<std::string> unique(states_.begin(), states_.end());
    if (unique.size() != states_.size()) throw ParseError("duplicate state name");
    for (State q : initial) initial_.at(q) = true;
    for (State q : accepting) accepting_.at(q) = true;
  }

  std::size_t state_count() const { return states_.size(); }
  const std::string& state_name(State q) const { return states_[q]; }
  const std::vector<std::string>& state_names() const { return states_; }
  const Alphabet& alphabet() const { return alphabet_; }
  bool initial(State q) const { return initial_[q]; }
  bool accepting(State q) const { return accepting_[q]; }

  std::optional<State> find_state(const std::string& name) const {
    for (State q = 0; q < states_.size(); ++q) {
      if (states_[q] == name) return q;
    }
    return std::nullopt;
  }

  void add_delta(State from, const std::string& letter, State to) {
    auto& successors = delta_[from * alphabet_.size() + alphabet_.index_of(letter)];
    if (std::find(successors.begin(), successors.end(), to) == successors.end()) {
      successors.push_back(to);
      std::sort(successors.begin(), successors.end());
    }
  }

  void add_gamma(State from, std::vector<State> key, State to) {
    if (key.size() < 2) {
      throw ParseError("fork key must contain at least two states");
    }
    std::sort(key.begin(), key.end());
    for (Fork& fork : forks_[from]) {
      if (fork.key == key) {
        if (std::find(fork.targets.begin(), fork.targets.end(), to) == fork.targets.end()) {
          fork.targets.push_back(to);
          std::sort(fork.targets.begin(), fork.targets.end());
        }
        return;
      }
    }
    forks_[from].push_back(Fork{std::move(key), {to}});
    std::sort(forks_[from].begin(), forks_[from].end(),
              [](const Fork& a, const Fork& b) { return a.key < b.key; });
  }

  const std::vector<State>& delta(State from, std::size_t letter_index) const {
    return delta_[from * alphabet_.size() + letter_index];
  }

  const std::vector<Fork>& forks(State from) const { return forks_[from]; }

 private:
  std::vector<std::string> states_;
  Alphabet alphabet_;
  std::vector<bool> initial_, accepting_;
  std::vector<std::vector<State>> delta_;
  std::vector<std::vector<Fork>> forks_;
};

/// Computes run relations of one automaton with memoisation across calls.
/// The run relation is the least relation closed under the unit, letter,
/// sequential and n-ary fork rules; fork threads may read the empty pomset
/// from an accepting state, so relation computation iterates to a fixpoint
/// per term.
class RunEvaluator {
 public:
  explicit RunEvaluator(const PomsetAutomaton& a) : a_(a) {}

  const StateRelation& run(const Pomset& u) {
    auto it = memo_.find(u);
    if (it != memo_.end()) return it->second;

    StateRelation r(a_.state_count());
    switch (u.kind()) {
      case TermKind::Empty:
        r = StateRelation::identity(a_.state_count());
        return memo_.emplace(u, std::move(r)).first->second;
      case TermKind::Letter: {
        std::size_t letter = a_.alphabet().index_of(u.symbol());
        for (State q = 0; q < a_.state_count(); ++q) {
          for (State q2 : a_.delta(q, letter)) r.set(q, q2);
        }
        break;
      }
      case TermKind::Seq: {
        // Sequential runs may split at any part boundary, and the halves may
        // use fork transitions of their own; take the union over all splits
        // of the composed segment relations.
        std::vector<Pomset> parts = u.parts();
        std::vector<Pomset> prefix(parts.size()), suffix(parts.size());
        Pomset acc;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          acc = seq(acc, parts[i]);
          prefix[i] = acc;
        }
        acc = Pomset();
        for (std::size_t i = parts.size(); i-- > 0;) {
          acc = seq(parts[i], acc);
          suffix[i] = acc;
        }
        for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
          StateRelation left = run(prefix[k]);
          StateRelation right = run(suffix[k + 1]);
          r.merge(left.compose(right));
        }
        break;
      }
      case TermKind::Par:
        break;  // all pairs come from fork transitions
      case TermKind::Hole:
        throw ParseError("cannot run a term with a hole");
    }

    fork_fixpoint(u, r);
    return memo_.emplace(u, std::move(r)).first->second;
  }

  bool accepts(const Pomset& u) {
    const StateRelation& r = run(u);
    for (State q = 0; q < a_.state_count(); ++q) {
      if (!a_.initial(q)) continue;
      for (State q2 = 0; q2 < a_.state_count(); ++q2) {
        if (a_.accepting(q2) && r.get(q, q2)) return true;
      }
    }
    return false;
  }

  /// Whether some accepting state is reachable from q under the relation.
  bool accepting_run(const StateRelation& r, State q) const {
    for (State f = 0; f < a_.state_count(); ++f) {
      if (a_.accepting(f) && r.get(q, f)) return true;
    }
    return false;
  }

 private:
  // Adds every pair derivable by a fork whose threads partition the parallel
  // components of u (a single component when u is not a Par). Blocks may be
  // empty when the thread state is accepting; a thread assigned the whole of
  // u uses the current approximation, iterated to a fixpoint.
  void fork_fixpoint(const Pomset& u, StateRelation& r) {
    if (u.kind() == TermKind::Empty) return;
    std::vector<Pomset> components =
        u.kind() == TermKind::Par ? u.parts() : std::vector<Pomset>{u};
    const std::size_t m = components.size();

    bool changed = true;
    while (changed) {
      changed = false;
      for (State q = 0; q < a_.state_count(); ++q) {
        for (const auto& fork : a_.forks(q)) {
          const std::size_t slots = fork.key.size();
          std::vector<std::size_t> slot_of(m, 0);
          for (;;) {
            if (admissible(fork.key, slot_of, components, u, r)) {
              for (State q2 : fork.targets) {
                if (!r.get(q, q2)) {
                  r.set(q, q2);
                  changed = true;
                }
              }
            }
            // next assignment
            std::size_t i = 0;
            while (i < m && slot_of[i] == slots - 1) slot_of[i++] = 0;
            if (i == m) break;
            ++slot_of[i];
          }
        }
      }
    }
  }

  bool admissible(const std::vector<State>& key, const std::vector<std::size_t>& slot_of,
                  const std::vector<Pomset>& components, const Pomset& whole,
                  StateRelation& current) {
    for (std::size_t slot = 0; slot < key.size(); ++slot) {
      Pomset block;
      std::size_t block_size = 0;
      for (std::size_t i = 0; i < components.size(); ++i) {
        if (slot_of[i] == slot) {
          block = par(block, components[i]);
          ++block_size;
        }
      }
      State thread = key[slot];
      if (block_size == 0) {
        if (!a_.accepting(thread)) return false;
      } else if (block_size == components.size()) {
        if (!accepting_run(current, thread)) return false;
      } else {
        if (!accepting_run(run(block), thread)) return false;
      }
    }
    return true;
  }

  const PomsetAutomaton& a_;
  std::map<Pomset, StateRelation> memo_;
};

inline StateRelation run_relation(const PomsetAutomaton& a, const Pomset& u) {
  RunEvaluator eval(a);
  return eval.run(u);
}

inline bool pa_accepts(const PomsetAutomaton& a, const Pomset& u) {
  RunEvaluator eval(a);
  return eval.accepts(u);
}

struct SaturationViolation {
  State from = 0, to = 0;
  Pomset left, right;
  Op op = Op::Seq;

  std::string describe(const PomsetAutomaton& a) const {
    return "(" + a.state_name(from) + ", " + left.str() + ", " + right.str() +
           ", " + (op == Op::Seq ? "seq" : "par") + ", " + a.state_name(to) + ")";
  }
};

/// Bounded saturation screen: over all non-empty u, v with combined node
/// count at most the bound, every sequential run must factor through an
/// intermediate state and every parallel run through a binary fork with
/// accepting thread runs. Returns the first violation in scan order.
inline std::optional<SaturationViolation> check_saturated(const PomsetAutomaton& a,
                                                          int bound) {
  if (bound < 2) throw ParseError("saturation bound must be at least 2");
  RunEvaluator eval(a);
  std::vector<Pomset> pomsets = enumerate_pomsets(a.alphabet(), bound - 1);
  // drop the empty pomset
  pomsets.erase(pomsets.begin());

  const std::size_t n = a.state_count();
  for (int total = 2; total <= bound; ++total) {
    for (const Pomset& u : pomsets) {
      if (u.node_count() >= total) break;
      for (const Pomset& v : pomsets) {
        if (u.node_count() + v.node_count() != total) continue;
        // sequential factorisation
        {
          const StateRelation then = eval.run(seq(u, v));
          const StateRelation& ru = eval.run(u);
          const StateRelation& rv = eval.run(v);
          for (State q = 0; q < n; ++q) {
            for (State q2 = 0; q2 < n; ++q2) {
              if (!then.get(q, q2)) continue;
              bool found = false;
              for (State mid = 0; mid < n && !found; ++mid) {
                found = ru.get(q, mid) && rv.get(mid, q2);
              }
              if (!found) return SaturationViolation{q, q2, u, v, Op::Seq};
            }
          }
        }
        // parallel factorisation (u <= v suffices; the pomset is symmetric)
        if (!(v < u)) {
          const StateRelation both = eval.run(par(u, v));
          const StateRelation& ru = eval.run(u);
          const StateRelation& rv = eval.run(v);
          std::vector<bool> from_u(n), from_v(n);
          for (State q = 0; q < n; ++q) {
            from_u[q] = eval.accepting_run(ru, q);
            from_v[q] = eval.accepting_run(rv, q);
          }
          for (State q = 0; q < n; ++q) {
            for (State q2 = 0; q2 < n; ++q2) {
              if (!both.get(q, q2)) continue;
              bool found = false;
              for (const auto& fork : a.forks(q)) {
                if (fork.key.size() != 2) continue;
                if (std::find(fork.targets.begin(), fork.targets.end(), q2) ==
                    fork.targets.end()) {
                  continue;
                }
                State r = fork.key[0], s = fork.key[1];
                if ((from_u[r] && from_v[s]) || (from_u[s] && from_v[r])) {
                  found = true;
                  break;
                }
              }
              if (!found) return SaturationViolation{q, q2, u, v, Op::Par};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

/// States are the carrier, initial states the accepting elements, the unit
/// the only accepting state; a letter step undoes one left factor and a fork
/// undoes a parallel pair. The result is saturated and accepts the same
/// language as the recogniser.
inline PomsetAutomaton recogniser_to_pa(const Recogniser& r) {
  require_valid(r.bimonoid());
  const Bimonoid& b = r.bimonoid();
  const std::size_t n = b.size();
  std::vector<State> initial, accepting{b.unit()};
  for (Elem e = 0; e < n; ++e) {
    if (r.accepting(e)) initial.push_back(e);
  }
  PomsetAutomaton a(b.names(), r.alphabet(), initial, accepting);
  for (std::size_t i = 0; i < r.alphabet().size(); ++i) {
    const std::string& letter = r.alphabet().symbols()[i];
    for (Elem q2 = 0; q2 < n; ++q2) {
      a.add_delta(b.seq(r.letter(i), q2), letter, q2);
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = x; y < n; ++y) {
      Elem pair = b.par(x, y);
      for (Elem q2 = 0; q2 < n; ++q2) {
        a.add_gamma(b.seq(pair, q2), {x, y}, q2);
      }
    }
  }
  return a;
}

struct PaConversionOptions {
  int saturation_bound = 6;  // screening bound for the saturation precondition
  int verify_bound = 5;      // bounded language comparison of the result
};

/// Converts a saturated automaton to a recogniser whose elements are the run
/// relations, closed under relation composition (sequential) and the
/// fork-derived parallel product. A fresh transitionless dead state is added
/// first so that only the empty pomset has the identity relation. Saturation
/// is screened at a bound and the result is compared against the automaton
/// on bounded enumeration.
inline Recogniser pa_to_recogniser(const PomsetAutomaton& a,
                                   const PaConversionOptions& options = {}) {
  if (auto violation = check_saturated(a, options.saturation_bound)) {
    throw NotSaturatedError(options.saturation_bound, violation->describe(a));
  }

  // Augment with the dead state.
  std::vector<std::string> names = a.state_names();
  std::string dead = "@dead";
  while (std::find(names.begin(), names.end(), dead) != names.end()) dead += "'";
  names.push_back(dead);
  std::vector<State> initial, accepting;
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.initial(q)) initial.push_back(q);
    if (a.accepting(q)) accepting.push_back(q);
  }
  PomsetAutomaton augmented(names, a.alphabet(), initial, accepting);
  for (State q = 0; q < a.state_count(); ++q) {
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) {
      for (State q2 : a.delta(q, i)) {
        augmented.add_delta(q, a.alphabet().symbols()[i], q2);
      }
    }
    for (const auto& fork : a.forks(q)) {
      for (State q2 : fork.targets) augmented.add_gamma(q, fork.key, q2);
    }
  }

  RunEvaluator eval(augmented);
  const std::size_t q_n = augmented.state_count();
  const StateRelation unit_rel = StateRelation::identity(q_n);

  std::uint64_t cap = q_n * q_n >= 63 ? UINT64_MAX : (std::uint64_t{1} << (q_n * q_n));

  std::map<StateRelation, Elem> index;
  std::vector<StateRelation> elements;
  std::vector<Pomset> witness;
  auto intern = [&](const StateRelation& rel, const Pomset& w) {
    auto it = index.find(rel);
    if (it != index.end()) return it->second;
    if (elements.size() >= cap) {
      throw ClosureDivergedError("relation closure exceeded its cap");
    }
    Elem e = elements.size();
    index.emplace(rel, e);
    elements.push_back(rel);
    witness.push_back(w);
    return e;
  };

  intern(unit_rel, Pomset::empty());
  for (const auto& symbol : a.alphabet().symbols()) {
    Pomset letter = Pomset::letter(symbol);
    intern(eval.run(letter), letter);
  }

  auto par_product = [&](const StateRelation& ru, const StateRelation& rv) {
    if (ru == unit_rel) return rv;
    if (rv == unit_rel) return ru;
    StateRelation out(q_n);
    std::vector<bool> from_u(q_n), from_v(q_n);
    for (State q = 0; q < q_n; ++q) {
      from_u[q] = eval.accepting_run(ru, q);
      from_v[q] = eval.accepting_run(rv, q);
    }
    for (State q = 0; q < q_n; ++q) {
      for (const auto& fork : augmented.forks(q)) {
        if (fork.key.size() != 2) continue;
        State r = fork.key[0], s = fork.key[1];
        if ((from_u[r] && from_v[s]) || (from_u[s] && from_v[r])) {
          for (State q2 : fork.targets) out.set(q, q2);
        }
      }
    }
    return out;
  };

  // Close under both operations, recording the operation tables as we go.
  // Pairing every x with all y <= x covers each pair once the later of the
  // two indices is reached, including elements discovered along the way.
  std::map<std::pair<Elem, Elem>, Elem> seq_entries, par_entries;
  for (Elem x = 0; x < elements.size(); ++x) {
    for (Elem y = 0; y <= x; ++y) {
      for (auto [i, j] : {std::pair<Elem, Elem>{x, y}, std::pair<Elem, Elem>{y, x}}) {
        if (!seq_entries.count({i, j})) {
          StateRelation rel = elements[i].compose(elements[j]);
          seq_entries[{i, j}] = intern(rel, seq(witness[i], witness[j]));
        }
        if (!par_entries.count({i, j})) {
          StateRelation rel = par_product(elements[i], elements[j]);
          par_entries[{i, j}] = intern(rel, par(witness[i], witness[j]));
        }
      }
    }
  }

  const std::size_t n = elements.size();
  std::vector<std::string> element_names;
  element_names.reserve(n);
  for (const Pomset& w : witness) element_names.push_back(w.str());
  std::vector<std::vector<Elem>> seq_table(n, std::vector<Elem>(n));
  std::vector<std::vector<Elem>> par_table(n, std::vector<Elem>(n));
  for (const auto& [key, value] : seq_entries) seq_table[key.first][key.second] = value;
  for (const auto& [key, value] : par_entries) par_table[key.first][key.second] = value;

  std::vector<Elem> letters;
  for (const auto& symbol : a.alphabet().symbols()) {
    letters.push_back(index.at(eval.run(Pomset::letter(symbol))));
  }
  std::vector<bool> accepting_elems(n, false);
  for (Elem e = 0; e < n; ++e) {
    for (State q = 0; q < q_n && !accepting_elems[e]; ++q) {
      if (!augmented.initial(q)) continue;
      for (State f = 0; f < q_n; ++f) {
        if (augmented.accepting(f) && elements[e].get(q, f)) {
          accepting_elems[e] = true;
          break;
        }
      }
    }
  }

  Recogniser result(Bimonoid(std::move(element_names), 0, std::move(seq_table),
                             std::move(par_table)),
                    a.alphabet(), std::move(letters), std::move(accepting_elems));
  require_valid(result.bimonoid());

  RunEvaluator check(a);
  for (const Pomset& u : enumerate_pomsets(a.alphabet(), options.verify_bound)) {
    if (accepts(result, u) != check.accepts(u)) {
      throw NotSaturatedError(options.saturation_bound,
                              "bounded language comparison failed at " + u.str());
    }
  }
  return result;
}

/// The support preorder: a state depends on every state it can step to with
/// a letter, every fork target, and every member of a fork key; closed
/// reflexively and transitively. Pairs (q2, q) mean q2 is below q.
inline std::vector<std::vector<bool>> support_preorder_matrix(const PomsetAutomaton& a) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (State q = 0; q < n; ++q) {
    below[q][q] = true;
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) {
      for (State q2 : a.delta(q, i)) below[q2][q] = true;
    }
    for (const auto& fork : a.forks(q)) {
      for (State q2 : fork.targets) below[q2][q] = true;
      for (State r : fork.key) below[r][q] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!below[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (below[k][j]) below[i][j] = true;
      }
    }
  }
  return below;
}

inline std::vector<std::pair<State, State>> support_preorder(const PomsetAutomaton& a) {
  auto matrix = support_preorder_matrix(a);
  std::vector<std::pair<State, State>> pairs;
  for (State low = 0; low < a.state_count(); ++low) {
    for (State high = 0; high < a.state_count(); ++high) {
      if (matrix[low][high]) pairs.emplace_back(low, high);
    }
  }
  return pairs;
}

struct ForkAcyclicityReport {
  bool fork_acyclic = false;
  // Witness: gamma(from, key) is non-empty but `from` is below `dependency`.
  State from = 0, dependency = 0;
  std::vector<State> key;
};

/// Fork-acyclic: no fork may launch a thread on whose state the forking
/// state itself depends.
inline ForkAcyclicityReport is_fork_acyclic(const PomsetAutomaton& a) {
  auto below = support_preorder_matrix(a);
  for (State q = 0; q < a.state_count(); ++q) {
    for (const auto& fork : a.forks(q)) {
      for (State r : fork.key) {
        if (below[q][r]) return {false, q, r, fork.key};
      }
    }
  }
  return {true, 0, 0, {}};
}

/// Same construction as recogniser_to_pa, except forks only launch threads
/// of strictly smaller depth; requires a depth-nilpotent recogniser and
/// yields a fork-acyclic automaton for the same language.
inline PomsetAutomaton recogniser_to_fork_acyclic_pa(const Recogniser& r);

inline PomsetAutomaton recogniser_to_fork_acyclic_pa(const Recogniser& r,
                                                     const DepthReport& depth) {
  if (!depth.depth_nilpotent) {
    std::string reason = depth.failed
                             ? std::string(depth_condition_name(*depth.failed)) +
                                   ": " + depth.witness
                             : std::string("no depth report");
    throw NotDepthNilpotentError("recogniser is not depth-nilpotent, " + reason);
  }
  const Bimonoid& b = r.bimonoid();
  const std::size_t n = b.size();
  std::vector<State> initial, accepting{b.unit()};
  for (Elem e = 0; e < n; ++e) {
    if (r.accepting(e)) initial.push_back(e);
  }
  PomsetAutomaton a(b.names(), r.alphabet(), initial, accepting);
  for (std::size_t i = 0; i < r.alphabet().size(); ++i) {
    const std::string& letter = r.alphabet().symbols()[i];
    for (Elem q2 = 0; q2 < n; ++q2) {
      a.add_delta(b.seq(r.letter(i), q2), letter, q2);
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = x; y < n; ++y) {
      Elem pair = b.par(x, y);
      for (Elem q2 = 0; q2 < n; ++q2) {
        Elem from = b.seq(pair, q2);
        if (depth.depth[x] < depth.depth[from] && depth.depth[y] < depth.depth[from]) {
          a.add_gamma(from, {x, y}, q2);
        }
      }
    }
  }
  return a;
}

inline PomsetAutomaton recogniser_to_fork_acyclic_pa(const Recogniser& r) {
  return recogniser_to_fork_acyclic_pa(r, depth_analysis(r));
}

}  // namespace splearn
