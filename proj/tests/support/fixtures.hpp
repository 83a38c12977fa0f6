#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "splearn/pomset.hpp"
#include "splearn/pomset_automaton.hpp"
#include "splearn/recogniser.hpp"

namespace fixtures {

using namespace splearn;

inline Bimonoid table_bimonoid(
    std::vector<std::string> names, const std::string& unit,
    const std::function<std::string(const std::string&, const std::string&)>& seq_op,
    const std::function<std::string(const std::string&, const std::string&)>& par_op) {
  auto index = [&](const std::string& name) -> Elem {
    for (Elem e = 0; e < names.size(); ++e) {
      if (names[e] == name) return e;
    }
    throw std::logic_error("fixture references unknown element " + name);
  };
  std::vector<std::vector<Elem>> seq_table(names.size()), par_table(names.size());
  for (const auto& x : names) {
    for (const auto& y : names) {
      seq_table[index(x)].push_back(index(seq_op(x, y)));
      par_table[index(x)].push_back(index(par_op(x, y)));
    }
  }
  return Bimonoid(names, index(unit), seq_table, par_table);
}

// Recogniser for the language {a || b}^* : iterate a fork of a and b.
inline Recogniser loop_recogniser() {
  std::vector<std::string> names{"1", "qa", "qb", "q1", "qbot"};
  auto seq_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if (x == "q1" && y == "q1") return "q1";
    return "qbot";
  };
  auto par_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if ((x == "qa" && y == "qb") || (x == "qb" && y == "qa")) return "q1";
    return "qbot";
  };
  Bimonoid b = table_bimonoid(names, "1", seq_op, par_op);
  Alphabet alphabet({"a", "b"});
  std::vector<Elem> letters{*b.find("qa"), *b.find("qb")};
  std::vector<bool> accepting(b.size(), false);
  accepting[*b.find("1")] = true;
  accepting[*b.find("q1")] = true;
  return Recogniser(std::move(b), std::move(alphabet), std::move(letters),
                    std::move(accepting));
}

// Recogniser for the divide-and-conquer language: the least L with b in L
// and a·(u || v) in L whenever u, v in L.
inline Recogniser nested_recogniser() {
  std::vector<std::string> names{"1", "qa", "qb", "q1", "qbot"};
  auto seq_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if (x == "qa" && y == "q1") return "qb";
    return "qbot";
  };
  auto par_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if (x == "qb" && y == "qb") return "q1";
    return "qbot";
  };
  Bimonoid b = table_bimonoid(names, "1", seq_op, par_op);
  Alphabet alphabet({"a", "b"});
  std::vector<Elem> letters{*b.find("qa"), *b.find("qb")};
  std::vector<bool> accepting(b.size(), false);
  accepting[*b.find("qb")] = true;
  return Recogniser(std::move(b), std::move(alphabet), std::move(letters),
                    std::move(accepting));
}

// The six-state automaton accepting exactly {a.(b|c).a}.
inline PomsetAutomaton simple_pa() {
  std::vector<std::string> states{"q0", "q1", "q2", "q3", "q4", "q5"};
  PomsetAutomaton a(states, Alphabet({"a", "b", "c"}), {0}, {5});
  a.add_delta(0, "a", 1);
  a.add_delta(3, "b", 5);
  a.add_delta(4, "c", 5);
  a.add_delta(2, "a", 5);
  a.add_gamma(1, {3, 4}, 2);
  return a;
}

// The four-state automaton accepting {a^n b^n}; not saturated and not
// fork-acyclic.
inline PomsetAutomaton problematic_pa() {
  std::vector<std::string> states{"q1", "q2", "q3", "q4"};
  PomsetAutomaton a(states, Alphabet({"a", "b"}), {0}, {0, 3});
  a.add_delta(2, "a", 0);  // q3 -a-> q1
  a.add_delta(1, "b", 3);  // q2 -b-> q4
  a.add_gamma(0, {2, 3}, 1);
  return a;
}

// Reference predicate for {a || b}^*.
inline bool loop_member(const Pomset& u) {
  const Pomset ab = par(Pomset::letter("a"), Pomset::letter("b"));
  if (u == Pomset::empty() || u == ab) return true;
  if (u.kind() != TermKind::Seq) return false;
  for (const Pomset& p : u.parts()) {
    if (p != ab) return false;
  }
  return true;
}

// Reference predicate for the divide-and-conquer language.
inline bool nested_member(const Pomset& u) {
  if (u == Pomset::letter("b")) return true;
  if (u.kind() != TermKind::Seq) return false;
  std::vector<Pomset> parts = u.parts();
  if (parts.size() != 2 || parts[0] != Pomset::letter("a")) return false;
  if (parts[1].kind() != TermKind::Par) return false;
  std::vector<Pomset> threads = parts[1].parts();
  return threads.size() == 2 && nested_member(threads[0]) && nested_member(threads[1]);
}

// Reference predicate for {a·u : u in {b}*} = {a, ab, abb, ...}.
inline bool a_then_bs_member(const Pomset& u) {
  if (u == Pomset::letter("a")) return true;
  if (u.kind() != TermKind::Seq) return false;
  std::vector<Pomset> parts = u.parts();
  if (parts[0] != Pomset::letter("a")) return false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] != Pomset::letter("b")) return false;
  }
  return true;
}

// Reference predicate for the finite language {a, aa, a||a}.
inline bool small_finite_member(const Pomset& u) {
  const Pomset a = Pomset::letter("a");
  return u == a || u == seq(a, a) || u == par(a, a);
}

// Direct product of two recognisers over the same alphabet; accepting set
// supplied per (left, right) element pair.
inline Recogniser product_recogniser(
    const Recogniser& r1, const Recogniser& r2,
    const std::function<bool(Elem, Elem)>& accept_pair) {
  if (!(r1.alphabet() == r2.alphabet())) {
    throw std::logic_error("product fixture needs matching alphabets");
  }
  const std::size_t n1 = r1.size(), n2 = r2.size();
  std::vector<std::string> names;
  for (Elem x = 0; x < n1; ++x) {
    for (Elem y = 0; y < n2; ++y) {
      names.push_back(r1.bimonoid().name(x) + "*" + r2.bimonoid().name(y));
    }
  }
  auto code = [n2](Elem x, Elem y) { return x * n2 + y; };
  std::vector<std::vector<Elem>> seq_table(n1 * n2), par_table(n1 * n2);
  for (Elem x1 = 0; x1 < n1; ++x1) {
    for (Elem x2 = 0; x2 < n2; ++x2) {
      for (Elem y1 = 0; y1 < n1; ++y1) {
        for (Elem y2 = 0; y2 < n2; ++y2) {
          seq_table[code(x1, x2)].push_back(
              code(r1.bimonoid().seq(x1, y1), r2.bimonoid().seq(x2, y2)));
          par_table[code(x1, x2)].push_back(
              code(r1.bimonoid().par(x1, y1), r2.bimonoid().par(x2, y2)));
        }
      }
    }
  }
  std::vector<Elem> letters;
  for (std::size_t i = 0; i < r1.alphabet().size(); ++i) {
    letters.push_back(code(r1.letter(i), r2.letter(i)));
  }
  std::vector<bool> accepting;
  for (Elem x = 0; x < n1; ++x) {
    for (Elem y = 0; y < n2; ++y) accepting.push_back(accept_pair(x, y));
  }
  return Recogniser(Bimonoid(names, code(r1.unit(), r2.unit()), seq_table, par_table),
                    r1.alphabet(), letters, accepting);
}

// One-element recogniser over the given alphabet; accepts everything or
// nothing depending on the flag.
inline Recogniser trivial_recogniser(const Alphabet& alphabet, bool accept_all) {
  Bimonoid b({"1"}, 0, {{0}}, {{0}});
  return Recogniser(std::move(b), alphabet, std::vector<Elem>(alphabet.size(), 0),
                    {accept_all});
}

// Loop recogniser extended with an element no product can generate.
inline Recogniser loop_with_junk() {
  std::vector<std::string> names{"1", "qa", "qb", "q1", "qbot", "junk"};
  auto seq_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if (x == "q1" && y == "q1") return "q1";
    return "qbot";
  };
  auto par_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if ((x == "qa" && y == "qb") || (x == "qb" && y == "qa")) return "q1";
    return "qbot";
  };
  Bimonoid b = table_bimonoid(names, "1", seq_op, par_op);
  Alphabet alphabet({"a", "b"});
  std::vector<Elem> letters{*b.find("qa"), *b.find("qb")};
  std::vector<bool> accepting(b.size(), false);
  accepting[*b.find("1")] = true;
  accepting[*b.find("q1")] = true;
  return Recogniser(std::move(b), std::move(alphabet), std::move(letters),
                    std::move(accepting));
}

// Naive all-terms generator used as the enumeration oracle: every binary
// combination of letters (letter leaves only), canonicalised, plus 1.
inline std::set<Pomset> naive_all_pomsets(const Alphabet& alphabet, int max_nodes) {
  std::vector<std::set<Pomset>> by_leaves(static_cast<std::size_t>(max_nodes) + 1);
  std::set<Pomset> all;
  if (max_nodes >= 0) all.insert(Pomset::empty());
  if (max_nodes >= 1) {
    for (const auto& s : alphabet.symbols()) {
      Pomset p = Pomset::letter(s);
      by_leaves[1].insert(p);
      all.insert(p);
    }
  }
  for (int n = 2; n <= max_nodes; ++n) {
    for (int k = 1; k < n; ++k) {
      for (const Pomset& u : by_leaves[static_cast<std::size_t>(k)]) {
        for (const Pomset& v : by_leaves[static_cast<std::size_t>(n - k)]) {
          for (const Pomset& w : {seq(u, v), par(u, v)}) {
            by_leaves[static_cast<std::size_t>(n)].insert(w);
            all.insert(w);
          }
        }
      }
    }
  }
  return all;
}

// All one-hole contexts with at most max_nodes letters.
inline std::vector<Context> enumerate_contexts(const Alphabet& alphabet, int max_nodes) {
  std::set<Context> out{Context::hole()};
  for (int n = 1; n <= max_nodes; ++n) {
    std::set<Context> next = out;
    for (const Context& c : out) {
      int remaining = n - c.node_count();
      if (remaining <= 0) continue;
      for (const Pomset& p : enumerate_pomsets(alphabet, remaining)) {
        if (p.node_count() == 0) continue;
        next.insert(seq(c, p));
        next.insert(seq(p, c));
        next.insert(par(c, p));
      }
    }
    out = std::move(next);
  }
  return {out.begin(), out.end()};
}

}  // namespace fixtures
