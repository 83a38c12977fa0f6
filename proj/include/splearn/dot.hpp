#pragma once

#include <string>

#include "splearn/pomset_automaton.hpp"

namespace splearn {

/// Graphviz rendering of a pomset automaton: states as circles, accepting
/// states doubly circled, initial states marked with arrowhead stubs,
/// sequential transitions as labelled edges, and each fork as a box node
/// connected to the forking state, its thread states (plain lines) and its
/// targets (dashed arrows).
inline std::string to_dot(const PomsetAutomaton& a) {
  std::string out = "digraph pomset_automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (State q = 0; q < a.state_count(); ++q) {
    out += "  \"" + a.state_name(q) + "\"";
    if (a.accepting(q)) out += " [shape=doublecircle]";
    out += ";\n";
  }
  std::size_t stub = 0;
  for (State q = 0; q < a.state_count(); ++q) {
    if (!a.initial(q)) continue;
    std::string name = "__start" + std::to_string(stub++);
    out += "  \"" + name + "\" [shape=none, label=\"\"];\n";
    out += "  \"" + name + "\" -> \"" + a.state_name(q) + "\";\n";
  }
  for (State q = 0; q < a.state_count(); ++q) {
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) {
      for (State q2 : a.delta(q, i)) {
        out += "  \"" + a.state_name(q) + "\" -> \"" + a.state_name(q2) +
               "\" [label=\"" + a.alphabet().symbols()[i] + "\"];\n";
      }
    }
  }
  std::size_t fork_id = 0;
  for (State q = 0; q < a.state_count(); ++q) {
    for (const auto& fork : a.forks(q)) {
      std::string name = "__fork" + std::to_string(fork_id++);
      out += "  \"" + name + "\" [shape=box, label=\"fork\"];\n";
      out += "  \"" + a.state_name(q) + "\" -> \"" + name + "\" [arrowhead=none];\n";
      for (State r : fork.key) {
        out += "  \"" + name + "\" -> \"" + a.state_name(r) + "\" [arrowhead=none];\n";
      }
      for (State q2 : fork.targets) {
        out += "  \"" + name + "\" -> \"" + a.state_name(q2) + "\" [style=dashed];\n";
      }
    }
  }
  out += "}\n";
  return out;
}

}  // namespace splearn
