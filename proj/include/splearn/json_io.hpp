#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splearn/pomset_automaton.hpp"
#include "splearn/recogniser.hpp"

namespace splearn {

namespace detail {

inline nlohmann::json parse_json(std::istream& in, const char* what) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON for ") + what + ": " + e.what());
  }
  return j;
}

inline std::vector<std::string> string_list(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw ParseError(std::string("missing array field: ") + field);
  }
  std::vector<std::string> out;
  for (const auto& item : j[field]) {
    if (!item.is_string()) throw ParseError(std::string(field) + " must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Recogniser file format:
///   { "alphabet": [...], "elements": [...], "unit": "...",
///     "seq": [[row-major element names]], "par": [[...]],
///     "i": {"a": "qa", ...}, "accepting": [...] }
/// Tables are |M|x|M| with the row as the left operand. Loading validates
/// the bimonoid axioms and rejects invalid tables with a witness.
inline Recogniser recogniser_from_json(const nlohmann::json& j) {
  Alphabet alphabet(detail::string_list(j, "alphabet"));
  std::vector<std::string> names = detail::string_list(j, "elements");

  auto find_elem = [&](const std::string& name, const char* where) -> Elem {
    for (Elem e = 0; e < names.size(); ++e) {
      if (names[e] == name) return e;
    }
    throw ParseError(std::string("unknown element '") + name + "' in " + where);
  };

  if (!j.contains("unit") || !j["unit"].is_string()) {
    throw ParseError("missing string field: unit");
  }
  Elem unit = find_elem(j["unit"].get<std::string>(), "unit");

  auto read_table = [&](const char* field) {
    if (!j.contains(field) || !j[field].is_array()) {
      throw ParseError(std::string("missing table field: ") + field);
    }
    std::vector<std::vector<Elem>> table;
    for (const auto& row : j[field]) {
      if (!row.is_array()) throw ParseError(std::string(field) + " rows must be arrays");
      std::vector<Elem> out;
      for (const auto& cell : row) {
        if (!cell.is_string()) throw ParseError(std::string(field) + " cells must be element names");
        out.push_back(find_elem(cell.get<std::string>(), field));
      }
      table.push_back(std::move(out));
    }
    return table;
  };

  if (!j.contains("i") || !j["i"].is_object()) {
    throw ParseError("missing object field: i");
  }
  std::vector<Elem> letters;
  for (const auto& symbol : alphabet.symbols()) {
    if (!j["i"].contains(symbol)) {
      throw ParseError("letter interpretation missing symbol: " + symbol);
    }
    letters.push_back(find_elem(j["i"][symbol].get<std::string>(), "i"));
  }

  std::vector<bool> accepting(names.size(), false);
  for (const auto& name : detail::string_list(j, "accepting")) {
    accepting[find_elem(name, "accepting")] = true;
  }

  Bimonoid bimonoid(names, unit, read_table("seq"), read_table("par"));
  AxiomReport report = validate_axioms(bimonoid);
  if (!report.ok) {
    throw InvalidBimonoidError("recogniser file rejected: " +
                               report.violations.front().describe(bimonoid));
  }
  return Recogniser(std::move(bimonoid), std::move(alphabet), std::move(letters),
                    std::move(accepting));
}

inline nlohmann::json recogniser_to_json(const Recogniser& r) {
  nlohmann::json j;
  j["alphabet"] = r.alphabet().symbols();
  j["elements"] = r.bimonoid().names();
  j["unit"] = r.bimonoid().name(r.unit());
  nlohmann::json seq_table = nlohmann::json::array();
  nlohmann::json par_table = nlohmann::json::array();
  for (Elem x = 0; x < r.size(); ++x) {
    nlohmann::json seq_row = nlohmann::json::array();
    nlohmann::json par_row = nlohmann::json::array();
    for (Elem y = 0; y < r.size(); ++y) {
      seq_row.push_back(r.bimonoid().name(r.bimonoid().seq(x, y)));
      par_row.push_back(r.bimonoid().name(r.bimonoid().par(x, y)));
    }
    seq_table.push_back(std::move(seq_row));
    par_table.push_back(std::move(par_row));
  }
  j["seq"] = std::move(seq_table);
  j["par"] = std::move(par_table);
  nlohmann::json interpretation = nlohmann::json::object();
  for (std::size_t i = 0; i < r.alphabet().size(); ++i) {
    interpretation[r.alphabet().symbols()[i]] = r.bimonoid().name(r.letter(i));
  }
  j["i"] = std::move(interpretation);
  nlohmann::json accepting = nlohmann::json::array();
  for (Elem e = 0; e < r.size(); ++e) {
    if (r.accepting(e)) accepting.push_back(r.bimonoid().name(e));
  }
  j["accepting"] = std::move(accepting);
  return j;
}

/// Pomset automaton file format:
///   { "alphabet": [...], "states": [...], "initial": [...], "accepting": [...],
///     "delta": [{"from": q, "letter": a, "to": [...]}],
///     "gamma": [{"from": q, "fork": [r, s, ...], "to": [...]}] }
/// "fork" is a multiset written as a sorted list with repetition; keys of
/// fewer than two states are rejected.
inline PomsetAutomaton pa_from_json(const nlohmann::json& j) {
  Alphabet alphabet(detail::string_list(j, "alphabet"));
  std::vector<std::string> states = detail::string_list(j, "states");

  auto find_state = [&](const std::string& name) -> State {
    for (State q = 0; q < states.size(); ++q) {
      if (states[q] == name) return q;
    }
    throw ParseError("unknown state: " + name);
  };

  std::vector<State> initial, accepting;
  for (const auto& name : detail::string_list(j, "initial")) initial.push_back(find_state(name));
  for (const auto& name : detail::string_list(j, "accepting")) accepting.push_back(find_state(name));

  PomsetAutomaton a(states, alphabet, initial, accepting);

  if (j.contains("delta")) {
    for (const auto& entry : j["delta"]) {
      State from = find_state(entry.at("from").get<std::string>());
      std::string letter = entry.at("letter").get<std::string>();
      if (!alphabet.contains(letter)) throw ParseError("delta letter outside alphabet: " + letter);
      for (const auto& to : entry.at("to")) {
        a.add_delta(from, letter, find_state(to.get<std::string>()));
      }
    }
  }
  if (j.contains("gamma")) {
    for (const auto& entry : j["gamma"]) {
      State from = find_state(entry.at("from").get<std::string>());
      std::vector<State> key;
      for (const auto& name : entry.at("fork")) key.push_back(find_state(name.get<std::string>()));
      if (key.size() < 2) throw ParseError("fork key must contain at least two states");
      for (const auto& to : entry.at("to")) {
        a.add_gamma(from, key, find_state(to.get<std::string>()));
      }
    }
  }
  return a;
}

inline nlohmann::json pa_to_json(const PomsetAutomaton& a) {
  nlohmann::json j;
  j["alphabet"] = a.alphabet().symbols();
  j["states"] = a.state_names();
  nlohmann::json initial = nlohmann::json::array();
  nlohmann::json accepting = nlohmann::json::array();
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.initial(q)) initial.push_back(a.state_name(q));
    if (a.accepting(q)) accepting.push_back(a.state_name(q));
  }
  j["initial"] = std::move(initial);
  j["accepting"] = std::move(accepting);
  nlohmann::json delta = nlohmann::json::array();
  for (State q = 0; q < a.state_count(); ++q) {
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) {
      const auto& successors = a.delta(q, i);
      if (successors.empty()) continue;
      nlohmann::json entry;
      entry["from"] = a.state_name(q);
      entry["letter"] = a.alphabet().symbols()[i];
      nlohmann::json to = nlohmann::json::array();
      for (State q2 : successors) to.push_back(a.state_name(q2));
      entry["to"] = std::move(to);
      delta.push_back(std::move(entry));
    }
  }
  j["delta"] = std::move(delta);
  nlohmann::json gamma = nlohmann::json::array();
  for (State q = 0; q < a.state_count(); ++q) {
    for (const auto& fork : a.forks(q)) {
      nlohmann::json entry;
      entry["from"] = a.state_name(q);
      nlohmann::json key = nlohmann::json::array();
      for (State r : fork.key) key.push_back(a.state_name(r));
      entry["fork"] = std::move(key);
      nlohmann::json to = nlohmann::json::array();
      for (State q2 : fork.targets) to.push_back(a.state_name(q2));
      entry["to"] = std::move(to);
      gamma.push_back(std::move(entry));
    }
  }
  j["gamma"] = std::move(gamma);
  return j;
}

enum class FileKind { Recogniser, PomsetAutomaton };

inline FileKind sniff_kind(const nlohmann::json& j) {
  if (j.contains("states")) return FileKind::PomsetAutomaton;
  if (j.contains("elements")) return FileKind::Recogniser;
  throw ParseError("file is neither a recogniser nor a pomset automaton");
}

inline Recogniser load_recogniser(std::istream& in) {
  return recogniser_from_json(detail::parse_json(in, "recogniser"));
}

inline PomsetAutomaton load_pa(std::istream& in) {
  return pa_from_json(detail::parse_json(in, "pomset automaton"));
}

}  // namespace splearn
