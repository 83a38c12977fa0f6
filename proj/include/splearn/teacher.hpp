#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "splearn/enumerate.hpp"
#include "splearn/pomset.hpp"
#include "splearn/pomset_automaton.hpp"
#include "splearn/recogniser.hpp"

namespace splearn {

struct EquivalenceAnswer {
  enum class Kind { Equivalent, BoundedEquivalent, Counterexample };
  Kind kind = Kind::Equivalent;
  std::optional<Pomset> counterexample;
  int bound = 0;  // BoundedEquivalent: no counterexample with <= bound nodes

  static EquivalenceAnswer yes() { return {Kind::Equivalent, std::nullopt, 0}; }
  static EquivalenceAnswer yes_up_to(int bound) {
    return {Kind::BoundedEquivalent, std::nullopt, bound};
  }
  static EquivalenceAnswer no(Pomset z) {
    return {Kind::Counterexample, std::move(z), 0};
  }
};

/// Oracle answering membership and equivalence queries. Membership must be a
/// pure function of the pomset, and a returned counterexample must be
/// classified differently by the hypothesis and the target. Counters record
/// the number of oracle invocations; the learner's cache keeps them distinct.
class Teacher {
 public:
  virtual ~Teacher() = default;

  virtual const Alphabet& alphabet() const = 0;

  bool membership(const Pomset& u) {
    ++membership_queries_;
    return do_membership(u);
  }

  EquivalenceAnswer equivalence(const Recogniser& hypothesis) {
    ++equivalence_queries_;
    return do_equivalence(hypothesis);
  }

  std::size_t membership_queries() const { return membership_queries_; }
  std::size_t equivalence_queries() const { return equivalence_queries_; }

 protected:
  virtual bool do_membership(const Pomset& u) = 0;
  virtual EquivalenceAnswer do_equivalence(const Recogniser& hypothesis) = 0;

 private:
  std::size_t membership_queries_ = 0;
  std::size_t equivalence_queries_ = 0;
};

/// Exact teacher for a known target recogniser. Equivalence counterexamples
/// are minimal in enumeration order.
class RecogniserTeacher : public Teacher {
 public:
  explicit RecogniserTeacher(Recogniser target) : target_(std::move(target)) {
    require_valid(target_.bimonoid());
  }

  const Alphabet& alphabet() const override { return target_.alphabet(); }
  const Recogniser& target() const { return target_; }

 protected:
  bool do_membership(const Pomset& u) override { return accepts(target_, u); }

  EquivalenceAnswer do_equivalence(const Recogniser& hypothesis) override {
    EquivalenceOutcome outcome = splearn::equivalence(target_, hypothesis);
    if (outcome.equal) return EquivalenceAnswer::yes();
    return EquivalenceAnswer::no(*outcome.counterexample);
  }

 private:
  Recogniser target_;
};

/// Exact teacher for a pomset automaton target. The automaton is screened
/// for saturation at construction time, then converted once; membership uses
/// the automaton's own run relation.
class PaTeacher : public Teacher {
 public:
  explicit PaTeacher(PomsetAutomaton automaton, PaConversionOptions options = {})
      : automaton_(std::move(automaton)),
        converted_(pa_to_recogniser(automaton_, options)),
        eval_(automaton_) {}

  const Alphabet& alphabet() const override { return automaton_.alphabet(); }
  const PomsetAutomaton& automaton() const { return automaton_; }
  const Recogniser& converted() const { return converted_; }

 protected:
  bool do_membership(const Pomset& u) override { return eval_.accepts(u); }

  EquivalenceAnswer do_equivalence(const Recogniser& hypothesis) override {
    EquivalenceOutcome outcome = splearn::equivalence(converted_, hypothesis);
    if (outcome.equal) return EquivalenceAnswer::yes();
    return EquivalenceAnswer::no(*outcome.counterexample);
  }

 private:
  PomsetAutomaton automaton_;
  Recogniser converted_;
  RunEvaluator eval_;
};

/// Black-box teacher over a membership predicate. Equivalence is decided by
/// exhaustive comparison up to a node bound, so a "yes" answer is sound only
/// up to that bound and is flagged as such.
class BoundedTeacher : public Teacher {
 public:
  BoundedTeacher(Alphabet alphabet, std::function<bool(const Pomset&)> predicate,
                 int bound)
      : alphabet_(std::move(alphabet)), predicate_(std::move(predicate)), bound_(bound) {
    if (bound_ < 0) throw ParseError("equivalence bound must be non-negative");
  }

  const Alphabet& alphabet() const override { return alphabet_; }

 protected:
  bool do_membership(const Pomset& u) override { return predicate_(u); }

  EquivalenceAnswer do_equivalence(const Recogniser& hypothesis) override {
    for (const Pomset& u : enumerate_pomsets(alphabet_, bound_)) {
      if (accepts(hypothesis, u) != predicate_(u)) return EquivalenceAnswer::no(u);
    }
    return EquivalenceAnswer::yes_up_to(bound_);
  }

 private:
  Alphabet alphabet_;
  std::function<bool(const Pomset&)> predicate_;
  int bound_;
};

}  // namespace splearn
