#pragma once

#include <stdexcept>
#include <string>

namespace splearn {

// Base for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed term text or an invalid recogniser/automaton description.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A pomset mentions a symbol outside the alphabet in scope.
class UnknownLetterError : public Error {
 public:
  explicit UnknownLetterError(const std::string& symbol)
      : Error("unknown letter: " + symbol), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

// Two structures that must share an alphabet do not.
class AlphabetMismatchError : public Error {
 public:
  using Error::Error;
};

// A bimonoid whose tables violate the algebraic laws.
class InvalidBimonoidError : public Error {
 public:
  using Error::Error;
};

// Observation-table operation that needs a closed table found it unclosed.
class NotClosedError : public Error {
 public:
  using Error::Error;
};

// Hypothesis construction attempted while the table still has defects.
class DefectPresentError : public Error {
 public:
  using Error::Error;
};

// The teacher gave answers that cannot all be true of one language.
class TeacherInconsistentError : public Error {
 public:
  using Error::Error;
};

// Bounded saturation screening found a violation within the bound.
class NotSaturatedError : public Error {
 public:
  NotSaturatedError(int bound, const std::string& witness)
      : Error("automaton not saturated within bound " + std::to_string(bound) +
              ": " + witness),
        bound_(bound),
        witness_(witness) {}
  int bound() const { return bound_; }
  const std::string& witness() const { return witness_; }

 private:
  int bound_;
  std::string witness_;
};

// Fork-acyclic conversion requires a depth-nilpotent recogniser.
class NotDepthNilpotentError : public Error {
 public:
  using Error::Error;
};

// Relation closure exceeded its cap; indicates a bug, not a valid input.
class ClosureDivergedError : public Error {
 public:
  using Error::Error;
};

}  // namespace splearn
