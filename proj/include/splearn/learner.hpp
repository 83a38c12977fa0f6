#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "splearn/observation_table.hpp"
#include "splearn/teacher.hpp"

namespace splearn {

struct LearnStats {
  std::size_t membership_queries = 0;
  std::size_t equivalence_queries = 0;
  std::size_t max_counterexample_ops = 0;  // m
  std::size_t final_carrier = 0;           // n
  std::size_t alphabet_size = 0;           // k
  std::optional<int> equivalence_bound;    // set when the final "yes" was bounded
};

struct LearnOptions {
  std::ostream* transcript = nullptr;
  // Called at every loop boundary with the closed, sharp, associative table
  // and the hypothesis built from it, before the compatibility check.
  std::function<void(ObservationTable&, const Recogniser&)> on_hypothesis;
};

struct LearnResult {
  Recogniser recogniser;
  LearnStats stats;
};

/// Learns a pomset recogniser for the teacher's language: repairs closedness
/// and associativity defects, builds a hypothesis, repairs compatibility
/// defects, and submits equivalence queries, processing counterexamples into
/// new columns until the teacher accepts. The result is minimal and the
/// number of equivalence queries never exceeds its carrier size.
inline LearnResult learn(Teacher& teacher, const LearnOptions& options = {}) {
  auto log = [&](const std::string& line) {
    if (options.transcript) *options.transcript << line << '\n';
  };

  ObservationTable table(teacher.alphabet(), [&](const Pomset& u) {
    bool value = teacher.membership(u);
    log("MQ " + u.str() + " -> " + (value ? "1" : "0"));
    return value;
  });

  LearnStats stats;
  stats.alphabet_size = teacher.alphabet().size();

  auto note_counterexample = [&](const Pomset& z) {
    stats.max_counterexample_ops =
        std::max(stats.max_counterexample_ops,
                 static_cast<std::size_t>(operation_count(z)));
  };

  // Every repair that adds a column must leave the table unclosed; this is
  // what forces the next row addition and bounds the run.
  auto require_progress = [&]() {
    if (!table.find_closedness_defect()) {
      throw TeacherInconsistentError("column repair did not create a closedness defect");
    }
  };

  auto process_counterexample = [&](const Pomset& z) {
    note_counterexample(z);
    auto result = table.handle_counterexample(z, Context::hole());
    if (!std::holds_alternative<Context>(result)) {
      throw TeacherInconsistentError(
          "counterexample processing ended on a row: " + z.str());
    }
    const Context& column = std::get<Context>(result);
    table.add_column(column);
    log("ADD-COL " + column.str());
    require_progress();
  };

  for (;;) {
    // Repair closedness first, then associativity; a closedness fix may be
    // needed again after each new column, so loop until both hold.
    for (;;) {
      if (auto defect = table.find_closedness_defect()) {
        table.add_row(defect->t);
        log("ADD-ROW " + defect->t.str());
        continue;
      }
      bool fixed = false;
      for (Op op : {Op::Seq, Op::Par}) {
        if (auto defect = table.find_associativity_defect(op)) {
          Context column = table.fix_associativity(*defect);
          log("ADD-COL " + column.str());
          require_progress();
          fixed = true;
          break;
        }
      }
      if (!fixed) break;
    }

    if (!table.is_sharp() || !table.is_ext_generated()) {
      throw TeacherInconsistentError("table invariant broken at loop boundary");
    }

    Recogniser hypothesis = table.build_hypothesis();
    log("HYP " + std::to_string(hypothesis.size()));
    if (options.on_hypothesis) options.on_hypothesis(table, hypothesis);

    if (auto defect = table.find_compatibility_defect(hypothesis)) {
      process_counterexample(plug(defect->e, defect->s));
      continue;
    }

    EquivalenceAnswer answer = teacher.equivalence(hypothesis);
    stats.equivalence_queries = teacher.equivalence_queries();
    if (answer.kind == EquivalenceAnswer::Kind::Counterexample) {
      const Pomset& z = *answer.counterexample;
      log("EQ #" + std::to_string(stats.equivalence_queries) + " -> cex " + z.str());
      if (accepts(hypothesis, z) == table.membership(z)) {
        throw TeacherInconsistentError(
            "teacher counterexample is classified consistently: " + z.str());
      }
      process_counterexample(z);
      continue;
    }

    log("EQ #" + std::to_string(stats.equivalence_queries) + " -> ok");
    if (answer.kind == EquivalenceAnswer::Kind::BoundedEquivalent) {
      stats.equivalence_bound = answer.bound;
    }
    stats.membership_queries = teacher.membership_queries();
    stats.final_carrier = hypothesis.size();
    if (stats.equivalence_queries > stats.final_carrier) {
      throw TeacherInconsistentError("equivalence query count exceeded carrier size");
    }
    return LearnResult{std::move(hypothesis), stats};
  }
}

}  // namespace splearn
