#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splearn/recogniser.hpp"

namespace splearn {

enum class DepthCondition {
  ChainsBounded,        // (i)  the strict-below relation admits no cycle
  AnnihilatorExists,    // (ii) some non-accepting 0 absorbs under ⊛
  AbsorptionTrivial,    // (iii) s⊛t = t only for s = unit or t = 0
  UnitOnlyEmpty,        // (iv) only the empty pomset evaluates to the unit
};

inline const char* depth_condition_name(DepthCondition c) {
  switch (c) {
    case DepthCondition::ChainsBounded: return "(i) bounded chains";
    case DepthCondition::AnnihilatorExists: return "(ii) annihilator";
    case DepthCondition::AbsorptionTrivial: return "(iii) absorption";
    case DepthCondition::UnitOnlyEmpty: return "(iv) unit reached only by 1";
  }
  return "?";
}

struct DepthReport {
  bool depth_nilpotent = false;
  std::optional<Elem> zero;
  // The strict-below relation as ordered pairs (s, t) with s strictly below
  // t, transitively closed.
  std::vector<std::pair<Elem, Elem>> strictly_below;
  // Length of the longest strictly-below chain starting at each element;
  // meaningful only when depth_nilpotent.
  std::vector<std::size_t> depth;
  std::optional<DepthCondition> failed;
  std::string witness;
};

namespace detail {

// Generating rule of the strict-below relation: s is below t whenever
// s = u ⊙ (v ⊛ (w ⊙ t ⊙ x)) ⊙ y with v ⊛ (w⊙t⊙x) ≠ w⊙t⊙x.
inline std::vector<std::vector<bool>> strictly_below_edges(const Bimonoid& b) {
  const std::size_t n = b.size();
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (Elem t = 0; t < n; ++t) {
    std::set<Elem> mids;
    for (Elem w = 0; w < n; ++w) {
      for (Elem x = 0; x < n; ++x) {
        Elem inner = b.seq(b.seq(w, t), x);
        for (Elem v = 0; v < n; ++v) {
          Elem mid = b.par(v, inner);
          if (mid != inner) mids.insert(mid);
        }
      }
    }
    for (Elem mid : mids) {
      for (Elem u = 0; u < n; ++u) {
        Elem um = b.seq(u, mid);
        for (Elem y = 0; y < n; ++y) edge[b.seq(um, y)][t] = true;
      }
    }
  }
  return edge;
}

}  // namespace detail

/// Depth-nilpotency analysis of a recogniser: builds the strict-below
/// relation, searches for the absorbing zero, checks the absorption law, and
/// verifies that only the empty pomset evaluates to the unit. When all four
/// conditions hold, reports the longest-chain depth of every element.
inline DepthReport depth_analysis(const Recogniser& r) {
  require_valid(r.bimonoid());
  const Bimonoid& b = r.bimonoid();
  const std::size_t n = b.size();
  DepthReport report;

  auto edge = detail::strictly_below_edges(b);

  // Transitive closure.
  std::vector<std::vector<bool>> below = edge;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!below[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (below[k][j]) below[i][j] = true;
      }
    }
  }
  for (Elem s = 0; s < n; ++s) {
    for (Elem t = 0; t < n; ++t) {
      if (below[s][t]) report.strictly_below.emplace_back(s, t);
    }
  }

  // (i) Chains are bounded iff the relation has no cycle.
  for (Elem s = 0; s < n; ++s) {
    if (below[s][s]) {
      report.failed = DepthCondition::ChainsBounded;
      report.witness = b.name(s) + " strictly below itself";
      return report;
    }
  }

  // (ii) A non-accepting zero absorbing under the parallel operation.
  for (Elem z = 0; z < n && !report.zero; ++z) {
    if (r.accepting(z)) continue;
    bool absorbs = true;
    for (Elem s = 0; s < n; ++s) {
      if (b.par(s, z) != z) {
        absorbs = false;
        break;
      }
    }
    if (absorbs) report.zero = z;
  }
  if (!report.zero) {
    report.failed = DepthCondition::AnnihilatorExists;
    report.witness = "no non-accepting element absorbs under the parallel operation";
    return report;
  }

  // (iii) s ⊛ t = t forces s = unit or t = zero.
  for (Elem s = 0; s < n; ++s) {
    for (Elem t = 0; t < n; ++t) {
      if (b.par(s, t) == t && s != b.unit() && t != *report.zero) {
        report.failed = DepthCondition::AbsorptionTrivial;
        report.witness = b.name(s) + " \xE2\x8A\x9B " + b.name(t) + " = " + b.name(t);
        return report;
      }
    }
  }

  // (iv) The unit is the image of the empty pomset only: close the letter
  // images under both operations and require the unit never to appear.
  {
    std::vector<std::optional<Pomset>> witness(n);
    std::vector<Elem> worklist;
    for (std::size_t i = 0; i < r.alphabet().size(); ++i) {
      Elem e = r.letter(i);
      if (!witness[e]) {
        witness[e] = Pomset::letter(r.alphabet().symbols()[i]);
        worklist.push_back(e);
      }
    }
    std::vector<Elem> seen = worklist;
    while (!worklist.empty()) {
      Elem x = worklist.back();
      worklist.pop_back();
      std::vector<Elem> snapshot = seen;
      for (Elem y : snapshot) {
        struct Candidate {
          Elem value;
          Pomset pomset;
        };
        Candidate candidates[] = {
            {b.seq(x, y), seq(*witness[x], *witness[y])},
            {b.seq(y, x), seq(*witness[y], *witness[x])},
            {b.par(x, y), par(*witness[x], *witness[y])},
        };
        for (const auto& c : candidates) {
          if (!witness[c.value]) {
            witness[c.value] = c.pomset;
            seen.push_back(c.value);
            worklist.push_back(c.value);
          }
        }
      }
    }
    if (witness[b.unit()]) {
      report.failed = DepthCondition::UnitOnlyEmpty;
      report.witness = "non-empty pomset " + witness[b.unit()]->str() +
                       " evaluates to the unit";
      return report;
    }
  }

  // Longest chain per element over the (acyclic) generating edges.
  report.depth.assign(n, 0);
  std::vector<bool> computed(n, false);
  auto longest = [&](auto&& self, Elem s) -> std::size_t {
    if (computed[s]) return report.depth[s];
    computed[s] = true;  // acyclic, so no re-entry on the same path
    std::size_t best = 1;
    for (Elem t = 0; t < n; ++t) {
      if (edge[s][t]) best = std::max(best, 1 + self(self, t));
    }
    report.depth[s] = best;
    return best;
  };
  for (Elem s = 0; s < n; ++s) longest(longest, s);

  report.depth_nilpotent = true;
  return report;
}

}  // namespace splearn
