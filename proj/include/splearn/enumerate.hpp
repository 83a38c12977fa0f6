#pragma once

#include <set>
#include <vector>

#include "splearn/pomset.hpp"

namespace splearn {

/// Every canonical sp-pomset over the alphabet with at most max_nodes letter
/// occurrences, each exactly once, ordered by node count and then by
/// canonical print.
inline std::vector<Pomset> enumerate_pomsets(const Alphabet& alphabet,
                                             int max_nodes) {
  std::vector<std::set<Pomset>> by_count(
      static_cast<std::size_t>(max_nodes < 0 ? 0 : max_nodes) + 1);
  if (max_nodes >= 0) by_count[0].insert(Pomset::empty());
  if (max_nodes >= 1) {
    for (const auto& s : alphabet.symbols()) by_count[1].insert(Pomset::letter(s));
  }
  for (int n = 2; n <= max_nodes; ++n) {
    auto& out = by_count[static_cast<std::size_t>(n)];
    for (int k = 1; k < n; ++k) {
      for (const Pomset& u : by_count[static_cast<std::size_t>(k)]) {
        for (const Pomset& v : by_count[static_cast<std::size_t>(n - k)]) {
          out.insert(seq(u, v));
          out.insert(par(u, v));
        }
      }
    }
  }
  std::vector<Pomset> result;
  for (const auto& level : by_count) {
    result.insert(result.end(), level.begin(), level.end());
  }
  return result;
}

}  // namespace splearn
