#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "alat/error.hpp"
#include "alat/group.hpp"

namespace alat {

/// Breadth-first word lengths over the Cayley graph of `generators` (right
/// multiplication), layer by layer. `keep(g)` prunes states; `done(dist)` is
/// polled after each finished layer. Past `budget` states the search stops and
/// sets *truncated, or throws BudgetExceeded when `truncated` is null.
template <class Keep, class Done>
std::unordered_map<GroupElem, int> bfs_word_lengths(const GroupElem& identity,
                                                    const std::vector<GroupElem>& generators,
                                                    int max_length, std::size_t budget, Keep keep,
                                                    Done done, bool* truncated = nullptr) {
  std::unordered_map<GroupElem, int> dist;
  dist.emplace(identity, 0);
  std::vector<GroupElem> frontier{identity};
  for (int len = 1; len <= max_length && !frontier.empty() && !done(dist); ++len) {
    std::vector<GroupElem> next;
    for (const auto& g : frontier) {
      for (const auto& s : generators) {
        GroupElem h = mul(g, s);
        if (!keep(h)) continue;
        if (dist.emplace(h, len).second) {
          next.push_back(std::move(h));
          if (dist.size() > budget) {
            if (truncated) {
              *truncated = true;
              return dist;
            }
            throw BudgetExceeded("word search exceeded the budget of " + std::to_string(budget) +
                                 " states");
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace alat
