#pragma once

#include "dtc/decision_tree.hpp"
#include "dtc/relation.hpp"

#include <cstdint>
#include <optional>

namespace dtc
{

inline constexpr std::uint64_t default_oracle_node_cap = 50'000'000;

/*! \brief Brute-force weighted decision tree complexity

  Searches all decision trees of weighted depth at most `budget` for one
  that computes f, trying every budget from 0 upward.  The search works on
  explicit lists of domain points and shares no code with the memoized
  solver; it is meant for tiny instances (arity ≤ 4, |X| ≤ 3).

  Returns the least weighted depth found, or nothing if no tree fits the
  budget.  Throws guard_error when more than `node_cap` search nodes are
  visited.
*/
std::optional<std::uint64_t> oracle_complexity( const Relation& f, const WeightVector& weights, std::uint64_t budget,
                                                std::uint64_t node_cap = default_oracle_node_cap );

} // namespace dtc
