/*!
  \file solver.hpp
  \brief Exact weighted decision tree complexity

  D(f, w) is 0 when f is constant; otherwise it is the minimum over
  variables i of w_i plus the worst restriction max_b D(f restricted to
  x_i = b, w).  The minimum only ranges over live variables: querying a
  variable on which dom f does not branch leaves f unchanged, so its
  candidate can never beat a live one.  Every live restriction strictly
  shrinks the domain, which bounds the recursion even with zero weights.

  Subproblems are memoized on the canonical key of the restricted relation,
  so different restriction orders that reach the same relation share work.
*/

#pragma once

#include "dtc/decision_tree.hpp"
#include "dtc/relation.hpp"

#include <cstdint>
#include <optional>

namespace dtc
{

struct SolveStats
{
  std::uint64_t nodes_explored = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t memo_entries = 0;

  SolveStats& operator+=( const SolveStats& o ) noexcept
  {
    nodes_explored += o.nodes_explored;
    memo_hits += o.memo_hits;
    memo_entries += o.memo_entries;
    return *this;
  }

  friend bool operator==( const SolveStats&, const SolveStats& ) = default;
};

struct SolveOptions
{
  bool build_tree = false;
  /// Skip the remaining branches of a variable once it cannot beat the best candidate.
  bool prune = true;
};

struct ComplexityResult
{
  std::uint64_t value = 0;
  std::optional<DecisionTree> tree;
  SolveStats stats;
};

ComplexityResult complexity( const Relation& f, const WeightVector& weights, const SolveOptions& options = {} );

/// D(f) = D(f, [1, ..., 1]).
inline std::uint64_t query_complexity( const Relation& f )
{
  return complexity( f, unit_weights( f.arity() ) ).value;
}

/// Optimal tree; ties go to the smallest variable, constant leaves to the smallest valid output.
DecisionTree optimal_tree( const Relation& f, const WeightVector& weights );

} // namespace dtc
