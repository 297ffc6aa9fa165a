#pragma once

#include "dtc/relation.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dtc
{

/// Per-variable query costs.
using WeightVector = std::vector<std::uint64_t>;

inline WeightVector unit_weights( std::size_t n ) { return WeightVector( n, 1 ); }

/*! \brief Rooted |X|-ary decision tree

  A leaf carries an output symbol.  An internal node queries `variable`
  (0-based) and continues in `children[b]` on reading symbol b.
*/
class DecisionTree
{
public:
  static DecisionTree leaf( Symbol output );
  static DecisionTree node( std::size_t variable, std::vector<DecisionTree> children );

  bool is_leaf() const noexcept { return children_.empty(); }
  Symbol output() const noexcept { return output_; }
  std::size_t variable() const noexcept { return variable_; }
  std::span<const DecisionTree> children() const noexcept { return children_; }

  std::size_t node_count() const noexcept;

  friend bool operator==( const DecisionTree&, const DecisionTree& ) = default;

private:
  std::size_t variable_ = 0;
  Symbol output_ = 0;
  std::vector<DecisionTree> children_;
};

/// Throws precondition_error unless every node has |X| children, variables are < arity and leaves are in Y.
void validate_tree( const DecisionTree& tree, std::size_t arity, Alphabet input, Alphabet output );

Symbol evaluate( const DecisionTree& tree, std::span<const Symbol> x );

/// True iff the tree's output lies in f(x) for every x ∈ dom f.
bool tree_computes( const DecisionTree& tree, const Relation& f );

/// Maximum over root-to-leaf paths of the summed weights of queried variables.
std::uint64_t weighted_depth( const DecisionTree& tree, std::span<const std::uint64_t> weights );

/// The total function computed by `tree`.
Relation relation_from_tree( const DecisionTree& tree, std::size_t arity, Alphabet input, Alphabet output,
                             const TableGuard& guard = {} );

} // namespace dtc
