#include "dtc/decision_tree.hpp"

#include "dtc/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace dtc
{

DecisionTree DecisionTree::leaf( Symbol output )
{
  DecisionTree t;
  t.output_ = output;
  return t;
}

DecisionTree DecisionTree::node( std::size_t variable, std::vector<DecisionTree> children )
{
  if ( children.empty() )
  {
    throw precondition_error( "internal node needs children" );
  }
  DecisionTree t;
  t.variable_ = variable;
  t.children_ = std::move( children );
  return t;
}

std::size_t DecisionTree::node_count() const noexcept
{
  std::size_t count = 1;
  for ( const auto& c : children_ )
  {
    count += c.node_count();
  }
  return count;
}

void validate_tree( const DecisionTree& tree, std::size_t arity, Alphabet input, Alphabet output )
{
  if ( tree.is_leaf() )
  {
    if ( !output.contains( tree.output() ) )
    {
      throw precondition_error( "leaf output " + std::to_string( tree.output() ) + " out of range" );
    }
    return;
  }
  if ( tree.variable() >= arity )
  {
    throw precondition_error( "tree queries variable x" + std::to_string( tree.variable() + 1 ) +
                              " but arity is " + std::to_string( arity ) );
  }
  if ( tree.children().size() != input.size() )
  {
    throw precondition_error( "internal node has " + std::to_string( tree.children().size() ) +
                              " children, expected " + std::to_string( input.size() ) );
  }
  for ( const auto& c : tree.children() )
  {
    validate_tree( c, arity, input, output );
  }
}

Symbol evaluate( const DecisionTree& tree, std::span<const Symbol> x )
{
  const DecisionTree* t = &tree;
  while ( !t->is_leaf() )
  {
    if ( t->variable() >= x.size() )
    {
      throw precondition_error( "input vector too short for the tree" );
    }
    const auto b = x[t->variable()];
    if ( b >= t->children().size() )
    {
      throw precondition_error( "input symbol " + std::to_string( b ) + " out of range" );
    }
    t = &t->children()[b];
  }
  return t->output();
}

bool tree_computes( const DecisionTree& tree, const Relation& f )
{
  validate_tree( tree, f.arity(), f.input_alphabet(), f.output_alphabet() );
  for ( std::size_t index = 0; index < f.size(); ++index )
  {
    if ( f.in_domain( index ) && !f.contains( index, evaluate( tree, f.decode( index ) ) ) )
    {
      return false;
    }
  }
  return true;
}

std::uint64_t weighted_depth( const DecisionTree& tree, std::span<const std::uint64_t> weights )
{
  if ( tree.is_leaf() )
  {
    return 0;
  }
  if ( tree.variable() >= weights.size() )
  {
    throw precondition_error( "tree queries a variable beyond the weight vector" );
  }
  std::uint64_t deepest = 0;
  for ( const auto& c : tree.children() )
  {
    deepest = std::max( deepest, weighted_depth( c, weights ) );
  }
  const auto w = weights[tree.variable()];
  if ( deepest > std::numeric_limits<std::uint64_t>::max() - w )
  {
    throw guard_error( "weighted depth overflows 64 bits" );
  }
  return deepest + w;
}

Relation relation_from_tree( const DecisionTree& tree, std::size_t arity, Alphabet input, Alphabet output,
                             const TableGuard& guard )
{
  validate_tree( tree, arity, input, output );
  Relation r( arity, input, output, guard );
  for ( std::size_t index = 0; index < r.size(); ++index )
  {
    r.add( index, evaluate( tree, r.decode( index ) ) );
  }
  return r;
}

} // namespace dtc
