#pragma once

#include "dtc/decision_tree.hpp"
#include "dtc/relation.hpp"

#include <cstddef>
#include <vector>

namespace dtc::catalog
{

/* total boolean functions on {0,1}ⁿ */

Relation and_function( std::size_t n );
Relation or_function( std::size_t n );
Relation xor_function( std::size_t n );
/// 1 unless all inputs are equal.
Relation not_all_equal( std::size_t n );
Relation identity_bit();
Relation constant_bit( Symbol value, std::size_t n = 1 );

/// The n-ary boolean function whose truth table is the low 2ⁿ bits of `bits` (input index i ↦ bit i).
Relation boolean_function( std::size_t n, std::uint64_t bits );

/*! \name Composition gap example

  f : {0,1}² → {0,1,2} and g : {0,1,2}² → {0,1,2} each need two queries, yet
  h(x) = g(f(x1,x2), f(x3,x4)) needs only three, below D(g,[2,2]) = 4.
*/
///@{
DecisionTree gap_inner_tree();
DecisionTree gap_outer_tree();
DecisionTree gap_composed_tree();
Relation gap_inner();
Relation gap_outer();
Relation gap_composed();
///@}

} // namespace dtc::catalog
