#include "dtc/catalog.hpp"

#include "dtc/errors.hpp"

#include <algorithm>

namespace dtc::catalog
{

namespace
{

const Alphabet bit{ 2 };
const Alphabet trit{ 3 };

DecisionTree leaf( Symbol y ) { return DecisionTree::leaf( y ); }

DecisionTree node( std::size_t variable, std::vector<DecisionTree> children )
{
  return DecisionTree::node( variable, std::move( children ) );
}

} // namespace

Relation and_function( std::size_t n )
{
  return relation_from_function( n, bit, bit, []( std::span<const Symbol> x ) -> Symbol {
    return std::all_of( x.begin(), x.end(), []( Symbol s ) { return s == 1; } ) ? 1 : 0;
  } );
}

Relation or_function( std::size_t n )
{
  return relation_from_function( n, bit, bit, []( std::span<const Symbol> x ) -> Symbol {
    return std::any_of( x.begin(), x.end(), []( Symbol s ) { return s == 1; } ) ? 1 : 0;
  } );
}

Relation xor_function( std::size_t n )
{
  return relation_from_function( n, bit, bit, []( std::span<const Symbol> x ) -> Symbol {
    Symbol parity = 0;
    for ( const auto s : x )
    {
      parity ^= s;
    }
    return parity;
  } );
}

Relation not_all_equal( std::size_t n )
{
  return relation_from_function( n, bit, bit, []( std::span<const Symbol> x ) -> Symbol {
    return std::all_of( x.begin(), x.end(), [&]( Symbol s ) { return s == x.front(); } ) ? 0 : 1;
  } );
}

Relation identity_bit()
{
  return relation_from_function( 1, bit, bit, []( std::span<const Symbol> x ) { return x[0]; } );
}

Relation constant_bit( Symbol value, std::size_t n )
{
  return relation_from_function( n, bit, bit, [value]( std::span<const Symbol> ) { return value; } );
}

Relation boolean_function( std::size_t n, std::uint64_t bits )
{
  if ( n > 6 )
  {
    throw precondition_error( "boolean_function supports at most 6 variables" );
  }
  Relation r( n, bit, bit );
  for ( std::size_t index = 0; index < r.size(); ++index )
  {
    r.add( index, static_cast<Symbol>( ( bits >> index ) & 1u ) );
  }
  return r;
}

DecisionTree gap_inner_tree()
{
  return node( 0, { leaf( 0 ), node( 1, { leaf( 1 ), leaf( 2 ) } ) } );
}

DecisionTree gap_outer_tree()
{
  return node( 0, { node( 1, { leaf( 0 ), leaf( 1 ), leaf( 2 ) } ), leaf( 1 ), leaf( 2 ) } );
}

DecisionTree gap_composed_tree()
{
  return node( 0, { node( 2, { leaf( 0 ), node( 3, { leaf( 1 ), leaf( 2 ) } ) } ),
                    node( 1, { leaf( 1 ), leaf( 2 ) } ) } );
}

Relation gap_inner()
{
  return relation_from_tree( gap_inner_tree(), 2, bit, trit );
}

Relation gap_outer()
{
  return relation_from_tree( gap_outer_tree(), 2, trit, trit );
}

Relation gap_composed()
{
  const std::vector<Relation> fs{ gap_inner(), gap_inner() };
  return compose( gap_outer(), fs );
}

} // namespace dtc::catalog
