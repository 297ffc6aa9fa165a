#include "test_support.hpp"

#include "dtc/catalog.hpp"
#include "dtc/decision_tree.hpp"
#include "dtc/errors.hpp"
#include "dtc/oracle.hpp"
#include "dtc/solver.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>

using namespace dtc;

namespace
{

std::uint64_t solve( const Relation& f, const WeightVector& w )
{
  return complexity( f, w ).value;
}

std::uint64_t weight_sum( const WeightVector& w )
{
  return std::accumulate( w.begin(), w.end(), std::uint64_t{ 0 } );
}

} // namespace

TEST_SUITE( "dt-solver" )
{

TEST_CASE( "decision tree basics" )
{
  const auto t = catalog::gap_inner_tree();
  CHECK( t.node_count() == 5 );
  CHECK( evaluate( t, std::vector<Symbol>{ 1, 1 } ) == 2 );
  CHECK( evaluate( t, std::vector<Symbol>{ 0, 1 } ) == 0 );
  CHECK( weighted_depth( t, WeightVector{ 3, 5 } ) == 8 );
  CHECK( tree_computes( t, catalog::gap_inner() ) );
  CHECK_FALSE( tree_computes( DecisionTree::leaf( 0 ), catalog::gap_inner() ) );
  CHECK( tree_computes( DecisionTree::leaf( 1 ), Relation( 2, Alphabet( 2 ), Alphabet( 2 ) ) ) );
  const std::uint64_t big = std::numeric_limits<std::uint64_t>::max();
  CHECK_THROWS( weighted_depth( t, WeightVector{ big, big } ) );
}

TEST_CASE( "known complexities" )
{
  CHECK( query_complexity( catalog::gap_inner() ) == 2 );
  CHECK( query_complexity( catalog::gap_outer() ) == 2 );
  CHECK( query_complexity( catalog::gap_composed() ) == 3 );
  CHECK( solve( catalog::gap_outer(), { 2, 2 } ) == 4 );
  CHECK( solve( catalog::or_function( 2 ), { 3, 5 } ) == 8 );
  CHECK( query_complexity( catalog::and_function( 3 ) ) == 3 );
  CHECK( query_complexity( catalog::xor_function( 4 ) ) == 4 );
  CHECK( query_complexity( catalog::not_all_equal( 3 ) ) == 3 );
  CHECK( query_complexity( catalog::identity_bit() ) == 1 );
}

TEST_CASE( "constant and trivial relations cost nothing" )
{
  CHECK( query_complexity( catalog::constant_bit( 1, 4 ) ) == 0 );
  CHECK( query_complexity( Relation( 3, Alphabet( 2 ), Alphabet( 2 ) ) ) == 0 );
  CHECK( query_complexity( catalog::constant_bit( 0, 0 ) ) == 0 );
  const auto r = complexity( catalog::constant_bit( 0, 2 ), { 1, 1 }, { .build_tree = true } );
  REQUIRE( r.tree );
  CHECK( *r.tree == DecisionTree::leaf( 0 ) );
}

TEST_CASE( "zero weights" )
{
  CHECK( solve( catalog::xor_function( 3 ), { 0, 0, 0 } ) == 0 );
  CHECK( solve( catalog::xor_function( 3 ), { 0, 4, 0 } ) == 4 );
}

TEST_CASE( "weight length mismatch" )
{
  CHECK_THROWS_AS( complexity( catalog::and_function( 2 ), { 1 } ), precondition_error );
  CHECK_THROWS_AS( optimal_tree( catalog::and_function( 2 ), { 1, 1, 1 } ), precondition_error );
}

TEST_CASE( "optimal trees" )
{
  const auto t = optimal_tree( catalog::gap_inner(), { 1, 1 } );
  CHECK( t == catalog::gap_inner_tree() );

  for ( std::uint64_t seed = 0; seed < 200; ++seed )
  {
    const auto f = test::small_relation( seed );
    std::mt19937_64 rng( seed ^ 0xabcdef );
    WeightVector w( f.arity() );
    for ( auto& wi : w )
    {
      wi = range_draw( rng, 0, 4 );
    }
    const auto r = complexity( f, w, { .build_tree = true } );
    REQUIRE( r.tree );
    CAPTURE( seed );
    validate_tree( *r.tree, f.arity(), f.input_alphabet(), f.output_alphabet() );
    CHECK( tree_computes( *r.tree, f ) );
    CHECK( weighted_depth( *r.tree, w ) == r.value );
  }
}

TEST_CASE( "solver agrees with the brute-force oracle" )
{
  for ( std::uint64_t seed = 0; seed < 150; ++seed )
  {
    const auto f = test::small_relation( seed + 1000 );
    std::mt19937_64 rng( seed );
    WeightVector w( f.arity() );
    for ( auto& wi : w )
    {
      wi = range_draw( rng, 1, 3 );
    }
    CAPTURE( seed );
    CHECK( oracle_complexity( f, w, weight_sum( w ) ) == solve( f, w ) );
  }
}

TEST_CASE( "oracle budget" )
{
  const auto f = catalog::and_function( 2 );
  CHECK_FALSE( oracle_complexity( f, { 1, 1 }, 1 ).has_value() );
  CHECK( oracle_complexity( f, { 1, 1 }, 2 ) == std::uint64_t{ 2 } );
  CHECK( oracle_complexity( catalog::constant_bit( 0, 2 ), { 1, 1 }, 0 ) == std::uint64_t{ 0 } );
  CHECK_THROWS_AS( oracle_complexity( catalog::xor_function( 4 ), { 1, 1, 1, 1 }, 4, 10 ), guard_error );
}

TEST_CASE( "pruning does not change results" )
{
  for ( std::uint64_t seed = 0; seed < 300; ++seed )
  {
    const auto f = test::small_relation( seed + 5000, 4 );
    const auto w = unit_weights( f.arity() );
    const auto a = complexity( f, w, { .build_tree = true, .prune = true } );
    const auto b = complexity( f, w, { .build_tree = true, .prune = false } );
    CAPTURE( seed );
    CHECK( a.value == b.value );
    CHECK( a.stats.nodes_explored <= b.stats.nodes_explored );
  }
}

TEST_CASE( "solver is deterministic" )
{
  const auto h = catalog::gap_composed();
  const auto a = complexity( h, unit_weights( 4 ), { .build_tree = true } );
  const auto b = complexity( h, unit_weights( 4 ), { .build_tree = true } );
  CHECK( a.value == b.value );
  CHECK( a.stats == b.stats );
  CHECK( *a.tree == *b.tree );
  CHECK( a.stats.nodes_explored > 0 );
}

TEST_CASE( "complexity properties over random relations" )
{
  for ( std::uint64_t seed = 0; seed < 200; ++seed )
  {
    const auto f = test::small_relation( seed + 9000 );
    std::mt19937_64 rng( seed );
    WeightVector w( f.arity() );
    for ( auto& wi : w )
    {
      wi = range_draw( rng, 1, 4 );
    }
    const auto d = solve( f, w );
    const auto d1 = query_complexity( f );
    CAPTURE( seed );

    CHECK( ( d1 == 0 ) == is_constant( f ) );

    WeightVector heavier = w;
    heavier[range_draw( rng, 0, w.size() - 1 )] += 2;
    CHECK( solve( f, heavier ) >= d );

    WeightVector scaled = w;
    for ( auto& wi : scaled )
    {
      wi *= 3;
    }
    CHECK( solve( f, scaled ) == 3 * d );

    for ( std::size_t j = 0; j < f.arity(); ++j )
    {
      std::uint64_t worst = 0;
      for ( Symbol b = 0; b < f.input_alphabet().size(); ++b )
      {
        const auto restricted = query_complexity( restrict( f, j, b ) );
        CHECK( restricted <= d1 );
        worst = std::max( worst, restricted );
      }
      CHECK( d1 <= worst + 1 );
    }
  }
}

} // TEST_SUITE
