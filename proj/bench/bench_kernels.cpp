// Parallel kernels against their serial references.

#include "dtc/catalog.hpp"
#include "dtc/harness.hpp"
#include "dtc/relation.hpp"
#include "dtc/solver.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace dtc;

namespace
{

std::vector<Relation> nae_blocks( std::size_t width )
{
  return std::vector<Relation>( 3, catalog::not_all_equal( width ) );
}

void compose_parallel( benchmark::State& state )
{
  const auto g = catalog::xor_function( 3 );
  const auto fs = nae_blocks( static_cast<std::size_t>( state.range( 0 ) ) );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( compose( g, fs ) );
  }
  state.SetItemsProcessed( state.iterations() * ( std::int64_t{ 1 } << ( 3 * state.range( 0 ) ) ) );
}

void compose_reference( benchmark::State& state )
{
  const auto g = catalog::xor_function( 3 );
  const auto fs = nae_blocks( static_cast<std::size_t>( state.range( 0 ) ) );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( compose_serial( g, fs ) );
  }
  state.SetItemsProcessed( state.iterations() * ( std::int64_t{ 1 } << ( 3 * state.range( 0 ) ) ) );
}

void fuzz_parallel( benchmark::State& state )
{
  const FuzzRanges ranges;
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( fuzz( ranges, static_cast<std::uint64_t>( state.range( 0 ) ), FuzzMode::theorem, 1 ) );
  }
  state.SetItemsProcessed( state.iterations() * state.range( 0 ) );
}

void fuzz_reference( benchmark::State& state )
{
  const FuzzRanges ranges;
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize(
        fuzz_serial( ranges, static_cast<std::uint64_t>( state.range( 0 ) ), FuzzMode::theorem, 1 ) );
  }
  state.SetItemsProcessed( state.iterations() * state.range( 0 ) );
}

void solve_iterated_nae( benchmark::State& state )
{
  const auto f = iterate( catalog::not_all_equal( 3 ), 2 );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( query_complexity( f ) );
  }
}

} // namespace

BENCHMARK( compose_parallel )->Arg( 4 )->Arg( 6 )->Unit( benchmark::kMillisecond );
BENCHMARK( compose_reference )->Arg( 4 )->Arg( 6 )->Unit( benchmark::kMillisecond );
BENCHMARK( fuzz_parallel )->Arg( 200 )->Arg( 1000 )->Unit( benchmark::kMillisecond );
BENCHMARK( fuzz_reference )->Arg( 200 )->Arg( 1000 )->Unit( benchmark::kMillisecond );
BENCHMARK( solve_iterated_nae )->Unit( benchmark::kMillisecond );

BENCHMARK_MAIN();
