// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "dtc/catalog.hpp"
#include "dtc/cli.hpp"
#include "dtc/decision_tree.hpp"
#include "dtc/harness.hpp"
#include "dtc/io.hpp"
#include "dtc/oracle.hpp"
#include "dtc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace dtc;

namespace
{

const std::string data_dir = DTC_TEST_DATA;

// runtime limits in seconds
constexpr double limit_gap = 1.0;
constexpr double limit_exhaustive = 60.0;
constexpr double limit_theorem = 300.0;
constexpr double limit_upper_bound = 300.0;
constexpr double limit_iteration = 60.0;
constexpr double limit_direct_sum = 120.0;
constexpr double limit_properties = 300.0;
constexpr double limit_io = 60.0;

constexpr std::uint64_t theorem_count = 1000;
constexpr std::uint64_t upper_bound_count = 500;
constexpr std::uint64_t direct_sum_count = 100;
constexpr std::uint64_t property_count = 500;
constexpr std::uint64_t round_trip_count = 200;
constexpr std::uint64_t base_seed = 1;

struct Outcome
{
  bool ok = true;
  std::string detail;
};

std::string slurp( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data( const std::string& name )
{
  return data_dir + "/" + name;
}

std::uint64_t sum( const WeightVector& w )
{
  return std::accumulate( w.begin(), w.end(), std::uint64_t{ 0 } );
}

std::string summary_text( const FuzzSummary& s )
{
  std::ostringstream o;
  o << "equal " << s.equal << " less " << s.less << " greater " << s.greater << " errors " << s.errors;
  if ( !s.failures.empty() )
  {
    o << "; first failing seed " << s.failures.front().seed;
  }
  return o.str();
}

int failures = 0;

void report( const std::string& id, const std::string& title, double limit, const std::function<Outcome()>& body )
{
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try
  {
    outcome = body();
  }
  catch ( const std::exception& e )
  {
    outcome = { false, std::string( "exception: " ) + e.what() };
  }
  const double seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  if ( seconds > limit )
  {
    outcome.ok = false;
    outcome.detail += "; over time limit";
  }
  if ( !outcome.ok )
  {
    ++failures;
  }
  char timing[64];
  std::snprintf( timing, sizeof timing, "%.2fs / %.0fs", seconds, limit );
  std::cout << ( outcome.ok ? "PASS" : "FAIL" ) << "  " << id << "  " << title << "  [" << outcome.detail << "] ("
            << timing << ")" << std::endl;
}

Outcome gap_example()
{
  const auto f = read_relation_file( data( "gap_f.rel" ) );
  const auto g = read_relation_file( data( "gap_g.rel" ) );
  const auto h = read_relation_file( data( "gap_h.rel" ) );
  const auto df = query_complexity( f );
  const auto dg = query_complexity( g );
  const auto dh = query_complexity( h );
  const auto dgw = complexity( g, { 2, 2 } ).value;
  const std::vector<Relation> fs{ f, f };
  const bool composed = compose( g, fs ) == h;
  std::ostringstream o;
  o << "D(f)=" << df << " D(g)=" << dg << " D(h)=" << dh << " D(g,[2,2])=" << dgw << ( composed ? "" : " compose!=h" );
  return { df == 2 && dg == 2 && dh == 3 && dgw == 4 && composed, o.str() };
}

Outcome exhaustive_oracle()
{
  std::uint64_t checked = 0, mismatched = 0;
  for ( const std::size_t n : { 2u, 3u } )
  {
    const std::uint64_t functions = std::uint64_t{ 1 } << ( std::size_t{ 1 } << n );
    for ( std::uint64_t bits = 0; bits < functions; ++bits )
    {
      const auto f = catalog::boolean_function( n, bits );
      const auto w = unit_weights( n );
      const auto oracle = oracle_complexity( f, w, sum( w ) );
      mismatched += !oracle || *oracle != complexity( f, w ).value;
      ++checked;
    }
  }
  return { checked == 272 && mismatched == 0,
           std::to_string( checked ) + " functions, " + std::to_string( mismatched ) + " mismatches" };
}

Outcome theorem_suite( RelationKind inner )
{
  const FuzzRanges ranges{ .inner_kind = inner };
  const auto s = fuzz( ranges, theorem_count, FuzzMode::theorem, base_seed );
  return { s.success() && s.equal == theorem_count, summary_text( s ) };
}

Outcome upper_bound_suite( RelationKind inner )
{
  const FuzzRanges ranges{ .intermediate_size = 3, .inner_kind = inner };
  FuzzOptions options;
  options.seeded.push_back( { catalog::gap_outer(), { catalog::gap_inner(), catalog::gap_inner() } } );
  const auto s = fuzz( ranges, upper_bound_count, FuzzMode::upper_bound, base_seed, options );
  return { s.success() && s.less >= 1 && s.count == upper_bound_count, summary_text( s ) };
}

Outcome iteration_values()
{
  const auto nae = catalog::not_all_equal( 3 );
  const auto x = catalog::xor_function( 2 );
  const auto nae_oracle = oracle_complexity( nae, unit_weights( 3 ), 3 );
  const auto xor_oracle = oracle_complexity( x, unit_weights( 2 ), 2 );
  const auto nae2 = query_complexity( iterate( nae, 2 ) );
  const auto xor2 = query_complexity( iterate( x, 2 ) );
  std::ostringstream o;
  o << "oracle D(NAE3)=" << nae_oracle.value_or( 0 ) << " D(XOR2)=" << xor_oracle.value_or( 0 ) << "; D(NAE3^(2))=" << nae2
    << " D(XOR2^(2))=" << xor2;
  return { nae_oracle == std::uint64_t{ 3 } && xor_oracle == std::uint64_t{ 2 } && nae2 == 9 && xor2 == 4, o.str() };
}

Outcome direct_sum_suite()
{
  const FuzzRanges ranges{ .outer_min = 3, .outer_max = 3 };
  const auto s = fuzz( ranges, direct_sum_count, FuzzMode::direct_sum, base_seed );
  return { s.success() && s.equal == direct_sum_count, summary_text( s ) };
}

Relation property_relation( std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  const auto arity = static_cast<std::size_t>( range_draw( rng, 1, 3 ) );
  const auto x = static_cast<std::uint32_t>( range_draw( rng, 2, arity > 2 ? 2 : 3 ) );
  const auto y = static_cast<std::uint32_t>( range_draw( rng, 2, 3 ) );
  const double density = 0.2 + 0.6 * unit_draw( rng );
  return random_relation(
      { .arity = arity, .input = Alphabet( x ), .output = Alphabet( y ), .density = density, .seed = rng() } );
}

Outcome property_suites()
{
  std::uint64_t base_case = 0, restriction = 0, weight_monotone = 0, scaling = 0, single_step = 0, soundness = 0;
  for ( std::uint64_t i = 0; i < property_count; ++i )
  {
    const auto seed = derive_seed( base_seed, i );
    const auto f = property_relation( seed );
    std::mt19937_64 rng( seed ^ 0x5bd1e995 );
    WeightVector w( f.arity() );
    for ( auto& wi : w )
    {
      wi = range_draw( rng, 1, 5 );
    }
    const auto d1 = query_complexity( f );
    const auto r = complexity( f, w, { .build_tree = true } );

    base_case += ( d1 == 0 ) != is_constant( f );

    bool restriction_ok = true, step_ok = true;
    for ( std::size_t j = 0; j < f.arity(); ++j )
    {
      std::uint64_t worst = 0;
      for ( Symbol b = 0; b < f.input_alphabet().size(); ++b )
      {
        const auto restricted = query_complexity( restrict( f, j, b ) );
        restriction_ok = restriction_ok && restricted <= d1;
        worst = std::max( worst, restricted );
      }
      step_ok = step_ok && d1 <= worst + 1;
    }
    restriction += !restriction_ok;
    single_step += !step_ok;

    WeightVector heavier = w;
    heavier[range_draw( rng, 0, w.size() - 1 )] += range_draw( rng, 1, 3 );
    weight_monotone += complexity( f, heavier ).value < r.value;

    const auto c = range_draw( rng, 2, 5 );
    WeightVector scaled = w;
    for ( auto& wi : scaled )
    {
      wi *= c;
    }
    scaling += complexity( f, scaled ).value != c * r.value;

    soundness += !r.tree || !tree_computes( *r.tree, f ) || weighted_depth( *r.tree, w ) != r.value;
  }
  std::ostringstream o;
  o << property_count << " relations; violations: base-case " << base_case << " restriction " << restriction
    << " weight-monotone " << weight_monotone << " scaling " << scaling << " single-step " << single_step
    << " tree-soundness " << soundness;
  return { base_case + restriction + weight_monotone + scaling + single_step + soundness == 0, o.str() };
}

struct CliRun
{
  int code;
  std::string out;
};

CliRun run_cli( std::vector<std::string> args )
{
  args.insert( args.begin(), "dtc" );
  std::vector<const char*> argv;
  for ( const auto& a : args )
  {
    argv.push_back( a.c_str() );
  }
  std::ostringstream out, err;
  const int code = cli_main( static_cast<int>( argv.size() ), argv.data(), out, err );
  return { code, out.str() };
}

Outcome io_round_trip()
{
  std::uint64_t bad = 0;
  for ( std::uint64_t i = 0; i < round_trip_count; ++i )
  {
    const auto f = property_relation( derive_seed( base_seed + 1, i ) );
    bad += parse_relation( write_relation( f ) ) != f;
  }
  std::uint64_t golden_bad = 0;
  const std::vector<std::string> files{ "gap_f.rel", "gap_g.rel", "gap_h.rel", "and2.rel",       "or2.rel",    "xor2.rel",
                                        "nae3.rel",  "id1.rel",   "const1.rel", "nonboolean.rel", "messy_f.rel" };
  for ( const auto& name : files )
  {
    const auto f = read_relation_file( data( name ) );
    golden_bad += parse_relation( write_relation( f ) ) != f;
  }
  golden_bad += write_relation( read_relation_file( data( "gap_f.rel" ) ) ) != slurp( data( "golden/gap_f.rel" ) );

  struct Golden
  {
    std::vector<std::string> args;
    int code;
    std::string expected;
  };
  const std::vector<Golden> goldens{
      { { "complexity", data( "gap_f.rel" ) }, 0, "D = 2\n" },
      { { "complexity", data( "gap_g.rel" ), "--weights", "2,2" }, 0, "D = 4\n" },
      { { "tree", data( "gap_f.rel" ) }, 0, slurp( data( "golden/gap_f.dot" ) ) },
      { { "oracle", data( "gap_h.rel" ) }, 0, "D = 3\n" },
      { { "compose", data( "gap_g.rel" ), data( "gap_f.rel" ), data( "gap_f.rel" ) },
        0,
        write_relation( read_relation_file( data( "gap_h.rel" ) ) ) },
      { { "iterate", data( "xor2.rel" ), "--k", "2" }, 0, write_relation( catalog::xor_function( 4 ) ) },
      { { "verify", "--upper-bound", data( "gap_g.rel" ), data( "gap_f.rel" ), data( "gap_f.rel" ) },
        0,
        slurp( data( "golden/verify_upper_bound.out" ) ) },
      { { "verify", "--theorem", data( "or2.rel" ), data( "and2.rel" ), data( "and2.rel" ) },
        0,
        "inner D = 2 2\nD(h) = 4\nD(gbar, [2,2]) = 4\n4 = 4\n" },
      { { "verify", "--theorem", data( "gap_g.rel" ), data( "nonboolean.rel" ), data( "gap_f.rel" ) }, 2, "" },
  };
  std::uint64_t cli_bad = 0;
  for ( const auto& g : goldens )
  {
    const auto r = run_cli( g.args );
    cli_bad += r.code != g.code || r.out != g.expected;
  }
  std::ostringstream o;
  o << round_trip_count << " random round trips, " << bad << " bad; " << files.size() << " golden files, " << golden_bad
    << " bad; " << goldens.size() << " CLI goldens, " << cli_bad << " bad";
  return { bad + golden_bad + cli_bad == 0, o.str() };
}

} // namespace

int main()
{
  report( "1 ", "gap example: D(f)=2 D(g)=2 D(h)=3 D(g,[2,2])=4", limit_gap, gap_example );
  report( "2 ", "solver = oracle on all 2- and 3-bit boolean functions", limit_exhaustive, exhaustive_oracle );
  report( "3 ", "composition law, 1000 instances, boolean inner relations", limit_theorem,
          [] { return theorem_suite( RelationKind::relation ); } );
  report( "3b", "(supplementary) composition law, 1000 instances, functional inner relations", limit_theorem,
          [] { return theorem_suite( RelationKind::partial_function ); } );
  report( "4 ", "upper bound, 500 instances, |Y|=3, some strict gap", limit_upper_bound,
          [] { return upper_bound_suite( RelationKind::relation ); } );
  report( "4b", "(supplementary) upper bound, 500 instances, |Y|=3, functional inner relations", limit_upper_bound,
          [] { return upper_bound_suite( RelationKind::partial_function ); } );
  report( "5 ", "iteration: D(NAE3^(2))=9 D(XOR2^(2))=4", limit_iteration, iteration_values );
  report( "6 ", "direct sum over 100 random triples", limit_direct_sum, direct_sum_suite );
  report( "7 ", "complexity property suites", limit_properties, property_suites );
  report( "8 ", "relation file round trip and CLI goldens", limit_io, io_round_trip );

  std::cout << ( failures == 0 ? "all criteria passed" : std::to_string( failures ) + " criteria failed" ) << std::endl;
  return failures == 0 ? 0 : 1;
}
