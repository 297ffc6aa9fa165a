#include "dtc/cli.hpp"

#include "dtc/catalog.hpp"
#include "dtc/errors.hpp"
#include "dtc/harness.hpp"
#include "dtc/io.hpp"
#include "dtc/oracle.hpp"
#include "dtc/solver.hpp"

#include <CLI11.hpp>

#include <numeric>
#include <ostream>
#include <sstream>

namespace dtc
{

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

std::string join( const std::vector<std::uint64_t>& values, std::string_view sep )
{
  std::string s;
  for ( std::size_t i = 0; i < values.size(); ++i )
  {
    if ( i )
    {
      s += sep;
    }
    s += std::to_string( values[i] );
  }
  return s;
}

std::string_view relation_symbol( Verdict v )
{
  switch ( v )
  {
  case Verdict::equal:
    return "=";
  case Verdict::less:
    return "<";
  case Verdict::greater:
    return ">";
  }
  return "?";
}

WeightVector resolve_weights( const std::vector<std::uint64_t>& given, const Relation& f )
{
  if ( given.empty() )
  {
    return unit_weights( f.arity() );
  }
  if ( given.size() != f.arity() )
  {
    throw precondition_error( "--weights has " + std::to_string( given.size() ) + " entries, relation arity is " +
                              std::to_string( f.arity() ) );
  }
  return given;
}

std::vector<Relation> read_all( const std::vector<std::string>& paths, const TableGuard& guard )
{
  std::vector<Relation> rs;
  for ( const auto& p : paths )
  {
    rs.push_back( read_relation_file( p, guard ) );
  }
  return rs;
}

void print_report( std::ostream& out, const VerificationReport& r, std::string_view lhs_label,
                   std::string_view rhs_label )
{
  if ( !r.inner.empty() )
  {
    out << "inner D = " << join( r.inner, " " ) << "\n";
  }
  out << lhs_label << " = " << r.lhs << "\n";
  out << rhs_label << " = " << r.rhs << "\n";
  out << r.lhs << " " << relation_symbol( r.verdict ) << " " << r.rhs << "\n";
}

} // namespace

int cli_main( int argc, const char* const* argv, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Exact (weighted) decision tree complexity of relations" };
  app.require_subcommand( 1 );
  app.fallthrough();

  unsigned max_table_bits = default_max_table_bits;
  app.add_option( "--max-table-bits", max_table_bits, "Cap on relation table size, 2^bits entries" )
      ->check( CLI::Range( 1u, 40u ) );

  std::vector<std::uint64_t> weights;
  const auto add_weights = [&]( CLI::App* sub ) {
    sub->add_option( "--weights", weights, "Per-variable query costs w1,w2,..." )->delimiter( ',' );
  };

  // complexity
  std::string file;
  bool show_stats = false;
  auto* cmd_complexity = app.add_subcommand( "complexity", "Print D(f, w)" );
  cmd_complexity->add_option( "relation", file, "Relation file" )->required();
  add_weights( cmd_complexity );
  cmd_complexity->add_flag( "--stats", show_stats, "Also print solver statistics" );

  // tree
  std::vector<std::string> names;
  auto* cmd_tree = app.add_subcommand( "tree", "Emit an optimal decision tree as DOT" );
  cmd_tree->add_option( "relation", file, "Relation file" )->required();
  add_weights( cmd_tree );
  cmd_tree->add_option( "--names", names, "Variable names n1,n2,..." )->delimiter( ',' );

  // oracle
  std::optional<std::uint64_t> budget;
  auto* cmd_oracle = app.add_subcommand( "oracle", "Brute-force D(f, w) by tree enumeration" );
  cmd_oracle->add_option( "relation", file, "Relation file" )->required();
  add_weights( cmd_oracle );
  cmd_oracle->add_option( "--budget", budget, "Largest weighted depth to search (default: sum of weights)" );

  // compose / tuple
  std::vector<std::string> files;
  auto* cmd_compose = app.add_subcommand( "compose", "Emit g o (f1, ..., fn)" );
  cmd_compose->add_option( "relations", files, "g.rel f1.rel ... fn.rel" )->required()->expected( 2, -1 );
  auto* cmd_tuple = app.add_subcommand( "tuple", "Emit (f1, ..., fn)" );
  cmd_tuple->add_option( "relations", files, "f1.rel ... fn.rel" )->required()->expected( 1, -1 );

  // iterate
  unsigned k = 2;
  auto* cmd_iterate = app.add_subcommand( "iterate", "Emit the k-fold iteration f^(k)" );
  cmd_iterate->add_option( "relation", file, "Relation file" )->required();
  cmd_iterate->add_option( "--k", k, "Iteration count" )->check( CLI::PositiveNumber );

  // verify
  auto* cmd_verify = app.add_subcommand( "verify", "Check the composition law, iteration or direct sum" );
  auto* verify_modes = cmd_verify->add_option_group( "mode" );
  bool v_theorem = false, v_upper = false, v_iteration = false, v_direct = false;
  verify_modes->add_flag( "--theorem", v_theorem, "D(g o fs) = D(gbar, [D(fi)]); args: g f1 ... fn" );
  verify_modes->add_flag( "--upper-bound", v_upper, "D(g o fs) <= D(gbar, [D(fi)]); args: g f1 ... fn" );
  verify_modes->add_flag( "--iteration", v_iteration, "D(f^(k)) = D(f)^k; args: f" );
  verify_modes->add_flag( "--direct-sum", v_direct, "D((f1, ..., fn)) = sum D(fi); args: f1 ... fn" );
  verify_modes->require_option( 1 );
  cmd_verify->add_option( "relations", files, "Relation files" )->required()->expected( 1, -1 );
  cmd_verify->add_option( "--k", k, "Iteration count for --iteration" )->check( CLI::PositiveNumber );

  // fuzz
  std::string mode_text = "theorem";
  std::uint64_t count = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string repro_dir;
  FuzzRanges ranges;
  auto* cmd_fuzz = app.add_subcommand( "fuzz", "Check many seeded random instances" );
  cmd_fuzz->add_option( "--mode", mode_text, "theorem | upper-bound | iteration | direct-sum" )
      ->check( CLI::IsMember( { "theorem", "upper-bound", "iteration", "direct-sum" } ) );
  cmd_fuzz->add_option( "--count", count, "Number of instances" );
  cmd_fuzz->add_option( "--seed", seed, "Base seed" );
  cmd_fuzz->add_option( "--threads", threads, "Worker threads (0: OpenMP default, 1: serial)" );
  cmd_fuzz->add_option( "--repro-dir", repro_dir, "Write the first failure here" );
  cmd_fuzz->add_option( "--y-size", ranges.intermediate_size, "Intermediate alphabet size for upper-bound mode" )
      ->check( CLI::Range( 2u, 64u ) );
  bool functional = false;
  cmd_fuzz->add_flag( "--functional", functional, "Draw inner relations as partial functions" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e, out, err );
    return code == 0 ? exit_ok : exit_usage;
  }

  const TableGuard guard{ max_table_bits };
  ranges.guard = guard;

  try
  {
    if ( cmd_complexity->parsed() )
    {
      const auto f = read_relation_file( file, guard );
      const auto r = complexity( f, resolve_weights( weights, f ) );
      out << "D = " << r.value << "\n";
      if ( show_stats )
      {
        out << "nodes_explored " << r.stats.nodes_explored << " memo_hits " << r.stats.memo_hits << " memo_entries "
            << r.stats.memo_entries << "\n";
      }
      return exit_ok;
    }
    if ( cmd_tree->parsed() )
    {
      const auto f = read_relation_file( file, guard );
      out << export_dot( optimal_tree( f, resolve_weights( weights, f ) ), names );
      return exit_ok;
    }
    if ( cmd_oracle->parsed() )
    {
      const auto f = read_relation_file( file, guard );
      const auto w = resolve_weights( weights, f );
      const auto b = budget.value_or( std::accumulate( w.begin(), w.end(), std::uint64_t{ 0 } ) );
      if ( const auto d = oracle_complexity( f, w, b ) )
      {
        out << "D = " << *d << "\n";
        return exit_ok;
      }
      out << "no tree within budget " << b << "\n";
      return exit_failed;
    }
    if ( cmd_compose->parsed() )
    {
      const auto rs = read_all( files, guard );
      out << write_relation( compose( rs.front(), std::span( rs ).subspan( 1 ), guard ) );
      return exit_ok;
    }
    if ( cmd_tuple->parsed() )
    {
      out << write_relation( tuple( read_all( files, guard ), guard ) );
      return exit_ok;
    }
    if ( cmd_iterate->parsed() )
    {
      out << write_relation( iterate( read_relation_file( file, guard ), k, guard ) );
      return exit_ok;
    }
    if ( cmd_verify->parsed() )
    {
      const auto rs = read_all( files, guard );
      VerificationReport report;
      if ( v_theorem || v_upper )
      {
        if ( rs.size() < 2 )
        {
          throw precondition_error( "expected g.rel followed by at least one inner relation" );
        }
        const auto inner = std::span( rs ).subspan( 1 );
        report = v_theorem ? verify_theorem( rs.front(), inner, guard ) : verify_upper_bound( rs.front(), inner, guard );
        print_report( out, report, "D(h)", "D(gbar, [" + join( report.inner, "," ) + "])" );
      }
      else if ( v_iteration )
      {
        if ( rs.size() != 1 )
        {
          throw precondition_error( "--iteration takes exactly one relation" );
        }
        report = verify_iteration( rs.front(), k, guard );
        print_report( out, report, "D(f^(" + std::to_string( k ) + "))", "D(f)^" + std::to_string( k ) );
      }
      else
      {
        report = verify_direct_sum( rs, guard );
        print_report( out, report, "D(tuple)", "sum D(fi)" );
      }
      return report.ok() ? exit_ok : exit_failed;
    }
    if ( cmd_fuzz->parsed() )
    {
      const auto mode = parse_fuzz_mode( mode_text );
      if ( functional )
      {
        ranges.inner_kind = RelationKind::partial_function;
      }
      FuzzOptions options;
      options.threads = threads;
      if ( !repro_dir.empty() )
      {
        options.repro_dir = repro_dir;
      }
      if ( mode == FuzzMode::upper_bound && ranges.intermediate_size == 3 && ranges.input_size == 2 )
      {
        options.seeded.push_back( { catalog::gap_outer(), { catalog::gap_inner(), catalog::gap_inner() } } );
      }
      const auto summary = fuzz( ranges, count, mode, seed, options );
      out << "mode " << to_string( mode ) << " count " << summary.count << " seed " << seed << " inner "
          << ( functional ? "functional" : "relational" ) << "\n";
      out << "equal " << summary.equal << " less " << summary.less << " greater " << summary.greater << " errors "
          << summary.errors << "\n";
      for ( const auto& f : summary.failures )
      {
        if ( f.report )
        {
          out << "FAIL seed " << f.seed << " " << f.report->description << " " << f.report->lhs << " "
              << relation_symbol( f.report->verdict ) << " " << f.report->rhs << "\n";
        }
        else
        {
          out << "ERROR seed " << f.seed << " " << f.error << "\n";
        }
      }
      if ( summary.repro )
      {
        out << "repro " << summary.repro->string() << "\n";
      }
      out << "pass " << summary.passed << " fail " << summary.failed + summary.errors << "\n";
      return summary.success() ? exit_ok : exit_failed;
    }
  }
  catch ( const precondition_error& e )
  {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch ( const parse_error& e )
  {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch ( const guard_error& e )
  {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch ( const std::exception& e )
  {
    err << "error: " << e.what() << "\n";
    return exit_failed;
  }
  return exit_usage;
}

} // namespace dtc
