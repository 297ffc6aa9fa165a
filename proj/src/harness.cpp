#include "dtc/harness.hpp"

#include "dtc/errors.hpp"
#include "dtc/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dtc
{

std::string_view to_string( Verdict v ) noexcept
{
  switch ( v )
  {
  case Verdict::equal:
    return "equal";
  case Verdict::less:
    return "lhs<rhs";
  case Verdict::greater:
    return "lhs>rhs";
  }
  return "?";
}

std::string_view to_string( FuzzMode m ) noexcept
{
  switch ( m )
  {
  case FuzzMode::theorem:
    return "theorem";
  case FuzzMode::upper_bound:
    return "upper-bound";
  case FuzzMode::iteration:
    return "iteration";
  case FuzzMode::direct_sum:
    return "direct-sum";
  }
  return "?";
}

FuzzMode parse_fuzz_mode( std::string_view text )
{
  for ( const auto m : { FuzzMode::theorem, FuzzMode::upper_bound, FuzzMode::iteration, FuzzMode::direct_sum } )
  {
    if ( to_string( m ) == text )
    {
      return m;
    }
  }
  throw precondition_error( "unknown fuzz mode '" + std::string( text ) + "'" );
}

Verdict compare( std::uint64_t lhs, std::uint64_t rhs ) noexcept
{
  return lhs == rhs ? Verdict::equal : ( lhs < rhs ? Verdict::less : Verdict::greater );
}

namespace
{

ComplexityResult solve_unit( const Relation& f )
{
  return complexity( f, unit_weights( f.arity() ) );
}

void require_inner( std::span<const Relation> fs, bool boolean )
{
  if ( fs.empty() )
  {
    throw precondition_error( "at least one inner relation is required" );
  }
  for ( std::size_t i = 0; i < fs.size(); ++i )
  {
    if ( boolean && !is_boolean_valued( fs[i] ) )
    {
      throw precondition_error( "inner relation " + std::to_string( i + 1 ) + " is not boolean-valued" );
    }
    if ( is_trivial( fs[i] ) )
    {
      throw precondition_error( "inner relation " + std::to_string( i + 1 ) + " is trivial" );
    }
  }
}

std::string describe( const Relation& g, std::span<const Relation> fs )
{
  std::ostringstream s;
  s << "n=" << fs.size() << " m=[";
  for ( std::size_t i = 0; i < fs.size(); ++i )
  {
    s << ( i ? "," : "" ) << fs[i].arity();
  }
  s << "] |X|=" << fs.front().input_alphabet().size() << " |Y|=" << g.input_alphabet().size()
    << " |Z|=" << g.output_alphabet().size();
  return s.str();
}

VerificationReport composition_report( const Relation& g, std::span<const Relation> fs, const TableGuard& guard,
                                       std::string check, bool equality_expected )
{
  VerificationReport report;
  report.check = std::move( check );
  report.equality_expected = equality_expected;
  report.description = describe( g, fs );

  const auto h = compose( g, fs, guard );
  const auto g_bar = substitute_constants( g, fs );

  WeightVector weights;
  for ( const auto& f : fs )
  {
    const auto r = solve_unit( f );
    weights.push_back( r.value );
    report.stats += r.stats;
  }
  report.inner = weights;

  const auto lhs = solve_unit( h );
  const auto rhs = complexity( g_bar, weights );
  report.lhs = lhs.value;
  report.rhs = rhs.value;
  report.stats += lhs.stats;
  report.stats += rhs.stats;
  report.verdict = compare( report.lhs, report.rhs );
  return report;
}

std::uint64_t checked_pow( std::uint64_t base, unsigned k )
{
  std::uint64_t result = 1;
  for ( unsigned i = 0; i < k; ++i )
  {
    if ( base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base )
    {
      throw guard_error( "D(f)^k overflows 64 bits" );
    }
    result *= base;
  }
  return result;
}

} // namespace

VerificationReport verify_theorem( const Relation& g, std::span<const Relation> fs, const TableGuard& guard )
{
  require_inner( fs, true );
  return composition_report( g, fs, guard, "theorem", true );
}

VerificationReport verify_upper_bound( const Relation& g, std::span<const Relation> fs, const TableGuard& guard )
{
  require_inner( fs, false );
  if ( std::all_of( fs.begin(), fs.end(), []( const Relation& f ) { return is_boolean_valued( f ); } ) )
  {
    return verify_theorem( g, fs, guard );
  }
  return composition_report( g, fs, guard, "upper-bound", false );
}

VerificationReport verify_iteration( const Relation& f, unsigned k, const TableGuard& guard )
{
  VerificationReport report;
  report.check = "iteration";
  report.description = "n=" + std::to_string( f.arity() ) + " k=" + std::to_string( k );
  const auto iterated = iterate( f, k, guard );
  const auto base = solve_unit( f );
  const auto lhs = solve_unit( iterated );
  report.inner = { base.value };
  report.lhs = lhs.value;
  report.rhs = checked_pow( base.value, k );
  report.stats += base.stats;
  report.stats += lhs.stats;
  report.verdict = compare( report.lhs, report.rhs );
  return report;
}

VerificationReport verify_direct_sum( std::span<const Relation> fs, const TableGuard& guard )
{
  require_inner( fs, true );
  VerificationReport report;
  report.check = "direct-sum";
  report.description = describe( identity_tuple_relation( fs.size() ), fs );
  const auto h = tuple( fs, guard );
  for ( const auto& f : fs )
  {
    const auto r = solve_unit( f );
    report.inner.push_back( r.value );
    report.rhs += r.value;
    report.stats += r.stats;
  }
  const auto lhs = solve_unit( h );
  report.lhs = lhs.value;
  report.stats += lhs.stats;
  report.verdict = compare( report.lhs, report.rhs );
  return report;
}

VerificationReport verify_uniform_composition( const Relation& f, const Relation& g, const TableGuard& guard )
{
  if ( !is_boolean_valued( f ) )
  {
    throw precondition_error( "inner relation is not boolean-valued" );
  }
  const std::vector<Relation> fs( g.arity(), f );
  VerificationReport report;
  report.check = "uniform";
  report.description = describe( g, fs );
  const auto h = compose( g, fs, guard );
  const auto inner = solve_unit( f );
  const auto outer = solve_unit( g );
  const auto lhs = solve_unit( h );
  report.inner = { inner.value };
  report.lhs = lhs.value;
  if ( inner.value != 0 && outer.value > std::numeric_limits<std::uint64_t>::max() / inner.value )
  {
    throw guard_error( "D(f)·D(g) overflows 64 bits" );
  }
  report.rhs = inner.value * outer.value;
  report.stats += inner.stats;
  report.stats += outer.stats;
  report.stats += lhs.stats;
  report.verdict = compare( report.lhs, report.rhs );
  return report;
}

std::uint64_t derive_seed( std::uint64_t base, std::uint64_t index ) noexcept
{
  std::uint64_t z = base + ( index + 1 ) * 0x9e3779b97f4a7c15ull;
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

double unit_draw( std::mt19937_64& rng ) noexcept
{
  return static_cast<double>( rng() >> 11 ) * 0x1.0p-53;
}

namespace
{

/// High 64 bits of a 64x64-bit product.
constexpr std::uint64_t mul_high( std::uint64_t a, std::uint64_t b ) noexcept
{
  const std::uint64_t a_lo = a & 0xffffffffu, a_hi = a >> 32;
  const std::uint64_t b_lo = b & 0xffffffffu, b_hi = b >> 32;
  const std::uint64_t lo_lo = a_lo * b_lo;
  const std::uint64_t hi_lo = a_hi * b_lo;
  const std::uint64_t lo_hi = a_lo * b_hi;
  const std::uint64_t cross = ( lo_lo >> 32 ) + ( hi_lo & 0xffffffffu ) + lo_hi;
  return a_hi * b_hi + ( hi_lo >> 32 ) + ( cross >> 32 );
}

} // namespace

std::uint64_t range_draw( std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi ) noexcept
{
  const auto draw = rng();
  if ( hi - lo == std::numeric_limits<std::uint64_t>::max() )
  {
    return draw;
  }
  return lo + mul_high( draw, hi - lo + 1 );
}

Relation random_relation( const RelationSpec& spec )
{
  if ( !( spec.density > 0.0 && spec.density <= 1.0 ) )
  {
    throw precondition_error( "density must lie in (0, 1]" );
  }
  std::mt19937_64 rng( spec.seed );
  for ( unsigned attempt = 0; attempt < generation_retries; ++attempt )
  {
    Relation r( spec.arity, spec.input, spec.output );
    for ( std::size_t index = 0; index < r.size(); ++index )
    {
      if ( spec.kind != RelationKind::relation )
      {
        if ( spec.kind == RelationKind::total_function || unit_draw( rng ) < spec.density )
        {
          r.add( index, static_cast<Symbol>( range_draw( rng, 0, spec.output.size() - 1 ) ) );
        }
        continue;
      }
      for ( Symbol y = 0; y < spec.output.size(); ++y )
      {
        if ( unit_draw( rng ) < spec.density )
        {
          r.add( index, y );
        }
      }
    }
    if ( !spec.require_nontrivial || !is_trivial( r ) )
    {
      return r;
    }
  }
  throw guard_error( "could not draw a non-trivial relation in " + std::to_string( generation_retries ) + " attempts" );
}

Instance random_instance( const InstanceSpec& spec )
{
  if ( spec.require_boolean_inner && spec.intermediate.size() != 2 )
  {
    throw precondition_error( "boolean inner relations need an intermediate alphabet of size 2" );
  }
  Instance instance;
  instance.g = random_relation( { .arity = spec.inner_arities.size(),
                                  .input = spec.intermediate,
                                  .output = spec.output,
                                  .density = spec.density,
                                  .seed = derive_seed( spec.seed, 0 ) } );
  for ( std::size_t i = 0; i < spec.inner_arities.size(); ++i )
  {
    instance.fs.push_back( random_relation( { .arity = spec.inner_arities[i],
                                              .input = spec.input,
                                              .output = spec.intermediate,
                                              .density = spec.density,
                                              .seed = derive_seed( spec.seed, i + 1 ),
                                              .require_nontrivial = spec.require_nontrivial,
                                              .kind = spec.inner_kind } ) );
  }
  return instance;
}

Instance fuzz_instance( const FuzzRanges& ranges, FuzzMode mode, std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  const auto draw = [&]( std::uint64_t lo, std::uint64_t hi ) { return range_draw( rng, lo, hi ); };

  if ( mode == FuzzMode::iteration )
  {
    Instance instance;
    const auto n = static_cast<std::size_t>( draw( ranges.inner_min, ranges.inner_max ) );
    instance.fs.push_back( random_relation( { .arity = n,
                                              .input = Alphabet( 2 ),
                                              .output = Alphabet( 2 ),
                                              .seed = derive_seed( seed, 1 ),
                                              .kind = RelationKind::total_function } ) );
    return instance;
  }

  InstanceSpec spec;
  const auto n = draw( ranges.outer_min, ranges.outer_max );
  for ( std::uint64_t i = 0; i < n; ++i )
  {
    spec.inner_arities.push_back( static_cast<std::size_t>( draw( ranges.inner_min, ranges.inner_max ) ) );
  }
  spec.input = Alphabet( ranges.input_size );
  spec.intermediate = Alphabet( mode == FuzzMode::upper_bound ? ranges.intermediate_size : 2 );
  spec.output = Alphabet( static_cast<std::uint32_t>( draw( 2, std::max<std::uint32_t>( 2, ranges.output_max ) ) ) );
  spec.density = ranges.density_min + ( ranges.density_max - ranges.density_min ) * unit_draw( rng );
  spec.seed = rng();
  spec.require_nontrivial = true;
  spec.require_boolean_inner = mode != FuzzMode::upper_bound;
  spec.inner_kind = ranges.inner_kind;
  if ( mode == FuzzMode::direct_sum )
  {
    // g is ignored; keep the instance small
    spec.output = Alphabet( 2 );
  }
  return random_instance( spec );
}

VerificationReport run_check( FuzzMode mode, const Instance& instance, const FuzzRanges& ranges )
{
  switch ( mode )
  {
  case FuzzMode::theorem:
    return verify_theorem( instance.g, instance.fs, ranges.guard );
  case FuzzMode::upper_bound:
    return verify_upper_bound( instance.g, instance.fs, ranges.guard );
  case FuzzMode::iteration:
    return verify_iteration( instance.fs.at( 0 ), ranges.iteration_k, ranges.guard );
  case FuzzMode::direct_sum:
    return verify_direct_sum( instance.fs, ranges.guard );
  }
  throw precondition_error( "unknown fuzz mode" );
}

namespace
{

FuzzRecord run_slot( const FuzzRanges& ranges, FuzzMode mode, std::uint64_t seed, const FuzzOptions& options,
                     std::uint64_t slot )
{
  FuzzRecord record;
  try
  {
    if ( slot < options.seeded.size() )
    {
      record.instance = options.seeded[slot];
    }
    else
    {
      record.seed = derive_seed( seed, slot );
      record.instance = fuzz_instance( ranges, mode, record.seed );
    }
    record.report = run_check( mode, record.instance, ranges );
  }
  catch ( const std::exception& e )
  {
    record.error = e.what();
  }
  return record;
}

FuzzSummary summarize( std::vector<FuzzRecord>& records, FuzzMode mode, const FuzzOptions& options )
{
  FuzzSummary summary;
  summary.mode = mode;
  summary.count = records.size();
  for ( auto& r : records )
  {
    if ( !r.report )
    {
      ++summary.errors;
      summary.failures.push_back( std::move( r ) );
      continue;
    }
    switch ( r.report->verdict )
    {
    case Verdict::equal:
      ++summary.equal;
      break;
    case Verdict::less:
      ++summary.less;
      break;
    case Verdict::greater:
      ++summary.greater;
      break;
    }
    if ( r.report->ok() )
    {
      ++summary.passed;
    }
    else
    {
      ++summary.failed;
      summary.failures.push_back( std::move( r ) );
    }
  }
  if ( options.repro_dir )
  {
    const auto first = std::find_if( summary.failures.begin(), summary.failures.end(),
                                     []( const FuzzRecord& r ) { return r.report.has_value(); } );
    if ( first != summary.failures.end() )
    {
      write_repro_bundle( *options.repro_dir, *first, mode );
      summary.repro = *options.repro_dir;
    }
  }
  return summary;
}

} // namespace

FuzzSummary fuzz_serial( const FuzzRanges& ranges, std::uint64_t count, FuzzMode mode, std::uint64_t seed,
                         const FuzzOptions& options )
{
  std::vector<FuzzRecord> records;
  records.reserve( count );
  for ( std::uint64_t slot = 0; slot < count; ++slot )
  {
    records.push_back( run_slot( ranges, mode, seed, options, slot ) );
  }
  return summarize( records, mode, options );
}

FuzzSummary fuzz( const FuzzRanges& ranges, std::uint64_t count, FuzzMode mode, std::uint64_t seed,
                  const FuzzOptions& options )
{
  if ( options.threads == 1 )
  {
    return fuzz_serial( ranges, count, mode, seed, options );
  }
  std::vector<FuzzRecord> records( count );
  const auto n = static_cast<std::int64_t>( count );
#ifdef _OPENMP
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule( dynamic, 1 ) num_threads( threads )
#endif
  for ( std::int64_t slot = 0; slot < n; ++slot )
  {
    records[static_cast<std::size_t>( slot )] =
        run_slot( ranges, mode, seed, options, static_cast<std::uint64_t>( slot ) );
  }
  return summarize( records, mode, options );
}

void write_repro_bundle( const std::filesystem::path& dir, const FuzzRecord& record, FuzzMode mode )
{
  std::filesystem::create_directories( dir );
  if ( mode != FuzzMode::iteration )
  {
    write_relation_file( dir / "g.rel", record.instance.g );
  }
  for ( std::size_t i = 0; i < record.instance.fs.size(); ++i )
  {
    write_relation_file( dir / ( "f" + std::to_string( i + 1 ) + ".rel" ), record.instance.fs[i] );
  }
  std::ofstream manifest( dir / "manifest.txt", std::ios::binary );
  manifest << "SEED " << record.seed << " MODE " << to_string( mode ) << "\n";
}

std::optional<GapInstance> find_gap_instance( const FuzzRanges& ranges, std::uint64_t count, std::uint64_t seed,
                                              std::span<const Instance> seeded )
{
  if ( ranges.intermediate_size < 3 )
  {
    throw precondition_error( "gap search needs an intermediate alphabet of size at least 3" );
  }
  for ( const auto& instance : seeded )
  {
    auto report = verify_upper_bound( instance.g, instance.fs, ranges.guard );
    if ( report.verdict == Verdict::less )
    {
      return GapInstance{ instance, std::move( report ), 0 };
    }
  }
  for ( std::uint64_t slot = 0; slot < count; ++slot )
  {
    const auto instance_seed = derive_seed( seed, slot );
    auto instance = fuzz_instance( ranges, FuzzMode::upper_bound, instance_seed );
    auto report = verify_upper_bound( instance.g, instance.fs, ranges.guard );
    if ( report.verdict == Verdict::less )
    {
      return GapInstance{ std::move( instance ), std::move( report ), instance_seed };
    }
  }
  return std::nullopt;
}

} // namespace dtc
