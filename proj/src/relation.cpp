#include "dtc/relation.hpp"

#include "dtc/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <string>

namespace dtc
{

Alphabet::Alphabet( std::uint32_t size ) : size_( size )
{
  if ( size == 0 )
  {
    throw precondition_error( "alphabet size must be positive" );
  }
}

std::size_t TableGuard::check( std::size_t arity, Alphabet input ) const
{
  const std::size_t cap = max_table_bits >= 63 ? std::numeric_limits<std::size_t>::max() / 2
                                               : std::size_t{ 1 } << max_table_bits;
  std::size_t length = 1;
  for ( std::size_t i = 0; i < arity; ++i )
  {
    if ( length > cap / input.size() )
    {
      throw guard_error( "relation table |X|^n = " + std::to_string( input.size() ) + "^" + std::to_string( arity ) +
                         " exceeds 2^" + std::to_string( max_table_bits ) + " entries" );
    }
    length *= input.size();
  }
  return length;
}

namespace
{

std::vector<std::size_t> make_strides( std::size_t arity, Alphabet input )
{
  std::vector<std::size_t> strides( arity );
  std::size_t s = 1;
  for ( std::size_t i = arity; i-- > 0; )
  {
    strides[i] = s;
    s *= input.size();
  }
  return strides;
}

void check_output_alphabet( Alphabet output )
{
  if ( output.size() > max_output_symbols )
  {
    throw precondition_error( "output alphabet of size " + std::to_string( output.size() ) + " exceeds " +
                              std::to_string( max_output_symbols ) );
  }
}

} // namespace

Relation::Relation( std::size_t arity, Alphabet input, Alphabet output, const TableGuard& guard )
    : arity_( arity ), input_( input ), output_( output ), strides_( make_strides( arity, input ) )
{
  check_output_alphabet( output );
  table_.assign( guard.check( arity, input ), 0 );
}

Relation Relation::from_table( std::size_t arity, Alphabet input, Alphabet output, std::vector<OutputSet> table )
{
  check_output_alphabet( output );
  Relation r( 0, input, output );
  r.arity_ = arity;
  r.strides_ = make_strides( arity, input );
  const std::size_t expected = arity == 0 ? 1 : r.strides_[0] * input.size();
  if ( table.size() != expected )
  {
    throw precondition_error( "table length " + std::to_string( table.size() ) + " does not match |X|^n = " +
                              std::to_string( expected ) );
  }
  const auto invalid = ~full_output_set( output.size() );
  if ( std::any_of( table.begin(), table.end(), [invalid]( OutputSet s ) { return ( s & invalid ) != 0; } ) )
  {
    throw precondition_error( "table contains outputs outside the output alphabet" );
  }
  r.table_ = std::move( table );
  return r;
}

void Relation::set_outputs( std::size_t index, OutputSet outputs )
{
  if ( index >= table_.size() )
  {
    throw precondition_error( "input index out of range" );
  }
  if ( ( outputs & ~full_output_set( output_.size() ) ) != 0 )
  {
    throw precondition_error( "output symbol out of range" );
  }
  table_[index] = outputs;
}

void Relation::add( std::size_t index, Symbol y )
{
  if ( !output_.contains( y ) )
  {
    throw precondition_error( "output symbol " + std::to_string( y ) + " out of range" );
  }
  if ( index >= table_.size() )
  {
    throw precondition_error( "input index out of range" );
  }
  table_[index] |= OutputSet{ 1 } << y;
}

std::size_t Relation::encode( std::span<const Symbol> x ) const
{
  if ( x.size() != arity_ )
  {
    throw precondition_error( "input vector has length " + std::to_string( x.size() ) + ", expected " +
                              std::to_string( arity_ ) );
  }
  std::size_t index = 0;
  for ( std::size_t i = 0; i < arity_; ++i )
  {
    if ( !input_.contains( x[i] ) )
    {
      throw precondition_error( "input symbol " + std::to_string( x[i] ) + " out of range" );
    }
    index += x[i] * strides_[i];
  }
  return index;
}

std::vector<Symbol> Relation::decode( std::size_t index ) const
{
  std::vector<Symbol> x( arity_ );
  for ( std::size_t i = 0; i < arity_; ++i )
  {
    x[i] = digit( index, i );
  }
  return x;
}

std::size_t Relation::domain_size() const noexcept
{
  return static_cast<std::size_t>( std::count_if( table_.begin(), table_.end(), []( OutputSet s ) { return s != 0; } ) );
}

Relation relation_from_pairs( std::size_t arity, Alphabet input, Alphabet output,
                              std::span<const InputOutputPair> pairs, const TableGuard& guard )
{
  Relation r( arity, input, output, guard );
  for ( const auto& [x, y] : pairs )
  {
    r.add( r.encode( x ), y );
  }
  return r;
}

bool is_empty( const Relation& f ) noexcept
{
  const auto t = f.table();
  return std::all_of( t.begin(), t.end(), []( OutputSet s ) { return s == 0; } );
}

OutputSet common_outputs( const Relation& f ) noexcept
{
  OutputSet common = full_output_set( f.output_alphabet().size() );
  for ( const auto s : f.table() )
  {
    if ( s != 0 )
    {
      common &= s;
    }
  }
  return common;
}

bool is_constant( const Relation& f ) noexcept
{
  return common_outputs( f ) != 0;
}

bool is_trivial( const Relation& f ) noexcept
{
  const auto full = full_output_set( f.output_alphabet().size() );
  const auto t = f.table();
  return std::all_of( t.begin(), t.end(), [full]( OutputSet s ) { return s == 0 || s == full; } );
}

bool is_total_function( const Relation& f ) noexcept
{
  const auto t = f.table();
  return std::all_of( t.begin(), t.end(), []( OutputSet s ) { return std::popcount( s ) == 1; } );
}

bool is_boolean_valued( const Relation& f ) noexcept
{
  return f.output_alphabet().size() == 2;
}

std::vector<std::size_t> live_variables( const Relation& f )
{
  const auto n = f.arity();
  std::vector<Symbol> first( n );
  std::vector<bool> live( n, false );
  bool seen = false;
  for ( std::size_t index = 0; index < f.size(); ++index )
  {
    if ( !f.in_domain( index ) )
    {
      continue;
    }
    for ( std::size_t i = 0; i < n; ++i )
    {
      const auto d = f.digit( index, i );
      if ( !seen )
      {
        first[i] = d;
      }
      else if ( d != first[i] )
      {
        live[i] = true;
      }
    }
    seen = true;
  }
  std::vector<std::size_t> result;
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( live[i] )
    {
      result.push_back( i );
    }
  }
  return result;
}

namespace
{

constexpr std::uint64_t mix64( std::uint64_t z ) noexcept
{
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

struct DigestLane
{
  std::uint64_t state;
  std::uint64_t salt;
  std::uint64_t multiplier;

  void absorb( std::uint64_t word ) noexcept
  {
    state = std::rotl( state ^ mix64( word ^ salt ), 29 ) * multiplier + salt;
  }
};

} // namespace

CanonicalKey canonical_key( const Relation& f ) noexcept
{
  DigestLane a{ 0x6a09e667f3bcc908ull, 0x243f6a8885a308d3ull, 0x9e3779b97f4a7c15ull };
  DigestLane b{ 0xbb67ae8584caa73bull, 0x13198a2e03707344ull, 0xc2b2ae3d27d4eb4full };
  const auto absorb = [&]( std::uint64_t w ) {
    a.absorb( w );
    b.absorb( w );
  };
  absorb( f.arity() );
  absorb( f.input_alphabet().size() );
  absorb( f.output_alphabet().size() );
  for ( const auto s : f.table() )
  {
    absorb( s );
  }
  return { mix64( a.state ^ b.state >> 1 ), mix64( b.state + a.state ) };
}

Relation restrict( const Relation& f, std::size_t variable, Symbol b )
{
  if ( variable >= f.arity() )
  {
    throw precondition_error( "restriction variable " + std::to_string( variable ) + " out of range" );
  }
  if ( !f.input_alphabet().contains( b ) )
  {
    throw precondition_error( "restriction symbol " + std::to_string( b ) + " out of range" );
  }
  const auto t = f.table();
  std::vector<OutputSet> table( t.size(), 0 );
  const std::size_t stride = f.stride( variable );
  const std::size_t block = stride * f.input_alphabet().size();
  for ( std::size_t base = b * stride; base < t.size(); base += block )
  {
    std::copy_n( t.begin() + static_cast<std::ptrdiff_t>( base ), stride,
                 table.begin() + static_cast<std::ptrdiff_t>( base ) );
  }
  return Relation::from_table( f.arity(), f.input_alphabet(), f.output_alphabet(), std::move( table ) );
}

namespace
{

struct ComposePlan
{
  std::size_t arity = 0;
  Alphabet input{ 1 };
  std::vector<std::size_t> block_divisor;
  std::vector<std::size_t> block_size;
  std::vector<std::size_t> outer_stride;
};

ComposePlan plan_compose( const Relation& g, std::span<const Relation> fs, const TableGuard& guard )
{
  if ( fs.empty() )
  {
    throw precondition_error( "composition needs at least one inner relation" );
  }
  if ( g.arity() != fs.size() )
  {
    throw precondition_error( "outer relation has arity " + std::to_string( g.arity() ) + " but " +
                              std::to_string( fs.size() ) + " inner relations were given" );
  }
  ComposePlan plan;
  plan.input = fs.front().input_alphabet();
  for ( std::size_t i = 0; i < fs.size(); ++i )
  {
    if ( fs[i].input_alphabet() != plan.input )
    {
      throw precondition_error( "inner relations must share one input alphabet" );
    }
    if ( fs[i].output_alphabet() != g.input_alphabet() )
    {
      throw precondition_error( "inner relation " + std::to_string( i + 1 ) +
                                " output alphabet differs from the outer input alphabet" );
    }
    plan.arity += fs[i].arity();
  }
  guard.check( plan.arity, plan.input );

  const auto n = fs.size();
  plan.block_divisor.resize( n );
  plan.block_size.resize( n );
  plan.outer_stride.resize( n );
  std::size_t divisor = 1;
  for ( std::size_t i = n; i-- > 0; )
  {
    plan.block_divisor[i] = divisor;
    plan.block_size[i] = fs[i].size();
    divisor *= fs[i].size();
    plan.outer_stride[i] = g.stride( i );
  }
  return plan;
}

/// Output set of h at composed input `index`.
OutputSet compose_at( const Relation& g, std::span<const Relation> fs, const ComposePlan& plan, std::size_t index )
{
  const auto n = fs.size();
  // small fixed buffers; n is bounded by the table guard on g
  std::vector<OutputSet> remaining( n );
  std::vector<OutputSet> choices( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    const auto block = ( index / plan.block_divisor[i] ) % plan.block_size[i];
    choices[i] = fs[i].outputs( block );
    if ( choices[i] == 0 )
    {
      return 0;
    }
  }

  // odometer over y ∈ Πᵢ choices[i]
  OutputSet result = 0;
  std::vector<std::size_t> offset( n );
  std::size_t i = 0;
  remaining[0] = choices[0];
  std::size_t base = 0;
  while ( true )
  {
    if ( remaining[i] == 0 )
    {
      if ( i == 0 )
      {
        break;
      }
      --i;
      continue;
    }
    const auto y = static_cast<std::size_t>( std::countr_zero( remaining[i] ) );
    remaining[i] &= remaining[i] - 1;
    base = ( i == 0 ? 0 : offset[i - 1] ) + y * plan.outer_stride[i];
    offset[i] = base;
    if ( i + 1 == n )
    {
      result |= g.outputs( base );
    }
    else
    {
      ++i;
      remaining[i] = choices[i];
    }
  }
  return result;
}

} // namespace

Relation compose_serial( const Relation& g, std::span<const Relation> fs, const TableGuard& guard )
{
  const auto plan = plan_compose( g, fs, guard );
  const auto length = guard.check( plan.arity, plan.input );
  std::vector<OutputSet> table( length );
  for ( std::size_t index = 0; index < length; ++index )
  {
    table[index] = compose_at( g, fs, plan, index );
  }
  return Relation::from_table( plan.arity, plan.input, g.output_alphabet(), std::move( table ) );
}

Relation compose( const Relation& g, std::span<const Relation> fs, const TableGuard& guard )
{
  const auto plan = plan_compose( g, fs, guard );
  const auto length = static_cast<std::int64_t>( guard.check( plan.arity, plan.input ) );
  std::vector<OutputSet> table( static_cast<std::size_t>( length ) );
#pragma omp parallel for schedule( static ) if ( length >= 4096 )
  for ( std::int64_t index = 0; index < length; ++index )
  {
    table[static_cast<std::size_t>( index )] = compose_at( g, fs, plan, static_cast<std::size_t>( index ) );
  }
  return Relation::from_table( plan.arity, plan.input, g.output_alphabet(), std::move( table ) );
}

Relation substitute_constants( const Relation& g, std::span<const Relation> fs )
{
  if ( g.arity() != fs.size() )
  {
    throw precondition_error( "outer relation arity does not match the number of inner relations" );
  }
  // pinned[i] = b_i for constant inner relations, absent otherwise
  std::vector<std::optional<Symbol>> pinned( fs.size() );
  for ( std::size_t i = 0; i < fs.size(); ++i )
  {
    if ( fs[i].output_alphabet() != g.input_alphabet() )
    {
      throw precondition_error( "inner relation " + std::to_string( i + 1 ) +
                                " output alphabet differs from the outer input alphabet" );
    }
    if ( is_trivial( fs[i] ) )
    {
      throw precondition_error( "inner relation " + std::to_string( i + 1 ) + " is trivial" );
    }
    if ( const auto common = common_outputs( fs[i] ); common != 0 )
    {
      pinned[i] = static_cast<Symbol>( std::countr_zero( common ) );
    }
  }

  auto table = std::vector<OutputSet>( g.table().begin(), g.table().end() );
  for ( std::size_t index = 0; index < table.size(); ++index )
  {
    for ( std::size_t i = 0; i < fs.size(); ++i )
    {
      if ( pinned[i] && g.digit( index, i ) != *pinned[i] )
      {
        table[index] = 0;
        break;
      }
    }
  }
  return Relation::from_table( g.arity(), g.input_alphabet(), g.output_alphabet(), std::move( table ) );
}

Relation iterate( const Relation& f, unsigned k, const TableGuard& guard )
{
  if ( k == 0 )
  {
    throw precondition_error( "iteration count must be positive" );
  }
  if ( f.input_alphabet().size() != 2 || !is_boolean_valued( f ) || !is_total_function( f ) )
  {
    throw precondition_error( "iteration needs a total boolean function" );
  }
  std::size_t arity = f.arity();
  for ( unsigned level = 1; level < k; ++level )
  {
    if ( f.arity() != 0 && arity > std::numeric_limits<std::size_t>::max() / f.arity() )
    {
      throw guard_error( "iterated arity overflows" );
    }
    arity *= f.arity();
    guard.check( arity, f.input_alphabet() );
  }

  Relation current = f;
  for ( unsigned level = 1; level < k; ++level )
  {
    std::vector<Relation> copies( f.arity(), current );
    current = compose( f, copies, guard );
  }
  return current;
}

Relation identity_tuple_relation( std::size_t n )
{
  if ( n == 0 || n > 6 )
  {
    throw precondition_error( "tuple width must be between 1 and 6" );
  }
  Relation g( n, Alphabet( 2 ), Alphabet( 1u << n ) );
  for ( std::size_t index = 0; index < g.size(); ++index )
  {
    Symbol code = 0;
    for ( std::size_t i = 0; i < n; ++i )
    {
      code |= g.digit( index, i ) << i;
    }
    g.add( index, code );
  }
  return g;
}

Relation tuple( std::span<const Relation> fs, const TableGuard& guard )
{
  if ( fs.empty() || fs.size() > 6 )
  {
    throw precondition_error( "tuple needs between 1 and 6 relations" );
  }
  const Alphabet input = fs.front().input_alphabet();
  std::size_t arity = 0;
  for ( const auto& f : fs )
  {
    if ( !is_boolean_valued( f ) )
    {
      throw precondition_error( "tuple components must be boolean-valued" );
    }
    if ( f.input_alphabet() != input )
    {
      throw precondition_error( "tuple components must share one input alphabet" );
    }
    arity += f.arity();
  }
  const auto n = fs.size();
  const auto length = guard.check( arity, input );

  std::vector<std::size_t> divisor( n );
  std::size_t d = 1;
  for ( std::size_t i = n; i-- > 0; )
  {
    divisor[i] = d;
    d *= fs[i].size();
  }

  std::vector<OutputSet> table( length );
  for ( std::size_t index = 0; index < length; ++index )
  {
    // codes reachable so far, as a set over {0,1}^i
    OutputSet codes = 1;
    for ( std::size_t i = 0; i < n && codes != 0; ++i )
    {
      const auto allowed = fs[i].outputs( ( index / divisor[i] ) % fs[i].size() );
      OutputSet next = 0;
      if ( allowed & 1u )
      {
        next |= codes;
      }
      if ( allowed & 2u )
      {
        next |= codes << ( 1u << i );
      }
      codes = next;
    }
    table[index] = codes;
  }
  return Relation::from_table( arity, input, Alphabet( 1u << n ), std::move( table ) );
}

} // namespace dtc
