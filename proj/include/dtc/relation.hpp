/*!
  \file relation.hpp
  \brief Finite relations f ⊆ Xⁿ × Y as dense tables of output bit sets

  A relation stores, for every input x ∈ Xⁿ, the set of outputs y with
  (x, y) ∈ f.  Inputs are addressed by their mixed-radix index with variable
  0 in the most significant position.  Output sets are 64-bit masks, so the
  output alphabet is capped at 64 symbols.

  Variable indices are 0-based throughout the C++ interface; text renderings
  (DOT labels, CLI output) show them 1-based as `x1, x2, ...`.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace dtc
{

using Symbol = std::uint32_t;
using OutputSet = std::uint64_t;

inline constexpr std::uint32_t max_output_symbols = 64;
inline constexpr unsigned default_max_table_bits = 24;

/// A finite alphabet {0, ..., size-1}.
class Alphabet
{
public:
  explicit Alphabet( std::uint32_t size );

  std::uint32_t size() const noexcept { return size_; }
  bool contains( Symbol s ) const noexcept { return s < size_; }

  friend bool operator==( const Alphabet&, const Alphabet& ) = default;

private:
  std::uint32_t size_;
};

/// Upper bound on dense table length, |X|^n ≤ 2^max_table_bits.
struct TableGuard
{
  unsigned max_table_bits = default_max_table_bits;

  /// Throws guard_error when |X|^arity exceeds the cap.
  std::size_t check( std::size_t arity, Alphabet input ) const;
};

/// Mask with the low `size` bits set.
constexpr OutputSet full_output_set( std::uint32_t size ) noexcept
{
  return size >= 64 ? ~OutputSet{ 0 } : ( ( OutputSet{ 1 } << size ) - 1 );
}

class Relation
{
public:
  /// The empty relation over Xⁿ × Y.
  Relation( std::size_t arity, Alphabet input, Alphabet output, const TableGuard& guard = {} );

  /// Adopts a prebuilt table; its length and bits are validated.
  static Relation from_table( std::size_t arity, Alphabet input, Alphabet output, std::vector<OutputSet> table );

  std::size_t arity() const noexcept { return arity_; }
  Alphabet input_alphabet() const noexcept { return input_; }
  Alphabet output_alphabet() const noexcept { return output_; }

  /// Number of table entries, |X|^arity.
  std::size_t size() const noexcept { return table_.size(); }
  std::span<const OutputSet> table() const noexcept { return table_; }

  OutputSet outputs( std::size_t index ) const { return table_[index]; }
  OutputSet outputs( std::span<const Symbol> x ) const { return table_[encode( x )]; }
  bool contains( std::size_t index, Symbol y ) const { return y < 64 && ( ( table_[index] >> y ) & 1u ); }
  bool in_domain( std::size_t index ) const { return table_[index] != 0; }

  /// Replaces the output set at `index`; bits outside the output alphabet are rejected.
  void set_outputs( std::size_t index, OutputSet outputs );
  void add( std::size_t index, Symbol y );
  void add( std::span<const Symbol> x, Symbol y ) { add( encode( x ), y ); }

  /// Mixed-radix stride of `variable` (|X|^(n-1-variable)).
  std::size_t stride( std::size_t variable ) const { return strides_[variable]; }
  Symbol digit( std::size_t index, std::size_t variable ) const
  {
    return static_cast<Symbol>( ( index / strides_[variable] ) % input_.size() );
  }

  std::size_t encode( std::span<const Symbol> x ) const;
  std::vector<Symbol> decode( std::size_t index ) const;

  std::size_t domain_size() const noexcept;

  friend bool operator==( const Relation& a, const Relation& b ) noexcept
  {
    return a.arity_ == b.arity_ && a.input_ == b.input_ && a.output_ == b.output_ && a.table_ == b.table_;
  }

private:
  std::size_t arity_;
  Alphabet input_;
  Alphabet output_;
  std::vector<std::size_t> strides_;
  std::vector<OutputSet> table_;
};

/// 128-bit digest of (arity, |X|, |Y|, table words).
struct CanonicalKey
{
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==( const CanonicalKey&, const CanonicalKey& ) = default;
};

/* construction */

using InputOutputPair = std::pair<std::vector<Symbol>, Symbol>;

Relation relation_from_pairs( std::size_t arity, Alphabet input, Alphabet output,
                              std::span<const InputOutputPair> pairs, const TableGuard& guard = {} );

/// Total function relation from a callable `Symbol(std::span<const Symbol>)`.
template<typename Fn>
Relation relation_from_function( std::size_t arity, Alphabet input, Alphabet output, Fn&& fn,
                                 const TableGuard& guard = {} )
{
  Relation r( arity, input, output, guard );
  for ( std::size_t index = 0; index < r.size(); ++index )
  {
    const auto x = r.decode( index );
    r.add( index, std::invoke( fn, std::span<const Symbol>( x ) ) );
  }
  return r;
}

/* predicates */

bool is_empty( const Relation& f ) noexcept;
bool is_constant( const Relation& f ) noexcept;
bool is_trivial( const Relation& f ) noexcept;
bool is_total_function( const Relation& f ) noexcept;
bool is_boolean_valued( const Relation& f ) noexcept;

/// Outputs allowed at every domain point (the full alphabet for the empty relation).
OutputSet common_outputs( const Relation& f ) noexcept;

/// Variables on which two domain points differ, ascending.
std::vector<std::size_t> live_variables( const Relation& f );

CanonicalKey canonical_key( const Relation& f ) noexcept;

/* algebra */

/// f restricted to inputs with x[variable] = b.  Arity is preserved.
Relation restrict( const Relation& f, std::size_t variable, Symbol b );

/// g ∘ (f¹, ..., fⁿ); block 1 occupies the most significant input digits.
Relation compose( const Relation& g, std::span<const Relation> fs, const TableGuard& guard = {} );

/// Single-threaded compose kept as the reference for the OpenMP path.
Relation compose_serial( const Relation& g, std::span<const Relation> fs, const TableGuard& guard = {} );

/// ḡ: coordinates fed by constant fᵢ are pinned to that constant.
Relation substitute_constants( const Relation& g, std::span<const Relation> fs );

/// k-fold iteration of a total boolean function.
Relation iterate( const Relation& f, unsigned k, const TableGuard& guard = {} );

/// (f¹, ..., fⁿ) with output y encoded as Σ yᵢ·2^(i-1).
Relation tuple( std::span<const Relation> fs, const TableGuard& guard = {} );

/// Outer relation g(y) = {encode(y)} over {0,1}ⁿ, the identity used by `tuple`.
Relation identity_tuple_relation( std::size_t n );

} // namespace dtc

template<>
struct std::hash<dtc::CanonicalKey>
{
  std::size_t operator()( const dtc::CanonicalKey& k ) const noexcept
  {
    return static_cast<std::size_t>( k.lo ^ ( k.hi * 0x9e3779b97f4a7c15ull ) );
  }
};
