#include "dtc/solver.hpp"

#include "dtc/errors.hpp"

#include <bit>
#include <limits>
#include <string>
#include <unordered_map>

namespace dtc
{

namespace
{

constexpr std::uint64_t unbounded = std::numeric_limits<std::uint64_t>::max();

class MemoSolver
{
public:
  MemoSolver( const WeightVector& weights, const SolveOptions& options ) : weights_( weights ), options_( options ) {}

  std::uint64_t solve( const Relation& f )
  {
    if ( is_constant( f ) )
    {
      return 0;
    }
    const auto key = canonical_key( f );
    if ( const auto it = memo_.find( key ); it != memo_.end() )
    {
      ++stats_.memo_hits;
      return it->second.value;
    }
    ++stats_.nodes_explored;

    Entry best{ unbounded, 0 };
    for ( const auto i : live_variables( f ) )
    {
      const auto w = weights_[i];
      std::uint64_t worst = 0;
      bool cut = false;
      for ( Symbol b = 0; b < f.input_alphabet().size(); ++b )
      {
        worst = std::max( worst, solve( restrict( f, i, b ) ) );
        if ( options_.prune && best.value != unbounded && checked_add( worst, w ) >= best.value )
        {
          cut = true;
          break;
        }
      }
      if ( cut )
      {
        continue;
      }
      if ( const auto candidate = checked_add( worst, w ); candidate < best.value )
      {
        best = { candidate, i };
      }
    }
    memo_.emplace( key, best );
    stats_.memo_entries = memo_.size();
    return best.value;
  }

  DecisionTree build( const Relation& f ) const
  {
    if ( const auto common = common_outputs( f ); common != 0 )
    {
      return DecisionTree::leaf( static_cast<Symbol>( std::countr_zero( common ) ) );
    }
    const auto& entry = memo_.at( canonical_key( f ) );
    std::vector<DecisionTree> children;
    children.reserve( f.input_alphabet().size() );
    for ( Symbol b = 0; b < f.input_alphabet().size(); ++b )
    {
      children.push_back( build( restrict( f, entry.variable, b ) ) );
    }
    return DecisionTree::node( entry.variable, std::move( children ) );
  }

  const SolveStats& stats() const noexcept { return stats_; }

private:
  struct Entry
  {
    std::uint64_t value;
    std::size_t variable;
  };

  static std::uint64_t checked_add( std::uint64_t a, std::uint64_t b )
  {
    if ( a > unbounded - 1 - b )
    {
      throw guard_error( "weighted complexity overflows 64 bits" );
    }
    return a + b;
  }

  const WeightVector& weights_;
  SolveOptions options_;
  std::unordered_map<CanonicalKey, Entry> memo_;
  SolveStats stats_;
};

} // namespace

ComplexityResult complexity( const Relation& f, const WeightVector& weights, const SolveOptions& options )
{
  if ( weights.size() != f.arity() )
  {
    throw precondition_error( "weight vector has length " + std::to_string( weights.size() ) + ", relation arity is " +
                              std::to_string( f.arity() ) );
  }
  MemoSolver solver( weights, options );
  ComplexityResult result;
  result.value = solver.solve( f );
  if ( options.build_tree )
  {
    result.tree = solver.build( f );
  }
  result.stats = solver.stats();
  return result;
}

DecisionTree optimal_tree( const Relation& f, const WeightVector& weights )
{
  return *complexity( f, weights, { .build_tree = true } ).tree;
}

} // namespace dtc
