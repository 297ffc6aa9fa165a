#include "dtc/oracle.hpp"

#include "dtc/errors.hpp"

#include <string>
#include <vector>

namespace dtc
{

namespace
{

struct Point
{
  std::vector<Symbol> x;
  std::vector<bool> allowed;
};

class TreeSearch
{
public:
  TreeSearch( const WeightVector& weights, std::uint32_t input_size, std::uint32_t output_size, std::uint64_t cap )
      : weights_( weights ), input_size_( input_size ), output_size_( output_size ), cap_( cap )
  {
  }

  /// Is there a tree of cost ≤ budget that is correct on every point?
  bool exists( const std::vector<const Point*>& points, std::uint64_t budget, std::vector<bool>& queried )
  {
    if ( ++visited_ > cap_ )
    {
      throw guard_error( "oracle search exceeded " + std::to_string( cap_ ) + " nodes" );
    }

    // leaf labelled y
    for ( std::uint32_t y = 0; y < output_size_; ++y )
    {
      bool ok = true;
      for ( const auto* p : points )
      {
        if ( !p->allowed[y] )
        {
          ok = false;
          break;
        }
      }
      if ( ok )
      {
        return true;
      }
    }

    // internal node on variable v; a variable already read on this path adds nothing
    for ( std::size_t v = 0; v < weights_.size(); ++v )
    {
      if ( queried[v] || weights_[v] > budget )
      {
        continue;
      }
      queried[v] = true;
      bool all = true;
      for ( Symbol b = 0; b < input_size_ && all; ++b )
      {
        std::vector<const Point*> branch;
        for ( const auto* p : points )
        {
          if ( p->x[v] == b )
          {
            branch.push_back( p );
          }
        }
        all = exists( branch, budget - weights_[v], queried );
      }
      queried[v] = false;
      if ( all )
      {
        return true;
      }
    }
    return false;
  }

private:
  const WeightVector& weights_;
  std::uint32_t input_size_;
  std::uint32_t output_size_;
  std::uint64_t cap_;
  std::uint64_t visited_ = 0;
};

} // namespace

std::optional<std::uint64_t> oracle_complexity( const Relation& f, const WeightVector& weights, std::uint64_t budget,
                                                std::uint64_t node_cap )
{
  if ( weights.size() != f.arity() )
  {
    throw precondition_error( "weight vector length does not match relation arity" );
  }

  const auto output_size = f.output_alphabet().size();
  std::vector<Point> points;
  for ( std::size_t index = 0; index < f.size(); ++index )
  {
    const auto outputs = f.outputs( index );
    if ( outputs == 0 )
    {
      continue;
    }
    Point p;
    p.x = f.decode( index );
    p.allowed.resize( output_size );
    for ( std::uint32_t y = 0; y < output_size; ++y )
    {
      p.allowed[y] = ( outputs >> y ) & 1u;
    }
    points.push_back( std::move( p ) );
  }
  std::vector<const Point*> all;
  for ( const auto& p : points )
  {
    all.push_back( &p );
  }

  TreeSearch search( weights, f.input_alphabet().size(), output_size, node_cap );
  std::vector<bool> queried( f.arity(), false );
  for ( std::uint64_t cost = 0; cost <= budget; ++cost )
  {
    if ( search.exists( all, cost, queried ) )
    {
      return cost;
    }
  }
  return std::nullopt;
}

} // namespace dtc
