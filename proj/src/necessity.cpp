#include "scpqca/necessity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace scpqca
{

std::vector<NecessaryCondition> necessary_conditions( const CaseTable& table, Level decision_label, double threshold )
{
  if ( !( threshold > 0.0 && threshold <= 1.0 ) )
    throw InputError( "necessity threshold must lie in (0, 1]" );
  auto positives = table.positives( decision_label );
  const auto total = positives.count();
  if ( total == 0 )
    throw UndefinedRatioError( "necessity analysis: no case has outcome " + std::to_string( decision_label ) );

  auto masks = literal_masks( table );
  std::vector<NecessaryCondition> out;
  for ( std::size_t f = 0; f < masks.size(); ++f )
    for ( Level v = 0; v < masks[f].size(); ++v )
    {
      Ratio r{ masks[f][v].count_and( positives ), total };
      if ( exceeds( r, threshold ) )
        out.push_back( { { f, v }, r } );
    }
  std::stable_sort( out.begin(), out.end(),
                    []( const NecessaryCondition& a, const NecessaryCondition& b ) { return a.consistency > b.consistency; } );
  return out;
}

std::vector<std::size_t> exclude_necessary( const FactorSchema& schema, std::span<const Literal> necessary )
{
  std::set<std::size_t> used;
  for ( const auto& lit : necessary )
    used.insert( lit.factor );
  std::vector<std::size_t> rest;
  for ( std::size_t f = 0; f < schema.size(); ++f )
    if ( !used.count( f ) )
      rest.push_back( f );
  return rest;
}

std::vector<std::size_t> ambiguous_factors( std::span<const NecessaryCondition> conditions )
{
  std::map<std::size_t, int> per_factor;
  for ( const auto& c : conditions )
    ++per_factor[c.literal.factor];
  std::vector<std::size_t> out;
  for ( auto [f, n] : per_factor )
    if ( n > 1 )
      out.push_back( f );
  return out;
}

} // namespace scpqca
