#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scpqca/model.hpp"
#include "scpqca/random.hpp"

namespace fixtures
{

using scpqca::CaseTable;
using scpqca::Level;

inline std::string data_path( const std::string& name ) { return std::string( SCPQCA_DATA_DIR ) + "/" + name; }

inline scpqca::FactorSchema schema_of( std::vector<std::pair<std::string, Level>> factors, Level outcome_levels = 2,
                                       std::string outcome = "O" )
{
  std::vector<scpqca::Factor> fs;
  for ( auto& [name, levels] : factors )
    fs.push_back( { name, levels, {} } );
  return scpqca::FactorSchema( std::move( fs ), { std::move( outcome ), outcome_levels, {} } );
}

struct Row
{
  std::vector<Level> values;
  Level outcome;
};

inline CaseTable table_of( const scpqca::FactorSchema& schema, const std::vector<Row>& rows )
{
  std::vector<scpqca::Case> cases;
  for ( std::size_t i = 0; i < rows.size(); ++i )
    cases.push_back( { "c" + std::to_string( i + 1 ), rows[i].values, rows[i].outcome } );
  return CaseTable( schema, std::move( cases ) );
}

// c1(1,1->1) c2(1,0->1) c3(1,1->1) c4(0,1->0) c5(0,0->0) c6(1,0->0)
inline CaseTable m1()
{
  return table_of( schema_of( { { "A", 2 }, { "B", 2 } } ),
                   { { { 1, 1 }, 1 }, { { 1, 0 }, 1 }, { { 1, 1 }, 1 }, { { 0, 1 }, 0 }, { { 0, 0 }, 0 }, { { 1, 0 }, 0 } } );
}

inline scpqca::Conjunction conj( std::vector<scpqca::Literal> lits ) { return scpqca::Conjunction( std::move( lits ) ); }

/// Random table: `factors` factors with 2..max_levels levels each, binary outcome.
inline CaseTable random_table( scpqca::Xoshiro256StarStar& rng, std::size_t factors, Level max_levels,
                               std::size_t cases, double positive_share = 0.5 )
{
  std::vector<std::pair<std::string, Level>> fs;
  for ( std::size_t f = 0; f < factors; ++f )
    fs.push_back( { std::string( 1, static_cast<char>( 'A' + f ) ), static_cast<Level>( 2 + rng.below( max_levels - 1 ) ) } );
  const auto schema = schema_of( fs );
  std::vector<Row> rows;
  for ( std::size_t i = 0; i < cases; ++i )
  {
    Row r;
    for ( std::size_t f = 0; f < factors; ++f )
      r.values.push_back( static_cast<Level>( rng.below( schema.factor( f ).levels ) ) );
    r.outcome = rng.below( 1000 ) < static_cast<std::uint64_t>( positive_share * 1000 ) ? 1 : 0;
    rows.push_back( std::move( r ) );
  }
  return table_of( schema, rows );
}

/// Random conjunction over the table's schema with each factor constrained with probability 1/2.
inline scpqca::Conjunction random_conjunction( scpqca::Xoshiro256StarStar& rng, const scpqca::FactorSchema& schema )
{
  std::vector<scpqca::Literal> lits;
  for ( std::size_t f = 0; f < schema.size(); ++f )
    if ( rng.below( 2 ) )
      lits.push_back( { f, static_cast<Level>( rng.below( schema.factor( f ).levels ) ) } );
  return scpqca::Conjunction( std::move( lits ) );
}

inline std::vector<std::string> ids( const scpqca::CaseSet& set, const CaseTable& table )
{
  std::vector<std::string> out;
  set.for_each( [&]( std::size_t i ) { out.push_back( table.at( i ).id ); } );
  return out;
}

} // namespace fixtures
