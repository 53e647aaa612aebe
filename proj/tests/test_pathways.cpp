#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "scpqca/candidates.hpp"
#include "scpqca/pathways.hpp"

using namespace scpqca;
using fixtures::conj;

namespace
{

FactorSchema letters( std::size_t n, Level levels = 2 )
{
  const std::vector<Level> l{ levels };
  return synthetic_schema( n, l );
}

std::size_t error_position( const std::string& text, const FactorSchema& schema )
{
  try
  {
    parse_pathway( text, schema );
  }
  catch ( const ParseError& e )
  {
    return e.position();
  }
  FAIL( "no parse error for " << text );
  return 0;
}

// Hand-written form of ab+CD+ace+BDF.
bool six_factor_pathway( const std::vector<Level>& v )
{
  const bool a = v[0], b = v[1], c = v[2], d = v[3], e = v[4], f = v[5];
  return ( !a && !b ) || ( c && d ) || ( !a && !c && !e ) || ( b && d && f );
}

} // namespace

TEST_CASE( "Boolean shorthand" )
{
  const auto p = parse_pathway( "ab+CD", letters( 4 ) );
  REQUIRE( p.terms.size() == 2 );
  CHECK( p.terms[0] == conj( { { 0, 0 }, { 1, 0 } } ) );
  CHECK( p.terms[1] == conj( { { 2, 1 }, { 3, 1 } } ) );
  CHECK( parse_pathway( "a*b + C * D", letters( 4 ) ).terms == p.terms );

  const auto six = parse_pathway( "ab+CD+ace+BDF", letters( 6 ) );
  REQUIRE( six.terms.size() == 4 );
  CHECK( six.terms[0].size() == 2 );
  CHECK( six.terms[1].size() == 2 );
  CHECK( six.terms[2].size() == 3 );
  CHECK( six.terms[3].size() == 3 );
  CHECK( pathway_name( six ) == "ab+CD+ace+BDF" );
}

TEST_CASE( "explicit levels" )
{
  const auto s = letters( 5, 3 );
  const auto p = parse_pathway( "A0*B0+B1*C1+C2 *D2+D0*E0", s );
  REQUIRE( p.terms.size() == 4 );
  CHECK( p.terms[0] == conj( { { 0, 0 }, { 1, 0 } } ) );
  CHECK( p.terms[2] == conj( { { 2, 2 }, { 3, 2 } } ) );
  CHECK( p.terms[3] == conj( { { 3, 0 }, { 4, 0 } } ) );
  CHECK( parse_pathway( "B 2* C 2", s ).terms[0] == conj( { { 1, 2 }, { 2, 2 } } ) );
  CHECK( parse_pathway( "A=1", s ).terms[0] == conj( { { 0, 1 } } ) );
  CHECK( pathway_name( p ) == "A0*B0+B1*C1+C2*D2+D0*E0" );
}

TEST_CASE( "multi-letter factor names" )
{
  const auto s = fixtures::schema_of( { { "MS", 2 }, { "MSX", 3 }, { "PV", 2 } } );
  const auto p = parse_pathway( "MS=0*PV=1 + MSX2", s );
  REQUIRE( p.terms.size() == 2 );
  CHECK( p.terms[0] == conj( { { 0, 0 }, { 2, 1 } } ) );
  CHECK( p.terms[1] == conj( { { 1, 2 } } ) );
  CHECK( parse_pathway( "MS1", s ).terms[0] == conj( { { 0, 1 } } ) );
  CHECK_THROWS_AS( parse_pathway( "MS", s ), ParseError );
  CHECK_THROWS_AS( parse_pathway( "MS1PV0", s ), ParseError );
}

TEST_CASE( "parse errors carry positions" )
{
  const auto s = letters( 4 );
  CHECK( error_position( "ab++CD", s ) == 3 );
  CHECK( error_position( "ab*", s ) == 3 );
  CHECK( error_position( "aX", s ) == 1 );
  CHECK( error_position( "+ab", s ) == 0 );
  CHECK( error_position( "ab+", s ) == 3 );
  CHECK( error_position( "A2", s ) == 0 );
  CHECK( error_position( "aA", s ) == 1 );
  CHECK( error_position( "  a b ++", s ) == 7 );
  CHECK( error_position( "", s ) == 0 );
  CHECK( error_position( "A0*", letters( 3, 3 ) ) == 3 );
  CHECK( error_position( "A", letters( 3, 3 ) ) == 0 );
  CHECK( error_position( "ab#", s ) == 2 );
}

TEST_CASE( "truth table in odometer order" )
{
  const auto s = fixtures::schema_of( { { "A", 2 }, { "B", 3 } } );
  const auto t = full_truth_table( s );
  REQUIRE( t.size() == 6 );
  CHECK( t.at( 0 ).values == std::vector<Level>{ 0, 0 } );
  CHECK( t.at( 1 ).values == std::vector<Level>{ 0, 1 } );
  CHECK( t.at( 3 ).values == std::vector<Level>{ 1, 0 } );
  CHECK( t.at( 5 ).id == "r5" );
  CHECK( truth_table_row( s, 4 ) == std::vector<Level>{ 1, 1 } );
  CHECK_THROWS_AS( full_truth_table( letters( 10 ), 1000 ), InputError );
  CHECK( truth_table_size( letters( 20 ) ) == 1u << 20 );
  std::vector<std::pair<std::string, Level>> many;
  for ( int f = 0; f < 70; ++f )
    many.push_back( { "F" + std::to_string( f ), 2 } );
  CHECK( truth_table_size( fixtures::schema_of( many ) ) == UINT64_MAX );
}

TEST_CASE( "planting agrees with a direct evaluation" )
{
  const auto s = letters( 6 );
  const auto planted = plant_outcome( full_truth_table( s ), parse_pathway( "ab+CD+ace+BDF", s ) );
  std::size_t positives = 0;
  for ( const auto& c : planted.cases() )
  {
    CHECK( c.outcome == ( six_factor_pathway( c.values ) ? 1u : 0u ) );
    positives += c.outcome;
  }
  CHECK( positives == 35 );
  CHECK( planted.at( 0 ).outcome == 1 );  // a=0, b=0
  const auto none = std::find_if( planted.cases().begin(), planted.cases().end(),
                                  []( const Case& c ) { return !six_factor_pathway( c.values ); } );
  REQUIRE( none != planted.cases().end() );
  CHECK( none->outcome == 0 );
}

TEST_CASE( "sampling and confounding" )
{
  const auto s = letters( 6 );
  const auto pathway = parse_pathway( "ab+CD+ace+BDF", s );
  const auto population = plant_outcome( full_truth_table( s ), pathway );

  ExperimentSpec spec{ s, pathway, 200, 0, 17 };
  auto clean = sample_and_confound( population, spec );
  REQUIRE( clean.size() == 200 );
  CHECK( clean.at( 0 ).id == "s0" );
  for ( const auto& c : clean.cases() )
    CHECK( c.outcome == ( evaluate( pathway, c.values ) ? 1u : 0u ) );

  spec.confound_count = 1;
  auto one = sample_and_confound( population, spec );
  std::size_t disagree = 0;
  for ( const auto& c : one.cases() )
    disagree += c.outcome != ( evaluate( pathway, c.values ) ? 1u : 0u );
  CHECK( disagree == 1 );

  for ( std::size_t k : { 0u, 5u, 20u, 200u } )
  {
    spec.confound_count = k;
    const auto a = sample_and_confound( population, spec );
    const auto b = sample_and_confound( population, spec );
    CHECK( a == b );
    CHECK( sample_planted( spec ) == a );
    std::size_t d = 0;
    for ( const auto& c : a.cases() )
      d += c.outcome != ( evaluate( pathway, c.values ) ? 1u : 0u );
    CHECK( d == k );
  }
  spec.confound_count = 201;
  CHECK_THROWS_AS( sample_and_confound( population, spec ), InputError );
}

TEST_CASE( "confounding a multi-level outcome picks another level" )
{
  const auto s = fixtures::schema_of( { { "A", 2 } }, 4 );
  std::vector<fixtures::Row> rows;
  for ( Level v = 0; v < 8; ++v )
    rows.push_back( { { v % 2 }, v % 4 } );
  const auto t = fixtures::table_of( s, rows );
  ExperimentSpec spec{ s, parse_pathway( "A", s ), 50, 50, 3 };
  const auto clean = sample_and_confound( t, ExperimentSpec{ s, spec.pathway, 50, 0, 3 } );
  const auto noisy = sample_and_confound( t, spec );
  std::set<Level> seen;
  for ( std::size_t i = 0; i < 50; ++i )
  {
    CHECK( noisy.at( i ).outcome != clean.at( i ).outcome );
    CHECK( noisy.at( i ).outcome < 4 );
    seen.insert( noisy.at( i ).outcome );
  }
  CHECK( seen.size() == 4 );
}

TEST_CASE( "large schemas sample without a truth table" )
{
  const auto s = letters( 20 );
  const auto pathway = parse_pathway( "ab+CD+ace+BDF", s );
  const ExperimentSpec spec{ s, pathway, 200, 10, 4 };
  const auto t = sample_planted( spec );
  CHECK( t.size() == 200 );
  CHECK( sample_planted( spec ) == t );
}

TEST_CASE( "synthetic schema names" )
{
  const std::vector<Level> two{ 2 };
  CHECK( synthetic_schema( 3, two ).factor( 2 ).name == "C" );
  CHECK( synthetic_schema( 30, two ).factor( 29 ).name == "F30" );
  const std::vector<Level> mixed{ 2, 3 };
  CHECK( synthetic_schema( 2, mixed ).factor( 1 ).levels == 3 );
  CHECK_THROWS_AS( synthetic_schema( 3, mixed ), InputError );
  CHECK_THROWS_AS( synthetic_schema( 0, two ), InputError );
}

TEST_CASE( "planted terms are exactly sufficient" )
{
  for ( std::uint64_t seed = 1; seed <= 5; ++seed )
  {
    const auto s = letters( 6 );
    const auto pathway = parse_pathway( "ab+CD+ace+BDF", s );
    const auto t = sample_planted( { s, pathway, 200, 0, seed } );
    CandidateParams p;
    p.consistency_threshold = 1.0;
    p.cutoff = 1;
    const std::vector<std::size_t> all{ 0, 1, 2, 3, 4, 5 };
    const auto rules = enumerate_candidates( t, all, p );
    for ( const auto& term : pathway.terms )
    {
      if ( match_set( term, t ).empty() )
        continue;
      CHECK( std::any_of( rules.begin(), rules.end(), [&]( const auto& r ) { return r.conjunction == term; } ) );
    }
  }
}

TEST_CASE( "clean six-factor experiment" )
{
  const auto s = letters( 6 );
  const ExperimentSpec spec{ s, parse_pathway( "ab+CD+ace+BDF", s ), 200, 0, 1 };
  PipelineParams params;
  const auto report = run_experiment( spec, params );
  CHECK( report.disagreements == 0 );
  REQUIRE( report.result.solution );
  CHECK( report.result.solution->consistency == Ratio{ 1, 1 } );
  CHECK( report.result.solution->coverage == Ratio{ 1, 1 } );
}
