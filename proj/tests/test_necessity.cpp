#include <doctest.h>

#include "fixtures.hpp"
#include "scpqca/necessity.hpp"

using namespace scpqca;

TEST_CASE( "necessary conditions of the six-case fixture" )
{
  const auto t = fixtures::m1();
  auto nc = necessary_conditions( t, 1, 0.9 );
  REQUIRE( nc.size() == 1 );
  CHECK( nc[0].literal == Literal{ 0, 1 } );
  CHECK( nc[0].consistency == Ratio{ 1, 1 } );

  nc = necessary_conditions( t, 1, 0.6 );
  REQUIRE( nc.size() == 2 );
  CHECK( nc[0].literal == Literal{ 0, 1 } );
  CHECK( nc[1].literal == Literal{ 1, 1 } );
  CHECK( nc[1].consistency == Ratio{ 2, 3 } );
}

TEST_CASE( "an evenly split factor yields no necessary literal" )
{
  const auto s = fixtures::schema_of( { { "A", 2 }, { "B", 2 } } );
  const auto t = fixtures::table_of( s, { { { 0, 1 }, 1 }, { { 1, 1 }, 1 }, { { 0, 0 }, 0 } } );
  const auto nc = necessary_conditions( t, 1, 0.9 );
  REQUIRE( nc.size() == 1 );
  CHECK( nc[0].literal.factor == 1 );
}

TEST_CASE( "threshold is exclusive and validated" )
{
  const auto s = fixtures::schema_of( { { "A", 2 } } );
  std::vector<fixtures::Row> rows( 10, { { 1 }, 1 } );
  rows[0].values[0] = 0;
  const auto t = fixtures::table_of( s, rows );
  CHECK( necessary_conditions( t, 1, 0.9 ).empty() );
  CHECK( necessary_conditions( t, 1, 0.89 ).size() == 1 );
  CHECK_THROWS_AS( necessary_conditions( t, 1, 0.0 ), InputError );
  CHECK_THROWS_AS( necessary_conditions( t, 1, 1.5 ), InputError );
  CHECK_THROWS_AS( necessary_conditions( t, 0, 0.9 ), UndefinedRatioError );
}

TEST_CASE( "factor exclusion" )
{
  const auto eight = fixtures::schema_of(
      { { "MS", 2 }, { "MC", 2 }, { "PI", 2 }, { "GP", 2 }, { "LE", 2 }, { "LP", 2 }, { "PV", 2 }, { "ED", 2 } } );
  const std::vector<Literal> necessary{ { 4, 1 }, { 7, 1 } };
  CHECK( exclude_necessary( eight, necessary ) == std::vector<std::size_t>{ 0, 1, 2, 3, 5, 6 } );
  CHECK( exclude_necessary( eight, {} ) == std::vector<std::size_t>{ 0, 1, 2, 3, 4, 5, 6, 7 } );
  const auto two = fixtures::schema_of( { { "A", 2 }, { "B", 2 } } );
  const std::vector<Literal> both{ { 0, 1 }, { 1, 0 } };
  CHECK( exclude_necessary( two, both ).empty() );
}

TEST_CASE( "ambiguous factors" )
{
  const std::vector<NecessaryCondition> conditions{
      { { 0, 1 }, { 3, 5 } }, { { 0, 0 }, { 3, 5 } }, { { 1, 1 }, { 1, 1 } } };
  CHECK( ambiguous_factors( conditions ) == std::vector<std::size_t>{ 0 } );
}

TEST_CASE( "necessity properties on random tables" )
{
  Xoshiro256StarStar rng( 3 );
  for ( int i = 0; i < 300; ++i )
  {
    const auto t = fixtures::random_table( rng, 4, 3, 25, 0.6 );
    if ( t.positives( 1 ).empty() )
      continue;
    const double low = 0.3 + 0.1 * static_cast<double>( rng.below( 4 ) );
    const double high = low + 0.2;
    const auto loose = necessary_conditions( t, 1, low );
    const auto strict = necessary_conditions( t, 1, high );
    for ( const auto& nc : loose )
    {
      // independent recount
      std::size_t both = 0, positives = 0;
      for ( const auto& c : t.cases() )
        if ( c.outcome == 1 )
        {
          ++positives;
          both += c.values[nc.literal.factor] == nc.literal.value;
        }
      CHECK( nc.consistency == Ratio{ both, positives } );
      CHECK( nc.consistency.value() > low );
    }
    CHECK( strict.size() <= loose.size() );
    for ( const auto& nc : strict )
      CHECK( std::any_of( loose.begin(), loose.end(), [&]( const auto& l ) { return l.literal == nc.literal; } ) );
  }
}
