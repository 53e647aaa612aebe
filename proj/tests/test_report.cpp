#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "scpqca/report.hpp"

using namespace scpqca;
using fixtures::conj;
using Json = nlohmann::json;

namespace
{

PipelineResult m1_result()
{
  PipelineParams p;
  p.unique_cover = 1;
  return run_pipeline( fixtures::m1(), p );
}

std::string render( auto&& write )
{
  std::ostringstream out;
  write( out );
  return out.str();
}

std::vector<std::string> lines( const std::string& text )
{
  std::vector<std::string> out;
  std::istringstream in( text );
  for ( std::string l; std::getline( in, l ); )
    out.push_back( l );
  return out;
}

} // namespace

TEST_CASE( "ratio rendering" )
{
  CHECK( format_ratio( Ratio{ 2, 3 } ) == "0.6667" );
  CHECK( format_ratio( Ratio{ 1, 1 } ) == "1.0000" );
  CHECK( format_ratio( Ratio{ 0, 5 } ) == "0.0000" );
  CHECK( format_ratio( Ratio{ 1, 8 } ) == "0.1250" );
}

TEST_CASE( "chart marks" )
{
  const auto t = fixtures::m1();
  const auto r = m1_result();
  const auto chart = configuration_chart( *r.solution, t.schema() );
  const auto rows = lines( chart );
  REQUIRE( rows.size() >= 5 );
  CHECK( rows[1].starts_with( "A" ) );
  CHECK( rows[1].find( "●*" ) != std::string::npos );
  CHECK( rows[2].starts_with( "B" ) );
  CHECK( rows[2].find( "●" ) != std::string::npos );
  CHECK( rows[2].find( "*" ) == std::string::npos );
  CHECK( chart.find( "consistency      1.0000" ) != std::string::npos );
  CHECK( chart.find( "raw coverage     0.6667" ) != std::string::npos );
  CHECK( solution_expression( *r.solution, t.schema() ) == "A*B" );
}

TEST_CASE( "chart marks for absent, negated and multi-value literals" )
{
  const auto s = fixtures::schema_of( { { "A", 2 }, { "B", 3 }, { "C", 2 } } );
  const auto t = fixtures::table_of( s, { { { 0, 2, 0 }, 1 }, { { 0, 2, 1 }, 1 }, { { 1, 0, 0 }, 0 }, { { 1, 1, 1 }, 0 } } );
  const std::vector<SelectedRule> picks{ { make_rule( conj( { { 0, 0 }, { 1, 2 } } ), t, 1 ), 2 } };
  const auto sol = assemble_solution( {}, picks, t, CoverParams{} );
  const auto rows = lines( configuration_chart( sol, s ) );
  CHECK( rows[1].find( "○" ) != std::string::npos );
  CHECK( rows[2].find( "2" ) != std::string::npos );
  CHECK( rows[3].find_first_not_of( " C" ) == std::string::npos );
  CHECK( solution_expression( sol, s ) == "a*B2" );
}

TEST_CASE( "solution JSON mirrors the chart" )
{
  const auto t = fixtures::m1();
  const auto r = m1_result();
  const auto text = render( [&]( std::ostream& o ) { write_solution( o, t, r, Format::Text ); } );
  const auto j = Json::parse( render( [&]( std::ostream& o ) { write_solution( o, t, r, Format::Json ); } ) );
  const auto& sol = j.at( "solution" );
  CHECK( sol.at( "expression" ) == "A*B" );
  REQUIRE( sol.at( "configurations" ).size() == 1 );
  const auto& c = sol.at( "configurations" )[0];
  CHECK( c.at( "consistency" ).get<double>() == 1.0 );
  CHECK( c.at( "raw_coverage" ).get<double>() == doctest::Approx( 2.0 / 3.0 ) );
  CHECK( c.at( "ids" ) == Json::array( { "c1", "c3" } ) );
  CHECK( text.find( "solution coverage     0.6667" ) != std::string::npos );
  CHECK( j.at( "candidate_count" ) == r.candidates.size() );
  CHECK( j.at( "necessity" )[0].at( "exact" ) == "3/3" );
}

TEST_CASE( "solution CSV" )
{
  const auto t = fixtures::m1();
  const auto rows = lines( render( [&]( std::ostream& o ) { write_solution( o, t, m1_result(), Format::Csv ); } ) );
  REQUIRE( rows.size() == 3 );
  CHECK( rows[0].starts_with( "configuration,rule,shorthand,consistency" ) );
  CHECK( rows[1] == "1,A=1*B=1,A*B,1.0000,0.6667,0.6667,2,2" );
  CHECK( rows[2].starts_with( "solution,A*B," ) );
}

TEST_CASE( "necessity and candidate listings" )
{
  const auto t = fixtures::m1();
  const auto r = m1_result();
  const auto nec = render( [&]( std::ostream& o ) { write_necessity( o, t, r.necessity, 0.9, Format::Json ); } );
  const auto jn = Json::parse( nec );
  CHECK_FALSE( jn.dump().empty() );
  const auto cand = render( [&]( std::ostream& o ) { write_candidates( o, t, r, Format::Text ); } );
  CHECK( cand.find( "B" ) != std::string::npos );
  CHECK( cand.find( "1.0000" ) != std::string::npos );
  const auto jc = Json::parse( render( [&]( std::ostream& o ) { write_candidates( o, t, r, Format::Json ); } ) );
  CHECK_FALSE( jc.dump().empty() );
}

TEST_CASE( "experiment medians" )
{
  std::vector<ExperimentRow> rows;
  const std::vector<std::pair<std::size_t, std::size_t>> metrics{ { 9, 10 }, { 7, 10 }, { 8, 10 }, { 10, 10 } };
  for ( std::size_t k = 0; k < metrics.size(); ++k )
  {
    ExperimentRow r;
    r.confounds = 20;
    r.seed = k;
    r.consistency = Ratio{ metrics[k].first, metrics[k].second };
    r.coverage = Ratio{ 1, 1 };
    rows.push_back( r );
  }
  ExperimentRow failed;
  failed.confounds = 20;
  failed.error = "vacuous";
  rows.push_back( failed );
  const auto j = Json::parse( render( [&]( std::ostream& o ) { write_experiment( o, "ab", rows, Format::Json ); } ) );
  REQUIRE( j.at( "medians" ).size() == 1 );
  CHECK( j.at( "medians" )[0].at( "consistency" ).get<double>() == doctest::Approx( 0.85 ) );
  CHECK( j.at( "runs" ).size() == 5 );
  CHECK( j.at( "runs" )[4].at( "consistency" ).is_null() );
  const auto text = render( [&]( std::ostream& o ) { write_experiment( o, "ab", rows, Format::Text ); } );
  CHECK( text.find( "0.8500" ) != std::string::npos );
  CHECK( text.find( "error: vacuous" ) != std::string::npos );
}

TEST_CASE( "sweep and validity outputs parse" )
{
  const auto t = fixtures::m1();
  const auto grid = parse_sweep_grid( "0.8:2:1,0.8:2:0" );
  const auto cells = internal_sweep( t, grid, PipelineParams{} );
  const auto js =
      Json::parse( render( [&]( std::ostream& o ) { write_sweep( o, t.schema(), cells, Format::Json ); } ) ).at( "cells" );
  REQUIRE( js.size() == 2 );
  CHECK( js[0].at( "solution" ) == "A*B" );
  CHECK( js[1].contains( "error" ) );

  PipelineParams p;
  p.unique_cover = 1;
  p.cutoff = 1;
  const auto report = external_validity( t, { 0.2, 3, 1 }, p );
  const auto jv = Json::parse( render( [&]( std::ostream& o ) { write_validity( o, t.schema(), report, Format::Json ); } ) );
  CHECK_FALSE( jv.dump().empty() );
  const auto text = render( [&]( std::ostream& o ) { write_validity( o, t.schema(), report, Format::Text ); } );
  CHECK( text.find( "replicated" ) != std::string::npos );
}
