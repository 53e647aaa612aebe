#include <doctest.h>

#include "property_checks.hpp"

using namespace scpqca;

TEST_CASE( "metric properties over random draws" )
{
  const auto t = checks::metric_properties( 2024, 10000 );
  CHECK( t.draws == 10000 );
  for ( const auto& f : t.failures )
    FAIL_CHECK( f );
}

TEST_CASE( "candidate counts move monotonically with the thresholds" )
{
  const auto t = checks::threshold_monotonicity( checks::repo_fixtures() );
  for ( const auto& f : t.failures )
    FAIL_CHECK( f );
  const auto crisp = checks::crisp_fixture();
  CHECK( checks::candidate_count( crisp, 0.7, 2 ) > checks::candidate_count( crisp, 0.9, 2 ) );
  CHECK( checks::candidate_count( crisp, 0.8, 1 ) > checks::candidate_count( crisp, 0.8, 5 ) );
}

TEST_CASE( "candidate consistencies respect the threshold" )
{
  Xoshiro256StarStar rng( 31 );
  for ( int i = 0; i < 200; ++i )
  {
    const auto table = fixtures::random_table( rng, 1 + rng.below( 5 ), 3, 5 + rng.below( 40 ) );
    std::vector<std::size_t> fs( table.schema().size() );
    for ( std::size_t f = 0; f < fs.size(); ++f )
      fs[f] = f;
    CandidateParams p;
    p.consistency_threshold = 0.5 + 0.1 * static_cast<double>( rng.below( 6 ) );
    p.cutoff = 1 + rng.below( 3 );
    for ( const auto& r : enumerate_candidates( table, fs, p ) )
    {
      CHECK( at_least( r.consistency, p.consistency_threshold ) );
      CHECK( r.consistency.num <= r.consistency.den );
      CHECK( r.matched.count() >= p.cutoff );
      CHECK( r.positives_matched.is_subset_of( r.matched ) );
    }
  }
}

TEST_CASE( "pipeline solutions satisfy the cover invariants" )
{
  Xoshiro256StarStar rng( 41 );
  for ( int i = 0; i < 200; ++i )
  {
    const auto table = fixtures::random_table( rng, 2 + rng.below( 4 ), 3, 10 + rng.below( 40 ) );
    PipelineParams p;
    p.consistency_threshold = 0.7;
    p.cutoff = 1 + rng.below( 2 );
    p.unique_cover = 1 + rng.below( 2 );
    PipelineResult r;
    try
    {
      r = run_pipeline( table, p );
    }
    catch ( const VacuousSolutionError& )
    {
      continue;
    }
    REQUIRE( r.solution );
    const auto& s = *r.solution;
    CHECK( s.consistency.num <= s.consistency.den );
    CHECK( s.coverage.num <= s.coverage.den );
    for ( const auto& rule : s.rules )
    {
      CHECK( rule.marginal_gain >= p.unique_cover );
      CHECK( rule.unique_coverage <= rule.positives_matched.count() );
      for ( const auto& l : s.necessary )
        CHECK( rule.conjunction.constrains( l.factor ) );
    }
  }
}
