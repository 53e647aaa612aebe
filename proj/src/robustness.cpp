#include "scpqca/robustness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "scpqca/random.hpp"

namespace scpqca
{

std::string_view to_string( ValidityClass c )
{
  switch ( c )
  {
  case ValidityClass::Replicated: return "replicated";
  case ValidityClass::Superset: return "superset";
  case ValidityClass::Subset: return "subset";
  case ValidityClass::NotIdentified: return "not identified";
  }
  return "?";
}

namespace
{

// Class of `test` against one original.
ValidityClass relation( const Conjunction& test, const Conjunction& original )
{
  if ( test == original )
    return ValidityClass::Replicated;
  if ( test.is_subset_of( original ) )
    return ValidityClass::Superset;
  if ( original.is_subset_of( test ) )
    return ValidityClass::Subset;
  return ValidityClass::NotIdentified;
}

// Best class and the first original that produced it.
std::pair<ValidityClass, std::optional<std::size_t>> classify_with_source( const Conjunction& test,
                                                                          std::span<const Conjunction> originals )
{
  auto best = ValidityClass::NotIdentified;
  std::optional<std::size_t> source;
  for ( std::size_t k = 0; k < originals.size(); ++k )
  {
    const auto c = relation( test, originals[k] );
    if ( c < best )
    {
      best = c;
      source = k;
    }
  }
  return { best, source };
}

} // namespace

ValidityClass classify_configuration( const Conjunction& test, std::span<const Conjunction> originals )
{
  return classify_with_source( test, originals ).first;
}

std::vector<Conjunction> configurations( const Solution& solution )
{
  std::vector<Conjunction> out;
  for ( const auto& r : solution.rules )
    out.push_back( r.conjunction );
  if ( out.empty() && !solution.necessary.empty() )
    out.emplace_back( solution.necessary );
  return out;
}

std::vector<SweepCell> internal_sweep( const CaseTable& table, std::span<const SweepPoint> grid,
                                       const PipelineParams& base )
{
  if ( grid.empty() )
    throw InputError( "sweep grid is empty" );
  std::vector<SweepCell> cells;
  for ( const auto& point : grid )
  {
    SweepCell cell;
    cell.point = point;
    auto params = base;
    params.consistency_threshold = point.consistency_threshold;
    params.cutoff = point.cutoff;
    params.unique_cover = point.unique_cover;
    try
    {
      auto result = run_pipeline( table, params );
      cell.candidate_count = result.candidates.size();
      cell.solution = std::move( result.solution );
      cell.warnings = std::move( result.warnings );
    }
    catch ( const Error& e )
    {
      cell.error = e.what();
    }
    cells.push_back( std::move( cell ) );
  }
  return cells;
}

std::vector<SweepPoint> parse_sweep_grid( std::string_view text )
{
  std::vector<SweepPoint> grid;
  std::size_t start = 0;
  while ( start <= text.size() )
  {
    auto end = text.find( ',', start );
    if ( end == std::string_view::npos )
      end = text.size();
    const auto item = text.substr( start, end - start );
    const auto c1 = item.find( ':' );
    const auto c2 = c1 == std::string_view::npos ? c1 : item.find( ':', c1 + 1 );
    if ( c2 == std::string_view::npos || item.find( ':', c2 + 1 ) != std::string_view::npos )
      throw InputError( "grid point '" + std::string( item ) + "' is not cons:cutoff:unique_cover" );
    SweepPoint p;
    const auto cons = std::string( item.substr( 0, c1 ) );
    std::size_t used = 0;
    try
    {
      p.consistency_threshold = std::stod( cons, &used );
    }
    catch ( const std::exception& )
    {
      used = 0;
    }
    if ( cons.empty() || used != cons.size() )
      throw InputError( "grid point '" + std::string( item ) + "': bad consistency threshold" );
    auto parse_count = [&]( std::string_view s, std::size_t& out ) {
      auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), out );
      if ( s.empty() || ec != std::errc{} || ptr != s.data() + s.size() )
        throw InputError( "grid point '" + std::string( item ) + "': bad integer '" + std::string( s ) + "'" );
    };
    parse_count( item.substr( c1 + 1, c2 - c1 - 1 ), p.cutoff );
    parse_count( item.substr( c2 + 1 ), p.unique_cover );
    grid.push_back( p );
    start = end + 1;
  }
  return grid;
}

std::size_t ValidityReport::total() const noexcept
{
  return std::accumulate( totals.begin(), totals.end(), std::size_t{ 0 } );
}

double ValidityReport::configuration_accuracy( std::size_t k ) const
{
  if ( repetitions.empty() )
    return 0.0;
  return static_cast<double>( per_original.at( k )[0] ) / static_cast<double>( repetitions.size() );
}

std::optional<double> ValidityReport::accuracy() const
{
  const auto classified = total() - count( ValidityClass::NotIdentified );
  if ( classified == 0 )
    return std::nullopt;
  return static_cast<double>( count( ValidityClass::Replicated ) ) / static_cast<double>( classified );
}

ValidityReport external_validity( const CaseTable& table, const ValidityParams& validity, const PipelineParams& params )
{
  if ( !( validity.fraction > 0.0 && validity.fraction < 1.0 ) )
    throw InputError( "resampling fraction must lie strictly between 0 and 1" );
  if ( validity.reps < 1 )
    throw InputError( "at least one repetition is required" );

  ValidityReport report;
  const auto full = run_pipeline( table, params );
  report.originals = configurations( *full.solution );
  report.per_original.assign( report.originals.size(), {} );

  const auto n = table.size();
  report.removed_per_rep =
      std::min( n, static_cast<std::size_t>( std::ceil( validity.fraction * static_cast<double>( n ) - 1e-9 ) ) );

  for ( std::size_t r = 0; r < validity.reps; ++r )
  {
    Xoshiro256StarStar rng( derive_seed( validity.seed, r ) );
    std::vector<std::size_t> order( n );
    std::iota( order.begin(), order.end(), 0 );
    for ( std::size_t k = 0; k < report.removed_per_rep; ++k )
      std::swap( order[k], order[k + static_cast<std::size_t>( rng.below( n - k ) )] );
    std::vector<std::size_t> removed( order.begin(), order.begin() + static_cast<std::ptrdiff_t>( report.removed_per_rep ) );
    std::vector<std::size_t> kept( order.begin() + static_cast<std::ptrdiff_t>( report.removed_per_rep ), order.end() );
    std::sort( removed.begin(), removed.end() );
    std::sort( kept.begin(), kept.end() );

    Repetition rep;
    for ( auto i : removed )
      rep.removed_ids.push_back( table.at( i ).id );
    const auto sample = table.subset( kept );
    try
    {
      if ( sample.positives( params.decision_label ).empty() )
        throw UndefinedRatioError( "subsample has no positive cases" );
      const auto result = run_pipeline( sample, params );
      rep.configurations = configurations( *result.solution );
    }
    catch ( const Error& e )
    {
      rep.degenerate = true;
      rep.note = e.what();
    }
    if ( rep.degenerate )
      ++report.totals[static_cast<std::size_t>( ValidityClass::NotIdentified )];
    for ( const auto& conj : rep.configurations )
    {
      const auto [cls, source] = classify_with_source( conj, report.originals );
      rep.classes.push_back( cls );
      ++report.totals[static_cast<std::size_t>( cls )];
      if ( source )
        ++report.per_original[*source][static_cast<std::size_t>( cls )];
    }
    report.repetitions.push_back( std::move( rep ) );
  }
  return report;
}

} // namespace scpqca
