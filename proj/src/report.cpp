#include "scpqca/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace scpqca
{

namespace
{

using Json = nlohmann::ordered_json;

std::size_t display_width( const std::string& s )
{
  return static_cast<std::size_t>(
      std::count_if( s.begin(), s.end(), []( char ch ) { return ( static_cast<unsigned char>( ch ) & 0xC0 ) != 0x80; } ) );
}

// Left-aligned columns separated by two spaces; trailing blanks trimmed.
class TextTable
{
public:
  void row( std::vector<std::string> cells ) { rows_.push_back( std::move( cells ) ); }

  void print( std::ostream& out ) const
  {
    std::vector<std::size_t> widths;
    for ( const auto& r : rows_ )
      for ( std::size_t c = 0; c < r.size(); ++c )
      {
        if ( widths.size() <= c )
          widths.push_back( 0 );
        widths[c] = std::max( widths[c], display_width( r[c] ) );
      }
    for ( const auto& r : rows_ )
    {
      std::string line;
      for ( std::size_t c = 0; c < r.size(); ++c )
      {
        line += r[c];
        if ( c + 1 < r.size() )
          line += std::string( widths[c] - display_width( r[c] ) + 2, ' ' );
      }
      while ( !line.empty() && line.back() == ' ' )
        line.pop_back();
      out << line << '\n';
    }
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_field( const std::string& s )
{
  if ( s.find_first_of( ",\"\n\r" ) == std::string::npos )
    return s;
  std::string q = "\"";
  for ( char ch : s )
  {
    if ( ch == '"' )
      q += '"';
    q += ch;
  }
  return q + '"';
}

void csv_row( std::ostream& out, const std::vector<std::string>& cells )
{
  for ( std::size_t i = 0; i < cells.size(); ++i )
    out << ( i ? "," : "" ) << csv_field( cells[i] );
  out << '\n';
}

std::string fixed( double v, int digits = 4 )
{
  std::ostringstream s;
  s << std::fixed << std::setprecision( digits ) << v;
  return s.str();
}

std::string exact( const Ratio& r ) { return std::to_string( r.num ) + "/" + std::to_string( r.den ); }

Json ratio_json( const Ratio& r ) { return r.value(); }

Json literals_json( const Conjunction& c, const FactorSchema& schema )
{
  Json out = Json::array();
  for ( const auto& l : c )
    out.push_back( { { "factor", schema.factor( l.factor ).name }, { "level", l.value } } );
  return out;
}

Json literal_json( const Literal& l, const FactorSchema& schema )
{
  return { { "factor", schema.factor( l.factor ).name }, { "level", l.value } };
}

std::vector<std::string> ids_of( const CaseSet& set, const CaseTable& table )
{
  std::vector<std::string> ids;
  set.for_each( [&]( std::size_t i ) { ids.push_back( table.at( i ).id ); } );
  return ids;
}

std::string join( const std::vector<std::string>& items, const std::string& sep )
{
  std::string out;
  for ( std::size_t i = 0; i < items.size(); ++i )
    out += ( i ? sep : "" ) + items[i];
  return out;
}

std::string mark( const Literal& l, const FactorSchema& schema, bool necessary )
{
  std::string m = schema.factor( l.factor ).levels == 2 ? ( l.value ? "●" : "○" ) : std::to_string( l.value );
  return necessary ? m + "*" : m;
}

Ratio unique_ratio( const SolutionRule& r, const Solution& s )
{
  return Ratio{ r.unique_coverage, s.positives_total == 0 ? 1 : s.positives_total };
}

double median( std::vector<double> v )
{
  std::sort( v.begin(), v.end() );
  const auto n = v.size();
  return n % 2 ? v[n / 2] : ( v[n / 2 - 1] + v[n / 2] ) / 2.0;
}

void write_warnings( std::ostream& out, const std::vector<std::string>& warnings )
{
  for ( const auto& w : warnings )
    out << "warning: " << w << '\n';
}

Json necessity_json( const FactorSchema& schema, std::span<const NecessaryCondition> conditions )
{
  Json out = Json::array();
  for ( const auto& nc : conditions )
  {
    auto j = literal_json( nc.literal, schema );
    j["consistency"] = ratio_json( nc.consistency );
    j["exact"] = exact( nc.consistency );
    out.push_back( std::move( j ) );
  }
  return out;
}

Json solution_json( const Solution& s, const CaseTable& table )
{
  const auto& schema = table.schema();
  Json j;
  j["expression"] = solution_expression( s, schema );
  Json necessary = Json::array();
  for ( const auto& l : s.necessary )
    necessary.push_back( literal_json( l, schema ) );
  j["necessary"] = std::move( necessary );
  Json rules = Json::array();
  for ( const auto& r : s.rules )
  {
    rules.push_back( { { "rule", conjunction_name( r.conjunction, schema, NameStyle::Assignment ) },
                       { "shorthand", conjunction_name( r.conjunction, schema, NameStyle::Shorthand ) },
                       { "literals", literals_json( r.conjunction, schema ) },
                       { "consistency", ratio_json( r.consistency ) },
                       { "raw_coverage", ratio_json( r.coverage ) },
                       { "unique_coverage", ratio_json( unique_ratio( r, s ) ) },
                       { "unique_positives", r.unique_coverage },
                       { "marginal_gain", r.marginal_gain },
                       { "matched", r.matched.count() },
                       { "positives_matched", r.positives_matched.count() },
                       { "ids", ids_of( r.matched, table ) } } );
  }
  j["configurations"] = std::move( rules );
  j["consistency"] = ratio_json( s.consistency );
  j["coverage"] = ratio_json( s.coverage );
  j["covered_positives"] = s.covered.count_and( table.positives( s.decision_label ) );
  j["positives"] = s.positives_total;
  return j;
}

} // namespace

std::string solution_expression( const Solution& s, const FactorSchema& schema )
{
  std::vector<std::string> terms;
  for ( const auto& r : s.rules )
    terms.push_back( conjunction_name( r.conjunction, schema, NameStyle::Shorthand ) );
  if ( terms.empty() && !s.necessary.empty() )
    terms.push_back( conjunction_name( Conjunction( s.necessary ), schema, NameStyle::Shorthand ) );
  return join( terms, " + " );
}

std::string format_ratio( const Ratio& r ) { return fixed( r.value() ); }

std::string configuration_chart( const Solution& solution, const FactorSchema& schema )
{
  std::ostringstream out;
  std::vector<Conjunction> columns;
  for ( const auto& r : solution.rules )
    columns.push_back( r.conjunction );
  if ( columns.empty() )
    columns.emplace_back( solution.necessary );

  auto is_necessary = [&]( const Literal& l ) {
    return std::find( solution.necessary.begin(), solution.necessary.end(), l ) != solution.necessary.end();
  };

  TextTable t;
  std::vector<std::string> header{ "" };
  for ( std::size_t k = 0; k < columns.size(); ++k )
    header.push_back( std::to_string( k + 1 ) );
  t.row( header );
  for ( std::size_t f = 0; f < schema.size(); ++f )
  {
    std::vector<std::string> row{ schema.factor( f ).name };
    for ( const auto& c : columns )
    {
      const auto v = c.value_of( f );
      row.push_back( v ? mark( { f, *v }, schema, is_necessary( { f, *v } ) ) : "" );
    }
    t.row( row );
  }
  if ( !solution.rules.empty() )
  {
    std::vector<std::string> cons{ "consistency" }, raw{ "raw coverage" }, uniq{ "unique coverage" };
    for ( const auto& r : solution.rules )
    {
      cons.push_back( format_ratio( r.consistency ) );
      raw.push_back( format_ratio( r.coverage ) );
      uniq.push_back( format_ratio( unique_ratio( r, solution ) ) );
    }
    t.row( cons );
    t.row( raw );
    t.row( uniq );
  }
  t.print( out );
  out << "solution consistency  " << format_ratio( solution.consistency ) << '\n';
  out << "solution coverage     " << format_ratio( solution.coverage ) << '\n';
  return out.str();
}

void write_necessity( std::ostream& out, const CaseTable& table, std::span<const NecessaryCondition> conditions,
                      double threshold, Format format )
{
  const auto& schema = table.schema();
  switch ( format )
  {
  case Format::Json:
    out << Json{ { "threshold", threshold }, { "necessary", necessity_json( schema, conditions ) } }.dump( 2 ) << '\n';
    return;
  case Format::Csv:
    csv_row( out, { "factor", "level", "consistency" } );
    for ( const auto& nc : conditions )
      csv_row( out, { schema.factor( nc.literal.factor ).name, std::to_string( nc.literal.value ),
                      format_ratio( nc.consistency ) } );
    return;
  case Format::Text:
    break;
  }
  if ( conditions.empty() )
  {
    out << "no literal exceeds the necessity threshold " << threshold << '\n';
    return;
  }
  TextTable t;
  t.row( { "factor", "level", "consistency", "exact" } );
  for ( const auto& nc : conditions )
    t.row( { schema.factor( nc.literal.factor ).name, std::to_string( nc.literal.value ), format_ratio( nc.consistency ),
             exact( nc.consistency ) } );
  t.print( out );
}

void write_candidates( std::ostream& out, const CaseTable& table, const PipelineResult& result, Format format )
{
  const auto& schema = table.schema();
  switch ( format )
  {
  case Format::Json:
  {
    Json j;
    j["necessary"] = Json::array();
    for ( const auto& l : result.necessary )
      j["necessary"].push_back( literal_json( l, schema ) );
    j["warnings"] = result.warnings;
    Json list = Json::array();
    for ( const auto& c : result.candidates )
      list.push_back( { { "rule", conjunction_name( c.conjunction, schema, NameStyle::Assignment ) },
                        { "shorthand", conjunction_name( c.conjunction, schema, NameStyle::Shorthand ) },
                        { "literals", literals_json( c.conjunction, schema ) },
                        { "consistency", ratio_json( c.consistency ) },
                        { "matched", c.matched.count() },
                        { "positives_matched", c.positives_matched.count() },
                        { "ids", ids_of( c.matched, table ) } } );
    j["candidates"] = std::move( list );
    out << j.dump( 2 ) << '\n';
    return;
  }
  case Format::Csv:
    csv_row( out, { "rule", "shorthand", "consistency", "matched", "positives_matched", "ids" } );
    for ( const auto& c : result.candidates )
      csv_row( out, { conjunction_name( c.conjunction, schema, NameStyle::Assignment ),
                      conjunction_name( c.conjunction, schema, NameStyle::Shorthand ), format_ratio( c.consistency ),
                      std::to_string( c.matched.count() ), std::to_string( c.positives_matched.count() ),
                      join( ids_of( c.matched, table ), ";" ) } );
    return;
  case Format::Text:
    break;
  }
  write_warnings( out, result.warnings );
  if ( !result.necessary.empty() )
  {
    std::vector<std::string> names;
    for ( const auto& l : result.necessary )
      names.push_back( literal_name( l, schema, NameStyle::Assignment ) );
    out << "necessary: " << join( names, ", " ) << " (excluded from enumeration)\n";
  }
  out << result.candidates.size() << " candidate rules\n";
  if ( result.candidates.empty() )
    return;
  TextTable t;
  t.row( { "#", "rule", "shorthand", "consistency", "matched", "cases" } );
  for ( std::size_t k = 0; k < result.candidates.size(); ++k )
  {
    const auto& c = result.candidates[k];
    t.row( { std::to_string( k + 1 ), conjunction_name( c.conjunction, schema, NameStyle::Assignment ),
             conjunction_name( c.conjunction, schema, NameStyle::Shorthand ), format_ratio( c.consistency ),
             std::to_string( c.matched.count() ), join( ids_of( c.matched, table ), "," ) } );
  }
  t.print( out );
}

void write_solution( std::ostream& out, const CaseTable& table, const PipelineResult& result, Format format,
                     const OracleResult* oracle )
{
  const auto& schema = table.schema();
  const auto& solution = *result.solution;
  const auto positives = table.positives( solution.decision_label );
  switch ( format )
  {
  case Format::Json:
  {
    Json j;
    j["necessity"] = necessity_json( schema, result.necessity );
    j["warnings"] = result.warnings;
    j["candidate_count"] = result.candidates.size();
    j["no_admissible_cover"] = result.no_admissible_cover;
    j["solution"] = solution_json( solution, table );
    if ( oracle )
    {
      Json picks = Json::array();
      for ( const auto& s : oracle->selection )
        picks.push_back( conjunction_name( s.rule.conjunction, schema, NameStyle::Assignment ) );
      j["oracle"] = { { "configurations", std::move( picks ) },
                      { "covered_positives", oracle->covered_positives },
                      { "greedy_covered_positives", solution.covered.count_and( positives ) } };
    }
    out << j.dump( 2 ) << '\n';
    return;
  }
  case Format::Csv:
    csv_row( out, { "configuration", "rule", "shorthand", "consistency", "raw_coverage", "unique_coverage",
                    "marginal_gain", "matched" } );
    for ( std::size_t k = 0; k < solution.rules.size(); ++k )
    {
      const auto& r = solution.rules[k];
      csv_row( out, { std::to_string( k + 1 ), conjunction_name( r.conjunction, schema, NameStyle::Assignment ),
                      conjunction_name( r.conjunction, schema, NameStyle::Shorthand ), format_ratio( r.consistency ),
                      format_ratio( r.coverage ), format_ratio( unique_ratio( r, solution ) ),
                      std::to_string( r.marginal_gain ), std::to_string( r.matched.count() ) } );
    }
    csv_row( out, { "solution", solution_expression( solution, schema ), "", format_ratio( solution.consistency ),
                    format_ratio( solution.coverage ), "", "", std::to_string( solution.covered.count() ) } );
    return;
  case Format::Text:
    break;
  }
  write_warnings( out, result.warnings );
  if ( result.no_admissible_cover )
    out << "no admissible cover: no candidate adds enough uncovered positive cases\n";
  out << "solution: " << solution_expression( solution, schema ) << '\n';
  out << configuration_chart( solution, schema );
  out << "candidates            " << result.candidates.size() << '\n';
  if ( oracle )
  {
    std::vector<std::string> picks;
    for ( const auto& s : oracle->selection )
      picks.push_back( conjunction_name( s.rule.conjunction, schema, NameStyle::Shorthand ) );
    out << "oracle: " << ( picks.empty() ? "(none)" : join( picks, " + " ) ) << " covers " << oracle->covered_positives
        << " positives; greedy covers " << solution.covered.count_and( positives ) << '\n';
  }
}

void write_experiment( std::ostream& out, const std::string& pathway, std::span<const ExperimentRow> rows, Format format )
{
  const bool timing = std::any_of( rows.begin(), rows.end(), []( const ExperimentRow& r ) { return r.seconds.has_value(); } );
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> by_confounds;
  for ( const auto& r : rows )
    if ( r.consistency && r.coverage )
    {
      by_confounds[r.confounds].first.push_back( r.consistency->value() );
      by_confounds[r.confounds].second.push_back( r.coverage->value() );
    }

  switch ( format )
  {
  case Format::Json:
  {
    Json j;
    j["pathway"] = pathway;
    Json list = Json::array();
    for ( const auto& r : rows )
    {
      Json e = { { "confounds", r.confounds }, { "seed", r.seed },         { "samples", r.samples },
                 { "disagreements", r.disagreements }, { "candidates", r.candidates }, { "solution", r.solution } };
      e["consistency"] = r.consistency ? Json( r.consistency->value() ) : Json();
      e["coverage"] = r.coverage ? Json( r.coverage->value() ) : Json();
      if ( r.seconds )
        e["seconds"] = *r.seconds;
      if ( !r.error.empty() )
        e["error"] = r.error;
      list.push_back( std::move( e ) );
    }
    j["runs"] = std::move( list );
    Json medians = Json::array();
    for ( const auto& [n, v] : by_confounds )
      medians.push_back( { { "confounds", n }, { "consistency", median( v.first ) }, { "coverage", median( v.second ) } } );
    j["medians"] = std::move( medians );
    out << j.dump( 2 ) << '\n';
    return;
  }
  case Format::Csv:
  {
    std::vector<std::string> head{ "confounds", "seed", "samples", "disagreements", "candidates", "solution",
                                   "consistency", "coverage", "error" };
    if ( timing )
      head.push_back( "seconds" );
    csv_row( out, head );
    for ( const auto& r : rows )
    {
      std::vector<std::string> cells{ std::to_string( r.confounds ),
                                      std::to_string( r.seed ),
                                      std::to_string( r.samples ),
                                      std::to_string( r.disagreements ),
                                      std::to_string( r.candidates ),
                                      r.solution,
                                      r.consistency ? format_ratio( *r.consistency ) : "",
                                      r.coverage ? format_ratio( *r.coverage ) : "",
                                      r.error };
      if ( timing )
        cells.push_back( r.seconds ? fixed( *r.seconds, 3 ) : "" );
      csv_row( out, cells );
    }
    return;
  }
  case Format::Text:
    break;
  }
  out << "pathway: " << pathway << '\n';
  TextTable t;
  std::vector<std::string> head{ "confounds", "seed", "candidates", "consistency", "coverage", "solution" };
  if ( timing )
    head.push_back( "seconds" );
  t.row( head );
  for ( const auto& r : rows )
  {
    std::vector<std::string> cells{ std::to_string( r.confounds ),
                                    std::to_string( r.seed ),
                                    std::to_string( r.candidates ),
                                    r.consistency ? format_ratio( *r.consistency ) : "-",
                                    r.coverage ? format_ratio( *r.coverage ) : "-",
                                    r.error.empty() ? r.solution : "error: " + r.error };
    if ( timing )
      cells.push_back( r.seconds ? fixed( *r.seconds, 3 ) : "" );
    t.row( cells );
  }
  t.print( out );
  if ( rows.size() > by_confounds.size() )
  {
    out << '\n';
    TextTable m;
    m.row( { "confounds", "median consistency", "median coverage" } );
    for ( const auto& [n, v] : by_confounds )
      m.row( { std::to_string( n ), fixed( median( v.first ) ), fixed( median( v.second ) ) } );
    m.print( out );
  }
}

void write_sweep( std::ostream& out, const FactorSchema& schema, std::span<const SweepCell> cells, Format format )
{
  auto name = [&]( const SweepCell& c ) { return c.solution ? solution_expression( *c.solution, schema ) : std::string{}; };
  switch ( format )
  {
  case Format::Json:
  {
    Json list = Json::array();
    for ( const auto& c : cells )
    {
      Json e = { { "consistency_threshold", c.point.consistency_threshold },
                 { "cutoff", c.point.cutoff },
                 { "unique_cover", c.point.unique_cover },
                 { "candidates", c.candidate_count } };
      if ( c.failed() )
        e["error"] = c.error;
      else
      {
        e["solution"] = name( c );
        e["consistency"] = c.solution->consistency.value();
        e["coverage"] = c.solution->coverage.value();
        e["warnings"] = c.warnings;
      }
      list.push_back( std::move( e ) );
    }
    out << Json{ { "cells", std::move( list ) } }.dump( 2 ) << '\n';
    return;
  }
  case Format::Csv:
    csv_row( out, { "consistency_threshold", "cutoff", "unique_cover", "candidates", "solution", "consistency",
                    "coverage", "error" } );
    for ( const auto& c : cells )
      csv_row( out, { fixed( c.point.consistency_threshold, 3 ), std::to_string( c.point.cutoff ),
                      std::to_string( c.point.unique_cover ), std::to_string( c.candidate_count ), name( c ),
                      c.solution ? format_ratio( c.solution->consistency ) : "",
                      c.solution ? format_ratio( c.solution->coverage ) : "", c.error } );
    return;
  case Format::Text:
    break;
  }
  TextTable t;
  t.row( { "consistency", "cutoff", "unique cover", "candidates", "sol. consistency", "sol. coverage", "solution" } );
  for ( const auto& c : cells )
    t.row( { fixed( c.point.consistency_threshold, 3 ), std::to_string( c.point.cutoff ),
             std::to_string( c.point.unique_cover ), std::to_string( c.candidate_count ),
             c.solution ? format_ratio( c.solution->consistency ) : "-",
             c.solution ? format_ratio( c.solution->coverage ) : "-", c.failed() ? "error: " + c.error : name( c ) } );
  t.print( out );
}

void write_validity( std::ostream& out, const FactorSchema& schema, const ValidityReport& report, Format format )
{
  constexpr ValidityClass classes[] = { ValidityClass::Replicated, ValidityClass::Superset, ValidityClass::Subset,
                                        ValidityClass::NotIdentified };
  auto shorthand = [&]( const Conjunction& c ) { return conjunction_name( c, schema, NameStyle::Shorthand ); };
  switch ( format )
  {
  case Format::Json:
  {
    Json j;
    j["removed_per_repetition"] = report.removed_per_rep;
    Json originals = Json::array();
    for ( std::size_t k = 0; k < report.originals.size(); ++k )
    {
      Json o = { { "configuration", shorthand( report.originals[k] ) } };
      for ( auto c : classes )
        if ( c != ValidityClass::NotIdentified )
          o[std::string( to_string( c ) )] = report.per_original[k][static_cast<std::size_t>( c )];
      o["accuracy"] = report.configuration_accuracy( k );
      originals.push_back( std::move( o ) );
    }
    j["originals"] = std::move( originals );
    Json totals;
    for ( auto c : classes )
      totals[std::string( to_string( c ) )] = report.count( c );
    j["totals"] = std::move( totals );
    j["accuracy"] = report.accuracy() ? Json( *report.accuracy() ) : Json();
    Json reps = Json::array();
    for ( const auto& r : report.repetitions )
    {
      Json configs = Json::array();
      for ( std::size_t k = 0; k < r.configurations.size(); ++k )
        configs.push_back(
            { { "configuration", shorthand( r.configurations[k] ) }, { "class", to_string( r.classes[k] ) } } );
      Json e = { { "removed", r.removed_ids }, { "configurations", std::move( configs ) } };
      if ( r.degenerate )
        e["degenerate"] = r.note;
      reps.push_back( std::move( e ) );
    }
    j["repetitions"] = std::move( reps );
    out << j.dump( 2 ) << '\n';
    return;
  }
  case Format::Csv:
    csv_row( out, { "configuration", "replicated", "superset", "subset", "accuracy" } );
    for ( std::size_t k = 0; k < report.originals.size(); ++k )
      csv_row( out, { shorthand( report.originals[k] ), std::to_string( report.per_original[k][0] ),
                      std::to_string( report.per_original[k][1] ), std::to_string( report.per_original[k][2] ),
                      fixed( report.configuration_accuracy( k ), 3 ) } );
    csv_row( out, { "total", std::to_string( report.count( ValidityClass::Replicated ) ),
                    std::to_string( report.count( ValidityClass::Superset ) ),
                    std::to_string( report.count( ValidityClass::Subset ) ),
                    report.accuracy() ? fixed( *report.accuracy(), 3 ) : "" } );
    csv_row( out, { "not identified", std::to_string( report.count( ValidityClass::NotIdentified ) ), "", "", "" } );
    return;
  case Format::Text:
    break;
  }
  out << report.repetitions.size() << " repetitions, " << report.removed_per_rep << " cases removed each\n";
  TextTable t;
  t.row( { "#", "configuration", "replicated", "superset", "subset", "accuracy" } );
  for ( std::size_t k = 0; k < report.originals.size(); ++k )
    t.row( { std::to_string( k + 1 ), shorthand( report.originals[k] ), std::to_string( report.per_original[k][0] ),
             std::to_string( report.per_original[k][1] ), std::to_string( report.per_original[k][2] ),
             fixed( report.configuration_accuracy( k ), 3 ) } );
  t.row( { "", "total", std::to_string( report.count( ValidityClass::Replicated ) ),
           std::to_string( report.count( ValidityClass::Superset ) ),
           std::to_string( report.count( ValidityClass::Subset ) ),
           report.accuracy() ? fixed( *report.accuracy(), 3 ) : "-" } );
  t.print( out );
  out << "not identified: " << report.count( ValidityClass::NotIdentified ) << " of " << report.total() << '\n';
  for ( std::size_t r = 0; r < report.repetitions.size(); ++r )
    if ( report.repetitions[r].degenerate )
      out << "repetition " << r + 1 << " degenerate: " << report.repetitions[r].note << '\n';
}

} // namespace scpqca
