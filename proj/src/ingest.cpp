#include "scpqca/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace scpqca
{

namespace
{

struct Row
{
  std::size_t line = 0;
  std::vector<std::string> cells;
};

std::string trim( const std::string& s )
{
  auto b = s.find_first_not_of( " \t\r" );
  if ( b == std::string::npos )
    return {};
  auto e = s.find_last_not_of( " \t\r" );
  return s.substr( b, e - b + 1 );
}

// RFC 4180-style splitting; quoted fields may contain commas and doubled quotes, not newlines.
std::vector<std::string> split_csv_line( const std::string& line, const std::string& where )
{
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false, was_quoted = false;
  for ( std::size_t i = 0; i < line.size(); ++i )
  {
    char ch = line[i];
    if ( quoted )
    {
      if ( ch == '"' )
      {
        if ( i + 1 < line.size() && line[i + 1] == '"' )
        {
          cell += '"';
          ++i;
        }
        else
          quoted = false;
      }
      else
        cell += ch;
    }
    else if ( ch == '"' && trim( cell ).empty() )
    {
      cell.clear();
      quoted = was_quoted = true;
    }
    else if ( ch == ',' )
    {
      out.push_back( was_quoted ? cell : trim( cell ) );
      cell.clear();
      was_quoted = false;
    }
    else if ( !was_quoted )
      cell += ch;
  }
  if ( quoted )
    throw InputError( where + ": unterminated quoted field" );
  out.push_back( was_quoted ? cell : trim( cell ) );
  return out;
}

std::optional<long long> as_integer( const std::string& s )
{
  long long v = 0;
  auto [p, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( ec != std::errc() || p != s.data() + s.size() )
    return std::nullopt;
  return v;
}

std::optional<double> as_number( const std::string& s )
{
  if ( s.empty() )
    return std::nullopt;
  try
  {
    std::size_t used = 0;
    double v = std::stod( s, &used );
    if ( used != s.size() || !std::isfinite( v ) )
      return std::nullopt;
    return v;
  }
  catch ( const std::exception& )
  {
    return std::nullopt;
  }
}

std::string location( const std::string& source, std::size_t line, const std::string& column )
{
  return source + ":" + std::to_string( line ) + " column '" + column + "'";
}

// Converts one raw column into levels and fills in the factor description.
std::vector<Level> calibrate_column( const std::vector<Row>& rows, std::size_t col, const std::string& name,
                                     const ColumnCalibration& cal, const std::string& source, Factor& factor )
{
  std::vector<Level> levels( rows.size() );
  factor.name = name;
  factor.labels.clear();

  if ( cal.kind == ColumnCalibration::Kind::Cutpoints )
  {
    for ( std::size_t r = 0; r < rows.size(); ++r )
    {
      auto v = as_number( rows[r].cells[col] );
      if ( !v )
        throw InputError( location( source, rows[r].line, name ) + ": non-numeric cell '" + rows[r].cells[col] +
                          "' under cutpoint calibration" );
      levels[r] = calibrate( *v, cal.cutpoints );
    }
    factor.levels = static_cast<Level>( cal.cutpoints.size() + 1 );
    return levels;
  }

  bool all_integer = std::all_of( rows.begin(), rows.end(), [&]( const Row& row ) {
    auto v = as_integer( row.cells[col] );
    return v && *v >= 0;
  } );

  if ( all_integer )
  {
    Level top = 0;
    for ( std::size_t r = 0; r < rows.size(); ++r )
    {
      auto v = *as_integer( rows[r].cells[col] );
      if ( cal.declared_levels && v >= static_cast<long long>( *cal.declared_levels ) )
        throw InputError( location( source, rows[r].line, name ) + ": value " + std::to_string( v ) +
                          " outside the declared " + std::to_string( *cal.declared_levels ) + " levels" );
      if ( v > static_cast<long long>( 1u << 20 ) )
        throw InputError( location( source, rows[r].line, name ) + ": level " + std::to_string( v ) +
                          " is implausibly large" );
      levels[r] = static_cast<Level>( v );
      top = std::max( top, levels[r] );
    }
    factor.levels = std::max<Level>( { 2u, top + 1, cal.declared_levels.value_or( 0 ) } );
    for ( Level l = 0; l < factor.levels; ++l )
      factor.labels.push_back( std::to_string( l ) );
    return levels;
  }

  std::set<std::string> distinct;
  for ( const auto& row : rows )
    distinct.insert( row.cells[col] );
  if ( cal.declared_levels && distinct.size() > *cal.declared_levels )
    throw InputError( source + " column '" + name + "': " + std::to_string( distinct.size() ) +
                      " distinct labels exceed the declared " + std::to_string( *cal.declared_levels ) + " levels" );
  factor.labels.assign( distinct.begin(), distinct.end() );
  for ( std::size_t r = 0; r < rows.size(); ++r )
    levels[r] = static_cast<Level>(
        std::distance( factor.labels.begin(),
                       std::lower_bound( factor.labels.begin(), factor.labels.end(), rows[r].cells[col] ) ) );
  factor.levels = std::max<Level>( { 2u, static_cast<Level>( distinct.size() ), cal.declared_levels.value_or( 0 ) } );
  return levels;
}

} // namespace

ColumnCalibration ColumnCalibration::passthrough( std::optional<Level> levels )
{
  if ( levels && *levels < 2 )
    throw InputError( "a passthrough column needs at least 2 levels" );
  ColumnCalibration c;
  c.declared_levels = levels;
  return c;
}

ColumnCalibration ColumnCalibration::with_cutpoints( std::vector<double> thresholds )
{
  if ( thresholds.empty() )
    throw InputError( "cutpoint calibration needs at least one threshold" );
  for ( std::size_t i = 0; i < thresholds.size(); ++i )
  {
    if ( !std::isfinite( thresholds[i] ) )
      throw InputError( "cutpoints must be finite" );
    if ( i > 0 && !( thresholds[i - 1] < thresholds[i] ) )
      throw InputError( "cutpoints must be strictly increasing" );
  }
  ColumnCalibration c;
  c.kind = Kind::Cutpoints;
  c.cutpoints = std::move( thresholds );
  return c;
}

Level calibrate( double x, std::span<const double> cutpoints )
{
  return static_cast<Level>( std::upper_bound( cutpoints.begin(), cutpoints.end(), x ) - cutpoints.begin() );
}

CaseTable read_csv( std::istream& in, const LoadOptions& options, const std::string& source )
{
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( line_no == 1 && line.size() >= 3 && line.compare( 0, 3, "\xEF\xBB\xBF" ) == 0 )
      line.erase( 0, 3 );
    if ( trim( line ).empty() )
      continue;
    header = split_csv_line( line, source + ":" + std::to_string( line_no ) );
    break;
  }
  if ( header.empty() )
    throw InputError( source + ": missing header row" );

  std::vector<Row> rows;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( trim( line ).empty() )
      continue;
    auto where = source + ":" + std::to_string( line_no );
    auto cells = split_csv_line( line, where );
    if ( cells.size() != header.size() )
      throw InputError( where + ": expected " + std::to_string( header.size() ) + " cells, found " +
                        std::to_string( cells.size() ) );
    rows.push_back( { line_no, std::move( cells ) } );
  }

  auto find_column = [&]( const std::string& name ) -> std::optional<std::size_t> {
    for ( std::size_t c = 0; c < header.size(); ++c )
      if ( header[c] == name )
        return c;
    return std::nullopt;
  };

  std::optional<std::size_t> id_col;
  for ( std::size_t c = 0; c < header.size(); ++c )
  {
    std::string h = header[c];
    std::transform( h.begin(), h.end(), h.begin(), []( unsigned char ch ) { return std::tolower( ch ); } );
    if ( h == "id" )
    {
      id_col = c;
      break;
    }
  }
  if ( !id_col && header[0].empty() )
    id_col = 0;

  auto outcome_col = find_column( options.outcome_column );
  if ( !outcome_col )
    throw InputError( source + ": outcome column '" + options.outcome_column + "' not found" );
  if ( id_col && *id_col == *outcome_col )
    throw InputError( source + ": outcome column '" + options.outcome_column + "' is the id column" );

  std::vector<std::size_t> factor_cols;
  if ( options.factor_columns.empty() )
  {
    for ( std::size_t c = 0; c < header.size(); ++c )
      if ( c != *outcome_col && ( !id_col || c != *id_col ) )
        factor_cols.push_back( c );
  }
  else
  {
    for ( const auto& name : options.factor_columns )
    {
      auto c = find_column( name );
      if ( !c )
        throw InputError( source + ": factor column '" + name + "' not found" );
      if ( *c == *outcome_col || ( id_col && *c == *id_col ) )
        throw InputError( source + ": column '" + name + "' cannot be a factor" );
      factor_cols.push_back( *c );
    }
  }
  for ( const auto& [name, cal] : options.calibration )
    if ( !find_column( name ) )
      throw InputError( source + ": calibrated column '" + name + "' not found" );

  auto calibration_for = [&]( const std::string& name ) {
    auto it = options.calibration.find( name );
    return it == options.calibration.end() ? ColumnCalibration{} : it->second;
  };

  std::vector<Factor> factors( factor_cols.size() );
  std::vector<std::vector<Level>> columns;
  for ( std::size_t k = 0; k < factor_cols.size(); ++k )
  {
    const auto& name = header[factor_cols[k]];
    if ( name.empty() )
      throw InputError( source + ": factor column " + std::to_string( factor_cols[k] + 1 ) + " has an empty header" );
    columns.push_back( calibrate_column( rows, factor_cols[k], name, calibration_for( name ), source, factors[k] ) );
  }
  Factor outcome;
  auto outcome_levels = calibrate_column( rows, *outcome_col, header[*outcome_col],
                                          calibration_for( header[*outcome_col] ), source, outcome );

  std::vector<Case> cases( rows.size() );
  std::unordered_set<std::string> ids;
  for ( std::size_t r = 0; r < rows.size(); ++r )
  {
    auto& c = cases[r];
    c.id = id_col ? rows[r].cells[*id_col] : std::to_string( r + 1 );
    if ( c.id.empty() )
      throw InputError( location( source, rows[r].line, id_col ? header[*id_col] : "id" ) + ": empty case id" );
    if ( !ids.insert( c.id ).second )
      throw InputError( location( source, rows[r].line, id_col ? header[*id_col] : "id" ) + ": duplicate case id '" +
                        c.id + "'" );
    c.values.resize( factors.size() );
    for ( std::size_t k = 0; k < factors.size(); ++k )
      c.values[k] = columns[k][r];
    c.outcome = outcome_levels[r];
  }

  return CaseTable( FactorSchema( std::move( factors ), std::move( outcome ) ), std::move( cases ) );
}

CaseTable load_csv( const std::filesystem::path& path, const LoadOptions& options )
{
  std::ifstream in( path );
  if ( !in )
    throw InputError( "cannot open '" + path.string() + "'" );
  return read_csv( in, options, path.string() );
}

void write_csv( const CaseTable& table, std::ostream& out )
{
  auto quote = []( const std::string& s ) {
    if ( s.find_first_of( ",\"\n" ) == std::string::npos && trim( s ) == s )
      return s;
    std::string q = "\"";
    for ( char ch : s )
    {
      if ( ch == '"' )
        q += '"';
      q += ch;
    }
    return q + "\"";
  };
  const auto& schema = table.schema();
  out << "id";
  for ( const auto& f : schema.factors() )
    out << ',' << quote( f.name );
  out << ',' << quote( schema.outcome().name ) << '\n';
  for ( const auto& c : table.cases() )
  {
    out << quote( c.id );
    for ( auto v : c.values )
      out << ',' << v;
    out << ',' << c.outcome << '\n';
  }
}

DeduplicateResult deduplicate( const CaseTable& table )
{
  std::set<std::pair<std::vector<Level>, Level>> seen;
  std::vector<std::size_t> keep;
  for ( std::size_t i = 0; i < table.size(); ++i )
    if ( seen.emplace( table.at( i ).values, table.at( i ).outcome ).second )
      keep.push_back( i );
  return { table.subset( keep ), table.size() - keep.size() };
}

std::string schema_json( const FactorSchema& schema )
{
  auto describe = []( const Factor& f ) {
    nlohmann::ordered_json j;
    j["name"] = f.name;
    j["levels"] = f.levels;
    auto labels = nlohmann::ordered_json::array();
    for ( std::size_t l = 0; l < f.labels.size(); ++l )
      labels.push_back( { { "level", l }, { "label", f.labels[l] } } );
    j["labels"] = labels;
    return j;
  };
  nlohmann::ordered_json j;
  j["factors"] = nlohmann::ordered_json::array();
  for ( const auto& f : schema.factors() )
    j["factors"].push_back( describe( f ) );
  j["outcome"] = describe( schema.outcome() );
  return j.dump( 2 ) + "\n";
}

} // namespace scpqca
