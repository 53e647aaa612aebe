#include "scpqca/pathways.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <limits>
#include <numeric>
#include <optional>

#include "scpqca/random.hpp"

namespace scpqca
{

namespace
{

bool is_alpha( char ch ) { return std::isalpha( static_cast<unsigned char>( ch ) ) != 0; }
bool is_digit( char ch ) { return std::isdigit( static_cast<unsigned char>( ch ) ) != 0; }
bool is_ident( char ch ) { return std::isalnum( static_cast<unsigned char>( ch ) ) != 0 || ch == '_'; }

class PathwayParser
{
public:
  PathwayParser( std::string_view text, const FactorSchema& schema )
      : schema_( schema ), single_letter_( schema.single_letter_names() )
  {
    for ( std::size_t i = 0; i < text.size(); ++i )
      if ( !std::isspace( static_cast<unsigned char>( text[i] ) ) )
      {
        chars_.push_back( text[i] );
        offsets_.push_back( i );
      }
    end_offset_ = text.size();
  }

  std::vector<Conjunction> parse()
  {
    if ( chars_.empty() )
      throw ParseError( 0, "empty pathway" );
    std::vector<Conjunction> terms;
    terms.push_back( term() );
    while ( pos_ < chars_.size() )
    {
      if ( chars_[pos_] != '+' )
        fail( "expected '+' or end of expression" );
      ++pos_;
      terms.push_back( term() );
    }
    return terms;
  }

private:
  [[noreturn]] void fail( const std::string& message ) const
  {
    throw ParseError( pos_ < offsets_.size() ? offsets_[pos_] : end_offset_, message );
  }

  Conjunction term()
  {
    if ( pos_ >= chars_.size() || chars_[pos_] == '+' || chars_[pos_] == '*' )
      fail( pos_ >= chars_.size() ? "dangling operator: expected a literal" : "empty term" );
    std::vector<Literal> literals;
    std::vector<std::size_t> starts;
    while ( true )
    {
      starts.push_back( pos_ );
      literals.push_back( atom() );
      if ( pos_ >= chars_.size() || chars_[pos_] == '+' )
        break;
      if ( chars_[pos_] == '*' )
      {
        ++pos_;
        if ( pos_ >= chars_.size() || chars_[pos_] == '+' || chars_[pos_] == '*' )
          fail( "dangling '*': expected a literal" );
        continue;
      }
      if ( !single_letter_ )
        fail( "expected '*' between literals" );
    }
    for ( std::size_t k = 0; k < literals.size(); ++k )
      for ( std::size_t j = 0; j < k; ++j )
        if ( literals[j].factor == literals[k].factor )
        {
          pos_ = starts[k];
          fail( "factor '" + schema_.factor( literals[k].factor ).name + "' appears twice in one term" );
        }
    return Conjunction( std::move( literals ) );
  }

  std::optional<Level> level_suffix()
  {
    const auto save = pos_;
    if ( pos_ < chars_.size() && chars_[pos_] == '=' )
      ++pos_;
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while ( pos_ < chars_.size() && is_digit( chars_[pos_] ) )
    {
      value = value * 10 + static_cast<std::uint64_t>( chars_[pos_] - '0' );
      if ( value > std::numeric_limits<Level>::max() )
        fail( "level too large" );
      ++pos_;
    }
    if ( pos_ == start )
    {
      if ( save != pos_ )
        fail( "expected a level after '='" );
      return std::nullopt;
    }
    return static_cast<Level>( value );
  }

  Literal checked( std::size_t factor, Level level, std::size_t at )
  {
    if ( level >= schema_.factor( factor ).levels )
    {
      pos_ = at;
      fail( "level " + std::to_string( level ) + " out of range for factor '" + schema_.factor( factor ).name + "'" );
    }
    return { factor, level };
  }

  Literal atom()
  {
    const auto start = pos_;
    if ( pos_ >= chars_.size() || !( is_alpha( chars_[pos_] ) || chars_[pos_] == '_' ) )
      fail( "expected a factor name" );
    if ( single_letter_ )
    {
      const char letter = chars_[pos_++];
      std::optional<std::size_t> factor;
      for ( std::size_t f = 0; f < schema_.size(); ++f )
        if ( std::tolower( static_cast<unsigned char>( schema_.factor( f ).name[0] ) ) ==
             std::tolower( static_cast<unsigned char>( letter ) ) )
        {
          if ( factor )
          {
            pos_ = start;
            fail( std::string( "letter '" ) + letter + "' matches more than one factor" );
          }
          factor = f;
        }
      if ( !factor )
      {
        pos_ = start;
        fail( std::string( "unknown factor '" ) + letter + "'" );
      }
      if ( auto level = level_suffix() )
        return checked( *factor, *level, start );
      if ( schema_.factor( *factor ).levels != 2 )
      {
        pos_ = start;
        fail( "Boolean shorthand needs a binary factor; write '" + schema_.factor( *factor ).name + "<level>'" );
      }
      return { *factor, std::isupper( static_cast<unsigned char>( letter ) ) ? Level{ 1 } : Level{ 0 } };
    }

    std::size_t end = pos_;
    while ( end < chars_.size() && is_ident( chars_[end] ) )
      ++end;
    const std::string ident( chars_.begin() + static_cast<std::ptrdiff_t>( pos_ ),
                             chars_.begin() + static_cast<std::ptrdiff_t>( end ) );
    if ( end < chars_.size() && chars_[end] == '=' )
    {
      auto factor = schema_.index_of( ident );
      if ( !factor )
        fail( "unknown factor '" + ident + "'" );
      pos_ = end;
      return checked( *factor, *level_suffix(), start );
    }
    // Longest factor-name prefix followed only by digits.
    for ( std::size_t len = ident.size(); len > 0; --len )
    {
      const auto rest = ident.substr( len );
      if ( rest.empty() || !std::all_of( rest.begin(), rest.end(), is_digit ) )
        continue;
      if ( auto factor = schema_.index_of( ident.substr( 0, len ) ) )
      {
        pos_ += len;
        return checked( *factor, *level_suffix(), start );
      }
    }
    if ( schema_.index_of( ident ) )
      fail( "literal '" + ident + "' needs a level (Boolean shorthand requires single-letter factor names)" );
    fail( "unknown factor in '" + ident + "'" );
  }

  const FactorSchema& schema_;
  bool single_letter_;
  std::vector<char> chars_;
  std::vector<std::size_t> offsets_;
  std::size_t end_offset_ = 0;
  std::size_t pos_ = 0;
};

Case make_case( std::string id, std::vector<Level> values, Level outcome )
{
  return Case{ std::move( id ), std::move( values ), outcome };
}

} // namespace

PathwaySpec parse_pathway( std::string_view text, const FactorSchema& schema )
{
  PathwayParser parser( text, schema );
  return PathwaySpec{ parser.parse(), schema };
}

std::string pathway_name( const PathwaySpec& pathway, NameStyle style )
{
  std::string out;
  for ( const auto& t : pathway.terms )
  {
    if ( !out.empty() )
      out += '+';
    out += conjunction_name( t, pathway.schema, style );
  }
  return out;
}

bool evaluate( const PathwaySpec& pathway, std::span<const Level> values )
{
  return std::any_of( pathway.terms.begin(), pathway.terms.end(), [&]( const Conjunction& t ) {
    return std::all_of( t.begin(), t.end(), [&]( const Literal& l ) { return values[l.factor] == l.value; } );
  } );
}

std::uint64_t truth_table_size( const FactorSchema& schema )
{
  std::uint64_t n = 1;
  for ( const auto& f : schema.factors() )
  {
    if ( n > std::numeric_limits<std::uint64_t>::max() / f.levels )
      return std::numeric_limits<std::uint64_t>::max();
    n *= f.levels;
  }
  return n;
}

std::vector<Level> truth_table_row( const FactorSchema& schema, std::uint64_t index )
{
  std::vector<Level> values( schema.size() );
  for ( std::size_t f = schema.size(); f-- > 0; )
  {
    const auto levels = schema.factor( f ).levels;
    values[f] = static_cast<Level>( index % levels );
    index /= levels;
  }
  return values;
}

CaseTable full_truth_table( const FactorSchema& schema, std::uint64_t bound )
{
  const auto rows = truth_table_size( schema );
  if ( rows > bound )
    throw InputError( "full truth table would have " + std::to_string( rows ) + " rows, above the bound of " +
                      std::to_string( bound ) );
  std::vector<Case> cases;
  cases.reserve( rows );
  for ( std::uint64_t r = 0; r < rows; ++r )
    cases.push_back( make_case( "r" + std::to_string( r ), truth_table_row( schema, r ), 0 ) );
  return CaseTable( schema, std::move( cases ) );
}

CaseTable plant_outcome( const CaseTable& skeleton, const PathwaySpec& pathway )
{
  if ( !( skeleton.schema().factors() == pathway.schema.factors() ) )
    throw InputError( "pathway and table use different factor schemas" );
  auto cases = skeleton.cases();
  for ( auto& c : cases )
    c.outcome = evaluate( pathway, c.values ) ? 1 : 0;
  return CaseTable( skeleton.schema(), std::move( cases ) );
}

void ExperimentSpec::validate() const
{
  if ( confound_count > sample_size )
    throw InputError( "confound count exceeds the sample size" );
  if ( pathway.terms.empty() )
    throw InputError( "experiment needs a pathway with at least one term" );
  if ( !( pathway.schema.factors() == schema.factors() ) )
    throw InputError( "pathway and experiment use different factor schemas" );
  for ( const auto& t : pathway.terms )
  {
    if ( t.empty() )
      throw InputError( "pathway term must not be empty" );
    check_conjunction( t, schema );
  }
}

namespace
{

// Shared by both sampling paths so they consume the stream identically.
template<typename RowAt>
CaseTable sample_with( const FactorSchema& schema, std::uint64_t population, RowAt&& row_at, const ExperimentSpec& spec )
{
  spec.validate();
  if ( population == 0 && spec.sample_size > 0 )
    throw InputError( "cannot sample from an empty table" );
  Xoshiro256StarStar rng( spec.seed );
  std::vector<Case> cases;
  cases.reserve( spec.sample_size );
  for ( std::size_t k = 0; k < spec.sample_size; ++k )
  {
    auto c = row_at( rng.below( population ) );
    c.id = "s" + std::to_string( k );
    cases.push_back( std::move( c ) );
  }

  std::vector<std::size_t> order( spec.sample_size );
  std::iota( order.begin(), order.end(), 0 );
  const Level outcome_levels = schema.outcome().levels;
  for ( std::size_t k = 0; k < spec.confound_count; ++k )
  {
    const auto j = k + static_cast<std::size_t>( rng.below( spec.sample_size - k ) );
    std::swap( order[k], order[j] );
    auto& outcome = cases[order[k]].outcome;
    auto replacement = static_cast<Level>( rng.below( outcome_levels - 1 ) );
    outcome = replacement >= outcome ? replacement + 1 : replacement;
  }
  return CaseTable( schema, std::move( cases ) );
}

} // namespace

CaseTable sample_and_confound( const CaseTable& table, const ExperimentSpec& spec )
{
  return sample_with( table.schema(), table.size(), [&]( std::uint64_t i ) { return table.at( i ); }, spec );
}

CaseTable sample_planted( const ExperimentSpec& spec )
{
  const auto population = truth_table_size( spec.schema );
  if ( population == std::numeric_limits<std::uint64_t>::max() )
    throw InputError( "truth table too large to index" );
  return sample_with(
      spec.schema, population,
      [&]( std::uint64_t i ) {
        auto values = truth_table_row( spec.schema, i );
        const Level outcome = evaluate( spec.pathway, values ) ? 1 : 0;
        return make_case( "r" + std::to_string( i ), std::move( values ), outcome );
      },
      spec );
}

FactorSchema synthetic_schema( std::size_t factors, std::span<const Level> levels )
{
  if ( factors == 0 )
    throw InputError( "synthetic data needs at least one factor" );
  if ( levels.size() != 1 && levels.size() != factors )
    throw InputError( "give one level count for all factors or one per factor" );
  std::vector<Factor> fs;
  for ( std::size_t f = 0; f < factors; ++f )
  {
    Factor factor;
    factor.name = factors <= 26 ? std::string( 1, static_cast<char>( 'A' + f ) ) : "F" + std::to_string( f + 1 );
    factor.levels = levels.size() == 1 ? levels[0] : levels[f];
    fs.push_back( std::move( factor ) );
  }
  return FactorSchema( std::move( fs ), Factor{ "OUTCOME", 2, {} } );
}

ExperimentReport run_experiment( const ExperimentSpec& spec, const PipelineParams& params )
{
  const auto started = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.data = sample_planted( spec );
  for ( const auto& c : report.data.cases() )
    if ( c.outcome != ( evaluate( spec.pathway, c.values ) ? 1u : 0u ) )
      ++report.disagreements;
  report.result = run_pipeline( report.data, params );
  report.seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - started ).count();
  return report;
}

} // namespace scpqca
