#include "scpqca/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace scpqca
{

namespace
{

constexpr double threshold_slack = 1e-12;

std::string upper( std::string s )
{
  for ( auto& ch : s )
    ch = static_cast<char>( std::toupper( static_cast<unsigned char>( ch ) ) );
  return s;
}

std::string lower( std::string s )
{
  for ( auto& ch : s )
    ch = static_cast<char>( std::tolower( static_cast<unsigned char>( ch ) ) );
  return s;
}

} // namespace

FactorSchema::FactorSchema( std::vector<Factor> factors, Factor outcome )
    : factors_( std::move( factors ) ), outcome_( std::move( outcome ) )
{
  std::set<std::string> seen;
  for ( const auto& f : factors_ )
  {
    if ( f.name.empty() )
      throw InputError( "factor name must not be empty" );
    if ( f.levels < 2 )
      throw InputError( "factor '" + f.name + "' needs at least 2 levels" );
    if ( !seen.insert( f.name ).second )
      throw InputError( "duplicate factor name '" + f.name + "'" );
  }
  if ( outcome_.name.empty() )
    throw InputError( "outcome name must not be empty" );
  if ( outcome_.levels < 2 )
    throw InputError( "outcome '" + outcome_.name + "' needs at least 2 levels" );
  if ( seen.count( outcome_.name ) )
    throw InputError( "outcome name '" + outcome_.name + "' clashes with a factor name" );
}

std::optional<std::size_t> FactorSchema::index_of( const std::string& name ) const
{
  for ( std::size_t i = 0; i < factors_.size(); ++i )
    if ( factors_[i].name == name )
      return i;
  return std::nullopt;
}

bool FactorSchema::single_letter_names() const
{
  return std::all_of( factors_.begin(), factors_.end(), []( const Factor& f ) {
    return f.name.size() == 1 && std::isalpha( static_cast<unsigned char>( f.name[0] ) );
  } );
}

CaseTable::CaseTable( FactorSchema schema, std::vector<Case> cases )
    : schema_( std::move( schema ) ), cases_( std::move( cases ) )
{
  std::unordered_set<std::string> ids;
  for ( std::size_t row = 0; row < cases_.size(); ++row )
  {
    const auto& c = cases_[row];
    if ( c.values.size() != schema_.size() )
      throw InputError( "case '" + c.id + "' has " + std::to_string( c.values.size() ) + " values, schema has " +
                        std::to_string( schema_.size() ) + " factors" );
    for ( std::size_t f = 0; f < c.values.size(); ++f )
      if ( c.values[f] >= schema_.factor( f ).levels )
        throw InputError( "case '" + c.id + "': value " + std::to_string( c.values[f] ) + " out of range for factor '" +
                          schema_.factor( f ).name + "'" );
    if ( c.outcome >= schema_.outcome().levels )
      throw InputError( "case '" + c.id + "': outcome " + std::to_string( c.outcome ) + " out of range" );
    if ( !ids.insert( c.id ).second )
      throw InputError( "duplicate case id '" + c.id + "'" );
  }
}

CaseSet CaseTable::positives( Level label ) const
{
  CaseSet s( cases_.size() );
  for ( std::size_t i = 0; i < cases_.size(); ++i )
    if ( cases_[i].outcome == label )
      s.insert( i );
  return s;
}

CaseTable CaseTable::subset( const std::vector<std::size_t>& indices ) const
{
  std::vector<Case> picked;
  picked.reserve( indices.size() );
  for ( auto i : indices )
    picked.push_back( cases_.at( i ) );
  return CaseTable( schema_, std::move( picked ) );
}

Conjunction::Conjunction( std::vector<Literal> literals ) : literals_( std::move( literals ) )
{
  std::sort( literals_.begin(), literals_.end() );
  for ( std::size_t k = 1; k < literals_.size(); ++k )
    if ( literals_[k].factor == literals_[k - 1].factor )
      throw InputError( "conjunction constrains factor " + std::to_string( literals_[k].factor ) + " twice" );
}

Conjunction Conjunction::with( Literal lit ) const
{
  auto lits = literals_;
  lits.push_back( lit );
  return Conjunction( std::move( lits ) );
}

std::optional<Level> Conjunction::value_of( std::size_t factor ) const
{
  auto it = std::lower_bound( literals_.begin(), literals_.end(), Literal{ factor, 0 } );
  if ( it != literals_.end() && it->factor == factor )
    return it->value;
  return std::nullopt;
}

bool Conjunction::is_subset_of( const Conjunction& other ) const
{
  return std::includes( other.literals_.begin(), other.literals_.end(), literals_.begin(), literals_.end() );
}

std::strong_ordering operator<=>( const Conjunction& a, const Conjunction& b )
{
  if ( auto c = a.literals_.size() <=> b.literals_.size(); c != 0 )
    return c;
  return std::lexicographical_compare_three_way( a.literals_.begin(), a.literals_.end(), b.literals_.begin(),
                                                 b.literals_.end() );
}

Ratio make_ratio( std::size_t num, std::size_t den, const char* what )
{
  if ( den == 0 )
    throw UndefinedRatioError( std::string( what ) + ": zero denominator" );
  return Ratio{ num, den };
}

bool at_least( const Ratio& r, double threshold )
{
  return r.value() >= threshold - threshold_slack;
}

bool exceeds( const Ratio& r, double threshold )
{
  return r.value() > threshold + threshold_slack;
}

void check_conjunction( const Conjunction& conjunction, const FactorSchema& schema )
{
  for ( const auto& lit : conjunction )
  {
    if ( lit.factor >= schema.size() )
      throw InputError( "literal refers to factor index " + std::to_string( lit.factor ) + " but schema has " +
                        std::to_string( schema.size() ) + " factors" );
    if ( lit.value >= schema.factor( lit.factor ).levels )
      throw InputError( "level " + std::to_string( lit.value ) + " out of range for factor '" +
                        schema.factor( lit.factor ).name + "'" );
  }
}

bool matches( const Conjunction& conjunction, const Case& c, const FactorSchema& schema )
{
  check_conjunction( conjunction, schema );
  if ( c.values.size() != schema.size() )
    throw InputError( "case '" + c.id + "' does not conform to the schema" );
  return std::all_of( conjunction.begin(), conjunction.end(),
                      [&]( const Literal& lit ) { return c.values[lit.factor] == lit.value; } );
}

CaseSet match_set( const Conjunction& conjunction, const CaseTable& table )
{
  check_conjunction( conjunction, table.schema() );
  CaseSet s( table.size() );
  for ( std::size_t i = 0; i < table.size(); ++i )
  {
    const auto& values = table.at( i ).values;
    if ( std::all_of( conjunction.begin(), conjunction.end(),
                      [&]( const Literal& lit ) { return values[lit.factor] == lit.value; } ) )
      s.insert( i );
  }
  return s;
}

std::vector<std::vector<CaseSet>> literal_masks( const CaseTable& table )
{
  const auto& schema = table.schema();
  std::vector<std::vector<CaseSet>> masks( schema.size() );
  for ( std::size_t f = 0; f < schema.size(); ++f )
    masks[f].assign( schema.factor( f ).levels, CaseSet( table.size() ) );
  for ( std::size_t i = 0; i < table.size(); ++i )
    for ( std::size_t f = 0; f < schema.size(); ++f )
      masks[f][table.at( i ).values[f]].insert( i );
  return masks;
}

Ratio sufficiency_consistency( const Conjunction& conjunction, const CaseTable& table, Level decision_label )
{
  auto matched = match_set( conjunction, table );
  return make_ratio( matched.count_and( table.positives( decision_label ) ), matched.count(),
                     "sufficiency consistency of a conjunction matching no case" );
}

Ratio necessity_consistency( const Literal& literal, const CaseTable& table, Level decision_label )
{
  auto positives = table.positives( decision_label );
  auto with_literal = match_set( Conjunction( { literal } ), table );
  return make_ratio( with_literal.count_and( positives ), positives.count(),
                     "necessity consistency without positive cases" );
}

SolutionMetrics solution_metrics( const CaseSet& covered, const CaseTable& table, Level decision_label )
{
  auto positives = table.positives( decision_label );
  auto hit = covered.count_and( positives );
  return { make_ratio( hit, covered.count(), "solution consistency of an empty union" ),
           make_ratio( hit, positives.count(), "solution coverage without positive cases" ) };
}

SolutionMetrics solution_metrics( std::span<const CandidateRule> rules, const CaseTable& table, Level decision_label )
{
  if ( rules.empty() )
    throw UndefinedRatioError( "solution metrics of an empty rule list" );
  CaseSet covered( table.size() );
  for ( const auto& r : rules )
    covered |= r.matched;
  return solution_metrics( covered, table, decision_label );
}

CandidateRule make_rule( const Conjunction& conjunction, const CaseTable& table, Level decision_label )
{
  CandidateRule r;
  r.conjunction = conjunction;
  r.matched = match_set( conjunction, table );
  r.positives_matched = r.matched & table.positives( decision_label );
  r.consistency = make_ratio( r.positives_matched.count(), r.matched.count(),
                              "sufficiency consistency of a conjunction matching no case" );
  return r;
}

std::string literal_name( const Literal& literal, const FactorSchema& schema, NameStyle style )
{
  const auto& f = schema.factor( literal.factor );
  if ( style == NameStyle::Assignment )
    return f.name + "=" + std::to_string( literal.value );
  if ( f.levels == 2 )
    return literal.value == 1 ? upper( f.name ) : lower( f.name );
  return f.name + std::to_string( literal.value );
}

std::string conjunction_name( const Conjunction& conjunction, const FactorSchema& schema, NameStyle style )
{
  const bool juxtapose = style == NameStyle::Compact && schema.single_letter_names() &&
                         std::all_of( conjunction.begin(), conjunction.end(), [&]( const Literal& l ) {
                           return schema.factor( l.factor ).levels == 2;
                         } );
  std::string out;
  for ( const auto& lit : conjunction )
  {
    if ( !out.empty() && !juxtapose )
      out += '*';
    out += literal_name( lit, schema, style == NameStyle::Assignment ? style : NameStyle::Shorthand );
  }
  return out;
}

} // namespace scpqca
