#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "case_set.hpp"
#include "errors.hpp"

namespace scpqca
{

using Level = std::uint32_t;

__extension__ using Wide = unsigned __int128;

/// A condition factor (or the outcome) with its number of admissible levels.
/// `labels[i]`, when present, is the raw value that was mapped to level `i` at ingestion.
struct Factor
{
  std::string name;
  Level levels = 2;
  std::vector<std::string> labels;

  friend bool operator==( const Factor&, const Factor& ) = default;
};

class FactorSchema
{
public:
  FactorSchema() = default;
  /// Throws InputError on empty/duplicate names, fewer than two levels, or an outcome name clash.
  FactorSchema( std::vector<Factor> factors, Factor outcome );

  std::size_t size() const noexcept { return factors_.size(); }
  const Factor& factor( std::size_t i ) const { return factors_.at( i ); }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  const Factor& outcome() const noexcept { return outcome_; }
  std::optional<std::size_t> index_of( const std::string& name ) const;

  /// True when every factor has a single-letter name (enables the `ab+CD` shorthand).
  bool single_letter_names() const;

  friend bool operator==( const FactorSchema&, const FactorSchema& ) = default;

private:
  std::vector<Factor> factors_;
  Factor outcome_;
};

struct Case
{
  std::string id;
  std::vector<Level> values;
  Level outcome = 0;

  friend bool operator==( const Case&, const Case& ) = default;
};

/// Calibrated dataset. Immutable after construction; all cases are validated against the schema.
class CaseTable
{
public:
  CaseTable() = default;
  /// Throws InputError when a case does not conform to the schema or ids repeat.
  CaseTable( FactorSchema schema, std::vector<Case> cases );

  const FactorSchema& schema() const noexcept { return schema_; }
  const std::vector<Case>& cases() const noexcept { return cases_; }
  const Case& at( std::size_t i ) const { return cases_.at( i ); }
  std::size_t size() const noexcept { return cases_.size(); }

  /// Cases whose outcome equals `label`.
  CaseSet positives( Level label ) const;
  CaseSet all() const { return CaseSet( cases_.size(), true ); }

  /// Table restricted to the given case indices (ids and order preserved).
  CaseTable subset( const std::vector<std::size_t>& indices ) const;

  friend bool operator==( const CaseTable&, const CaseTable& ) = default;

private:
  FactorSchema schema_;
  std::vector<Case> cases_;
};

struct Literal
{
  std::size_t factor = 0;
  Level value = 0;

  friend auto operator<=>( const Literal&, const Literal& ) = default;
};

/// Partial assignment: at most one literal per factor, kept sorted by factor index.
/// An absent factor is a don't-care.
class Conjunction
{
public:
  Conjunction() = default;
  /// Throws InputError if two literals share a factor.
  Conjunction( std::vector<Literal> literals );

  /// Returns a copy extended by `lit`; throws InputError if the factor is already constrained.
  Conjunction with( Literal lit ) const;

  const std::vector<Literal>& literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  bool empty() const noexcept { return literals_.empty(); }
  auto begin() const noexcept { return literals_.begin(); }
  auto end() const noexcept { return literals_.end(); }

  std::optional<Level> value_of( std::size_t factor ) const;
  bool constrains( std::size_t factor ) const { return value_of( factor ).has_value(); }

  /// Literal-set inclusion (fewer constraints => matches a superset of cases).
  bool is_subset_of( const Conjunction& other ) const;

  /// Deterministic order used for candidate output: literal count, then lexicographic literals.
  friend std::strong_ordering operator<=>( const Conjunction& a, const Conjunction& b );
  friend bool operator==( const Conjunction&, const Conjunction& ) = default;

private:
  std::vector<Literal> literals_;
};

/// Exact nonnegative fraction; used for every consistency/coverage value so comparisons never tie on rounding.
struct Ratio
{
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept { return static_cast<double>( num ) / static_cast<double>( den ); }

  friend std::strong_ordering operator<=>( const Ratio& a, const Ratio& b )
  {
    auto l = static_cast<Wide>( a.num ) * b.den;
    auto r = static_cast<Wide>( b.num ) * a.den;
    return l <=> r;
  }
  friend bool operator==( const Ratio& a, const Ratio& b ) { return ( a <=> b ) == 0; }
};

/// Throws UndefinedRatioError (with `what`) when den == 0.
Ratio make_ratio( std::size_t num, std::size_t den, const char* what );

/// `r >= threshold` / `r > threshold` with a 1e-12 slack, so that 4/5 >= 0.8 holds as written.
bool at_least( const Ratio& r, double threshold );
bool exceeds( const Ratio& r, double threshold );

struct CandidateRule
{
  Conjunction conjunction;
  CaseSet matched;
  CaseSet positives_matched;
  Ratio consistency;
};

/// One configuration of a solution; `conjunction` already includes the necessary literals.
struct SolutionRule
{
  Conjunction conjunction;
  CaseSet matched;
  CaseSet positives_matched;
  Ratio consistency;
  Ratio coverage;                   ///< positives matched / all positives
  std::size_t unique_coverage = 0;  ///< positives covered by this rule and no other selected rule
  std::size_t marginal_gain = 0;    ///< uncovered positives it added when picked
};

struct Solution
{
  std::vector<Literal> necessary;
  std::vector<SolutionRule> rules;  ///< selection order
  Level decision_label = 1;
  Ratio consistency;
  Ratio coverage;
  CaseSet covered;
  std::size_t positives_total = 0;
};

struct SolutionMetrics
{
  Ratio consistency;
  Ratio coverage;
};

// --- matching and metrics -------------------------------------------------------------------

/// Throws InputError if a literal refers to a factor or level outside the schema.
void check_conjunction( const Conjunction& conjunction, const FactorSchema& schema );

bool matches( const Conjunction& conjunction, const Case& c, const FactorSchema& schema );

/// Indices of cases matching the conjunction.
CaseSet match_set( const Conjunction& conjunction, const CaseTable& table );

/// Per (factor, level) membership masks, indexed `[factor][level]`.
std::vector<std::vector<CaseSet>> literal_masks( const CaseTable& table );

/// |matched & positives| / |matched|; throws UndefinedRatioError when nothing matches.
Ratio sufficiency_consistency( const Conjunction& conjunction, const CaseTable& table, Level decision_label );

/// |cases with literal and outcome| / |positives|; throws UndefinedRatioError when there are no positives.
Ratio necessity_consistency( const Literal& literal, const CaseTable& table, Level decision_label );

/// Union semantics: U = union of matched sets, P = positives; (|U&P|/|U|, |U&P|/|P|).
SolutionMetrics solution_metrics( std::span<const CandidateRule> rules, const CaseTable& table, Level decision_label );
SolutionMetrics solution_metrics( const CaseSet& covered, const CaseTable& table, Level decision_label );

/// Builds a CandidateRule for `conjunction` over the whole table.
CandidateRule make_rule( const Conjunction& conjunction, const CaseTable& table, Level decision_label );

// --- naming ---------------------------------------------------------------------------------

enum class NameStyle
{
  Assignment,  ///< `MS=0*PI=1`
  Shorthand,   ///< `ms*PI` for binary factors, `C2` for multi-value
  Compact,     ///< juxtaposition (`abC`) when every name is one letter, else Shorthand
};

std::string literal_name( const Literal& literal, const FactorSchema& schema, NameStyle style );
std::string conjunction_name( const Conjunction& conjunction, const FactorSchema& schema, NameStyle style );

} // namespace scpqca
