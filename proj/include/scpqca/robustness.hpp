#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "pipeline.hpp"

namespace scpqca
{

enum class ValidityClass
{
  Replicated,     ///< same literal set as an original configuration
  Superset,       ///< drops literals of an original (matches more cases)
  Subset,         ///< adds literals to an original (matches fewer cases)
  NotIdentified,  ///< no equality or containment relation to any original
};

inline constexpr std::size_t validity_class_count = 4;

std::string_view to_string( ValidityClass c );

/// Compares literal sets; when several originals relate differently the
/// precedence is Replicated > Superset > Subset.
ValidityClass classify_configuration( const Conjunction& test, std::span<const Conjunction> originals );

/// Configurations of a solution as literal sets (necessary literals included); a solution without
/// rules contributes its necessary conjunction.
std::vector<Conjunction> configurations( const Solution& solution );

struct SweepPoint
{
  double consistency_threshold = 0.8;
  std::size_t cutoff = 2;
  std::size_t unique_cover = 2;
};

struct SweepCell
{
  SweepPoint point;
  std::optional<Solution> solution;
  std::size_t candidate_count = 0;
  std::vector<std::string> warnings;
  std::string error;  ///< non-empty when the run failed

  bool failed() const noexcept { return !error.empty(); }
};

/// One pipeline run per grid point on top of `base`; a failing cell records its error and the
/// sweep continues.
std::vector<SweepCell> internal_sweep( const CaseTable& table, std::span<const SweepPoint> grid,
                                       const PipelineParams& base );

/// Parses `cons:cutoff:uc` triples separated by commas, e.g. `0.8:2:2,0.75:2:2`.
std::vector<SweepPoint> parse_sweep_grid( std::string_view text );

struct ValidityParams
{
  double fraction = 0.10;
  std::size_t reps = 10;
  std::uint64_t seed = 0;
};

struct Repetition
{
  std::vector<std::string> removed_ids;
  std::vector<Conjunction> configurations;
  std::vector<ValidityClass> classes;  ///< parallel to `configurations`
  bool degenerate = false;             ///< the pipeline could not run; counted as one NotIdentified
  std::string note;
};

struct ValidityReport
{
  std::vector<Conjunction> originals;
  std::size_t removed_per_rep = 0;
  std::vector<Repetition> repetitions;
  /// `per_original[k][c]`: test configurations of class `c` attributed to original `k`.
  std::vector<std::array<std::size_t, validity_class_count>> per_original;
  std::array<std::size_t, validity_class_count> totals{};

  std::size_t total() const noexcept;
  std::size_t count( ValidityClass c ) const noexcept { return totals[static_cast<std::size_t>( c )]; }
  /// Replicated runs of original `k` divided by the number of repetitions.
  double configuration_accuracy( std::size_t k ) const;
  /// Replicated over every classified configuration except NotIdentified; nullopt when that is zero.
  std::optional<double> accuracy() const;
};

/// Jackknife protocol: each repetition removes ceil(fraction * n) distinct cases, reruns the
/// pipeline and classifies every configuration against the full-data solution. Repetition `r`
/// draws from its own stream derived from (seed, r).
ValidityReport external_validity( const CaseTable& table, const ValidityParams& validity, const PipelineParams& params );

} // namespace scpqca
