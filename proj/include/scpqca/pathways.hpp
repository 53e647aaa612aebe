#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "pipeline.hpp"

namespace scpqca
{

/// A planted causal structure: outcome 1 iff any term matches.
struct PathwaySpec
{
  std::vector<Conjunction> terms;
  FactorSchema schema;
};

/// Parses a DNF pathway. Terms are separated by `+`; literals inside a term by `*`.
///  - single-letter schemas also accept Boolean shorthand: `A` = level 1, `a` = level 0, and
///    juxtaposition conjoins (`ab+CD`);
///  - every schema accepts `Name<level>` or `Name=<level>` (`A0*B0`, `MS=1*PV=0`).
/// Whitespace is ignored. Throws ParseError carrying the offending character offset.
PathwaySpec parse_pathway( std::string_view text, const FactorSchema& schema );

std::string pathway_name( const PathwaySpec& pathway, NameStyle style = NameStyle::Compact );

bool evaluate( const PathwaySpec& pathway, std::span<const Level> values );

inline constexpr std::uint64_t default_truth_table_bound = std::uint64_t{ 1 } << 24;

/// Number of rows of the full truth table, saturating at UINT64_MAX.
std::uint64_t truth_table_size( const FactorSchema& schema );

/// Row `index` in odometer order (last factor varies fastest).
std::vector<Level> truth_table_row( const FactorSchema& schema, std::uint64_t index );

/// Every value combination once, ids `r0`, `r1`, ...; outcomes are 0 until planted.
/// Throws InputError when the table would exceed `bound` rows.
CaseTable full_truth_table( const FactorSchema& schema, std::uint64_t bound = default_truth_table_bound );

/// Same cases with outcome 1 where the pathway holds, else 0.
CaseTable plant_outcome( const CaseTable& skeleton, const PathwaySpec& pathway );

struct ExperimentSpec
{
  FactorSchema schema;
  PathwaySpec pathway;
  std::size_t sample_size = 200;
  std::size_t confound_count = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draws `sample_size` rows uniformly with replacement, then changes the outcome of
/// `confound_count` distinct sampled rows to a different level (uniform among the others).
/// Sampled cases get fresh ids `s0`, `s1`, ...
CaseTable sample_and_confound( const CaseTable& table, const ExperimentSpec& spec );

/// Equivalent to sample_and_confound(plant_outcome(full_truth_table(schema)), spec) without
/// materializing the truth table; usable for schemas far beyond the truth-table bound.
CaseTable sample_planted( const ExperimentSpec& spec );

/// Schema for synthetic data: factors `A`, `B`, ... (or `F1`.. beyond 26), outcome `OUTCOME`.
FactorSchema synthetic_schema( std::size_t factors, std::span<const Level> levels );

struct ExperimentReport
{
  CaseTable data;
  PipelineResult result;
  std::size_t disagreements = 0;  ///< sampled rows whose outcome differs from the pathway
  double seconds = 0.0;
};

ExperimentReport run_experiment( const ExperimentSpec& spec, const PipelineParams& params );

} // namespace scpqca
