#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cover.hpp"
#include "model.hpp"
#include "necessity.hpp"
#include "pipeline.hpp"
#include "robustness.hpp"

namespace scpqca
{

enum class Format
{
  Text,
  Json,
  Csv,
};

/// Configurations joined with ` + ` in shorthand, e.g. `ms*PI*LP + MC*LP`.
std::string solution_expression( const Solution& solution, const FactorSchema& schema );

/// Fixed four-decimal rendering used by the text reports.
std::string format_ratio( const Ratio& r );

/// Factors x configurations grid: `●` level 1 and `○` level 0 of a binary factor, the integer
/// level of a multi-value factor, a trailing `*` on literals that came from the necessity step.
/// Followed by per-configuration consistency, raw and unique coverage, and the solution metrics.
std::string configuration_chart( const Solution& solution, const FactorSchema& schema );

void write_necessity( std::ostream& out, const CaseTable& table, std::span<const NecessaryCondition> conditions,
                      double threshold, Format format );

void write_candidates( std::ostream& out, const CaseTable& table, const PipelineResult& result, Format format );

void write_solution( std::ostream& out, const CaseTable& table, const PipelineResult& result, Format format,
                     const OracleResult* oracle = nullptr );

struct ExperimentRow
{
  std::size_t confounds = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t disagreements = 0;
  std::size_t candidates = 0;
  std::string solution;
  std::optional<Ratio> consistency;
  std::optional<Ratio> coverage;
  std::optional<double> seconds;
  std::string error;
};

void write_experiment( std::ostream& out, const std::string& pathway, std::span<const ExperimentRow> rows,
                       Format format );

void write_sweep( std::ostream& out, const FactorSchema& schema, std::span<const SweepCell> cells, Format format );

void write_validity( std::ostream& out, const FactorSchema& schema, const ValidityReport& report, Format format );

} // namespace scpqca
