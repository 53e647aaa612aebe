#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"

namespace scpqca
{

/// How one raw CSV column becomes dense levels.
struct ColumnCalibration
{
  enum class Kind
  {
    Passthrough,  ///< integer cells are taken as levels; other labels are mapped densely
    Cutpoints,    ///< numeric cells binned by strictly increasing thresholds
  };

  Kind kind = Kind::Passthrough;
  std::vector<double> cutpoints;
  std::optional<Level> declared_levels;  ///< passthrough only: reject cells at or above this

  static ColumnCalibration passthrough( std::optional<Level> levels = std::nullopt );
  /// Throws InputError unless the thresholds are finite and strictly increasing.
  static ColumnCalibration with_cutpoints( std::vector<double> thresholds );
};

using CalibrationSpec = std::map<std::string, ColumnCalibration>;

struct LoadOptions
{
  std::string outcome_column;
  CalibrationSpec calibration;
  /// Factor columns to keep, in this order; empty keeps every non-id, non-outcome column.
  std::vector<std::string> factor_columns;
};

/// Level of `x` under `cutpoints`: the number of thresholds <= x (a value on a boundary goes up).
Level calibrate( double x, std::span<const double> cutpoints );

/// Reads a header-first CSV. The `id` column (any case) supplies case ids, else an unnamed first
/// column, else 1-based row numbers. Errors name the file line and column.
CaseTable load_csv( const std::filesystem::path& path, const LoadOptions& options );
CaseTable read_csv( std::istream& in, const LoadOptions& options, const std::string& source = "<input>" );

/// Writes `id,<factors...>,<outcome>` with dense integer levels.
void write_csv( const CaseTable& table, std::ostream& out );

struct DeduplicateResult
{
  CaseTable table;
  std::size_t removed = 0;
};

/// Collapses cases identical in every factor value and in the outcome (first id kept).
/// Contradictory cases (same factors, different outcome) are all retained.
DeduplicateResult deduplicate( const CaseTable& table );

/// JSON description of the schema including label<->level mappings (the `--emit-schema` sidecar).
std::string schema_json( const FactorSchema& schema );

} // namespace scpqca
