#pragma once

#include <span>
#include <vector>

#include "model.hpp"

namespace scpqca
{

struct NecessaryCondition
{
  Literal literal;
  Ratio consistency;
};

/// Every literal (factor x level) whose necessity consistency strictly exceeds `threshold`,
/// sorted by consistency descending, then by literal.
/// Throws InputError for a threshold outside (0, 1], UndefinedRatioError without positive cases.
std::vector<NecessaryCondition> necessary_conditions( const CaseTable& table, Level decision_label,
                                                      double threshold = 0.9 );

/// Factor indices not constrained by any of `necessary`, ascending.
std::vector<std::size_t> exclude_necessary( const FactorSchema& schema, std::span<const Literal> necessary );

/// Factors that contribute more than one qualifying level (only possible with thresholds <= 0.5).
std::vector<std::size_t> ambiguous_factors( std::span<const NecessaryCondition> conditions );

} // namespace scpqca
