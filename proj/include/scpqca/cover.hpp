#pragma once

#include <span>
#include <vector>

#include "model.hpp"

namespace scpqca
{

/// Primary ranking key of the greedy scan.
enum class GreedyOrder
{
  ConsistencyFirst,  ///< (consistency, marginal gain, fewer literals, candidate order) -- default
  CoverageFirst,     ///< (marginal gain, consistency, fewer literals, candidate order)
};

struct CoverParams
{
  std::size_t unique_cover = 2;  ///< minimum number of newly covered positives a pick must add
  Level decision_label = 1;
  GreedyOrder order = GreedyOrder::ConsistencyFirst;
};

struct SelectedRule
{
  CandidateRule rule;
  std::size_t marginal_gain = 0;  ///< uncovered positives the rule added when it was picked
};

/// Greedy maximal-coverage selection. Each round considers the unselected rules whose marginal
/// gain on `positives` is at least `unique_cover` and picks the best by `params.order`; stops when
/// no rule qualifies or every positive is covered. Returns picks in selection order; an empty
/// result means there is no admissible cover.
std::vector<SelectedRule> greedy_cover( std::span<const CandidateRule> candidates, const CaseSet& positives,
                                        const CoverParams& params );

/// Conjoins `necessary` into every selected rule and computes per-rule and solution metrics on the
/// whole table. With no selected rule the solution is the conjunction of the necessary literals.
/// Throws VacuousSolutionError when both inputs are empty.
Solution assemble_solution( std::span<const Literal> necessary, std::span<const SelectedRule> selected,
                            const CaseTable& table, const CoverParams& params );

struct OracleResult
{
  std::vector<SelectedRule> selection;  ///< in a pick order that satisfies the unique-cover floor
  std::size_t covered_positives = 0;
};

/// Exact search over rule subsets of size <= `max_subset_size` maximizing (covered positives, fewer
/// rules, higher union consistency). A subset is admissible when some pick order gives each rule a
/// marginal gain of at least `unique_cover`. Refuses more than 20 candidates.
OracleResult exhaustive_cover_oracle( std::span<const CandidateRule> candidates, const CaseSet& positives,
                                      const CoverParams& params, std::size_t max_subset_size );

inline constexpr std::size_t oracle_candidate_limit = 20;

} // namespace scpqca
