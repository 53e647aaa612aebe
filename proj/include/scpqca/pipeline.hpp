#pragma once

#include <optional>
#include <string>
#include <vector>

#include "candidates.hpp"
#include "cover.hpp"
#include "model.hpp"
#include "necessity.hpp"

namespace scpqca
{

/// Parameters of the two-step analysis: necessity first, then sufficiency over the remaining factors.
struct PipelineParams
{
  Level decision_label = 1;
  double necessity_threshold = 0.9;
  double consistency_threshold = 0.8;
  std::size_t cutoff = 2;
  std::size_t unique_cover = 2;
  std::optional<std::size_t> max_order;
  unsigned threads = 1;
  GreedyOrder order = GreedyOrder::ConsistencyFirst;
  bool skip_necessity = false;
  /// Literals of factors with several qualifying levels that should still be conjoined.
  std::vector<Literal> accepted_necessary;

  CandidateParams candidate_params() const;
  CoverParams cover_params() const;
};

struct PipelineResult
{
  std::vector<NecessaryCondition> necessity;  ///< every qualifying literal
  std::vector<Literal> necessary;             ///< the literals conjoined into the solution
  std::vector<std::size_t> ambiguous_factors;
  std::vector<std::size_t> factor_set;        ///< factors enumerated for sufficiency
  std::vector<CandidateRule> candidates;
  std::vector<SelectedRule> selected;
  std::optional<Solution> solution;
  bool no_admissible_cover = false;  ///< factors were left to enumerate but the cover picked nothing
  std::vector<std::string> warnings;
};

/// Necessity analysis, factor exclusion and candidate enumeration. Enumeration is restricted to
/// the cases that satisfy every conjoined necessary literal.
PipelineResult run_candidate_stage( const CaseTable& table, const PipelineParams& params );

/// Full pipeline. Throws VacuousSolutionError when neither necessary literals nor rules remain.
PipelineResult run_pipeline( const CaseTable& table, const PipelineParams& params );

} // namespace scpqca
