#include "scpqca/pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace scpqca
{

CandidateParams PipelineParams::candidate_params() const
{
  CandidateParams p;
  p.decision_label = decision_label;
  p.consistency_threshold = consistency_threshold;
  p.cutoff = cutoff;
  p.max_order = max_order;
  p.threads = threads;
  return p;
}

CoverParams PipelineParams::cover_params() const
{
  CoverParams p;
  p.unique_cover = unique_cover;
  p.decision_label = decision_label;
  p.order = order;
  return p;
}

PipelineResult run_candidate_stage( const CaseTable& table, const PipelineParams& params )
{
  const auto& schema = table.schema();
  if ( params.decision_label >= schema.outcome().levels )
    throw InputError( "decision label " + std::to_string( params.decision_label ) + " outside the outcome levels" );
  validate( params.candidate_params() );
  if ( params.unique_cover < 1 )
    throw InputError( "unique cover must be at least 1" );

  PipelineResult result;
  if ( !params.skip_necessity )
  {
    result.necessity = necessary_conditions( table, params.decision_label, params.necessity_threshold );
    result.ambiguous_factors = ambiguous_factors( result.necessity );
    for ( const auto& nc : result.necessity )
    {
      const bool ambiguous = std::find( result.ambiguous_factors.begin(), result.ambiguous_factors.end(),
                                        nc.literal.factor ) != result.ambiguous_factors.end();
      if ( !ambiguous )
        result.necessary.push_back( nc.literal );
    }
    for ( auto f : result.ambiguous_factors )
    {
      std::ostringstream msg;
      msg << "factor '" << schema.factor( f ).name << "' has several levels above the necessity threshold;";
      msg << " none is conjoined unless accepted explicitly";
      result.warnings.push_back( msg.str() );
    }
  }
  for ( const auto& lit : params.accepted_necessary )
  {
    check_conjunction( Conjunction( { lit } ), schema );
    const bool qualifies = std::any_of( result.necessity.begin(), result.necessity.end(),
                                        [&]( const NecessaryCondition& nc ) { return nc.literal == lit; } );
    if ( !qualifies )
      throw InputError( "accepted necessary literal " + literal_name( lit, schema, NameStyle::Assignment ) +
                        " does not pass the necessity threshold" );
    if ( std::find( result.necessary.begin(), result.necessary.end(), lit ) == result.necessary.end() )
      result.necessary.push_back( lit );
  }
  std::sort( result.necessary.begin(), result.necessary.end() );
  // Rejects two accepted levels of the same factor.
  const Conjunction necessary_conj( result.necessary );

  result.factor_set = exclude_necessary( schema, result.necessary );
  const auto universe = match_set( necessary_conj, table );
  result.candidates = enumerate_candidates( table, result.factor_set, params.candidate_params(), &universe );
  return result;
}

PipelineResult run_pipeline( const CaseTable& table, const PipelineParams& params )
{
  auto result = run_candidate_stage( table, params );
  const auto cover = params.cover_params();
  result.selected = greedy_cover( result.candidates, table.positives( params.decision_label ), cover );
  result.no_admissible_cover = result.selected.empty() && !result.factor_set.empty();
  result.solution = assemble_solution( result.necessary, result.selected, table, cover );
  if ( !at_least( result.solution->consistency, params.consistency_threshold ) )
  {
    std::ostringstream msg;
    msg << "solution consistency " << result.solution->consistency.value() << " is below the consistency threshold "
        << params.consistency_threshold;
    result.warnings.push_back( msg.str() );
  }
  return result;
}

} // namespace scpqca
