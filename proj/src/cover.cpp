#include "scpqca/cover.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace scpqca
{

namespace
{

// True when candidate `a` (gain `ga`) ranks strictly above `b` (gain `gb`); equal keys keep the earlier one.
bool ranks_above( const CandidateRule& a, std::size_t ga, const CandidateRule& b, std::size_t gb, GreedyOrder order )
{
  if ( order == GreedyOrder::ConsistencyFirst )
  {
    if ( auto c = a.consistency <=> b.consistency; c != 0 )
      return c > 0;
    if ( ga != gb )
      return ga > gb;
  }
  else
  {
    if ( ga != gb )
      return ga > gb;
    if ( auto c = a.consistency <=> b.consistency; c != 0 )
      return c > 0;
  }
  return a.conjunction.size() < b.conjunction.size();
}

Conjunction conjoin( std::span<const Literal> necessary, const Conjunction& rule )
{
  auto lits = rule.literals();
  for ( const auto& n : necessary )
  {
    if ( auto v = rule.value_of( n.factor ) )
    {
      if ( *v != n.value )
        throw InputError( "rule contradicts a necessary literal on factor " + std::to_string( n.factor ) );
      continue;
    }
    lits.push_back( n );
  }
  return Conjunction( std::move( lits ) );
}

// Picks a valid order for `subset` (bit k = candidate k) or returns false.
bool admissible_order( std::uint32_t subset, std::span<const CaseSet> gains, std::size_t floor,
                       std::vector<std::size_t>& order )
{
  std::vector<std::size_t> members;
  for ( std::uint32_t m = subset; m; m &= m - 1 )
    members.push_back( static_cast<std::size_t>( std::countr_zero( m ) ) );
  order.clear();
  // Peel from the back: a rule may come last iff its unique share against the rest meets the floor.
  // Removing a rule never lowers another's unique share, so any qualifying choice is safe.
  while ( !members.empty() )
  {
    bool peeled = false;
    for ( std::size_t k = 0; k < members.size() && !peeled; ++k )
    {
      CaseSet others( gains[members[k]].universe() );
      for ( std::size_t j = 0; j < members.size(); ++j )
        if ( j != k )
          others |= gains[members[j]];
      if ( ( gains[members[k]] - others ).count() >= floor )
      {
        order.push_back( members[k] );
        members.erase( members.begin() + static_cast<std::ptrdiff_t>( k ) );
        peeled = true;
      }
    }
    if ( !peeled )
      return false;
  }
  std::reverse( order.begin(), order.end() );
  return true;
}

} // namespace

std::vector<SelectedRule> greedy_cover( std::span<const CandidateRule> candidates, const CaseSet& positives,
                                        const CoverParams& params )
{
  if ( params.unique_cover < 1 )
    throw InputError( "unique cover must be at least 1" );
  for ( const auto& c : candidates )
    if ( c.positives_matched.universe() != positives.universe() )
      throw InputError( "candidate rules and positive set refer to different tables" );

  std::vector<SelectedRule> picks;
  std::vector<bool> used( candidates.size(), false );
  CaseSet covered( positives.universe() );
  const auto total = positives.count();

  while ( covered.count() < total )
  {
    std::size_t best = candidates.size(), best_gain = 0;
    for ( std::size_t i = 0; i < candidates.size(); ++i )
    {
      if ( used[i] )
        continue;
      const auto gain = candidates[i].positives_matched.count_and_not( positives, covered );
      if ( gain < params.unique_cover )
        continue;
      if ( best == candidates.size() || ranks_above( candidates[i], gain, candidates[best], best_gain, params.order ) )
      {
        best = i;
        best_gain = gain;
      }
    }
    if ( best == candidates.size() )
      break;
    used[best] = true;
    covered |= candidates[best].positives_matched & positives;
    picks.push_back( { candidates[best], best_gain } );
  }
  return picks;
}

Solution assemble_solution( std::span<const Literal> necessary, std::span<const SelectedRule> selected,
                            const CaseTable& table, const CoverParams& params )
{
  if ( necessary.empty() && selected.empty() )
    throw VacuousSolutionError( "no necessary condition and no admissible cover: the solution is vacuous" );

  Solution s;
  s.necessary.assign( necessary.begin(), necessary.end() );
  std::sort( s.necessary.begin(), s.necessary.end() );
  s.decision_label = params.decision_label;
  const auto positives = table.positives( params.decision_label );
  s.positives_total = positives.count();
  s.covered = CaseSet( table.size() );

  for ( const auto& sel : selected )
  {
    SolutionRule r;
    r.conjunction = conjoin( s.necessary, sel.rule.conjunction );
    r.matched = match_set( r.conjunction, table );
    r.positives_matched = r.matched & positives;
    r.consistency = make_ratio( r.positives_matched.count(), r.matched.count(), "consistency of a selected rule" );
    r.coverage = make_ratio( r.positives_matched.count(), s.positives_total, "coverage without positive cases" );
    r.marginal_gain = sel.marginal_gain;
    s.covered |= r.matched;
    s.rules.push_back( std::move( r ) );
  }
  if ( selected.empty() )
    s.covered = match_set( Conjunction( s.necessary ), table );

  for ( std::size_t k = 0; k < s.rules.size(); ++k )
  {
    auto unique = s.rules[k].positives_matched;
    for ( std::size_t j = 0; j < s.rules.size(); ++j )
      if ( j != k )
        unique -= s.rules[j].positives_matched;
    s.rules[k].unique_coverage = unique.count();
  }

  auto metrics = solution_metrics( s.covered, table, params.decision_label );
  s.consistency = metrics.consistency;
  s.coverage = metrics.coverage;
  return s;
}

OracleResult exhaustive_cover_oracle( std::span<const CandidateRule> candidates, const CaseSet& positives,
                                      const CoverParams& params, std::size_t max_subset_size )
{
  if ( candidates.size() > oracle_candidate_limit )
    throw InputError( "exhaustive cover oracle accepts at most " + std::to_string( oracle_candidate_limit ) +
                      " candidate rules (got " + std::to_string( candidates.size() ) +
                      "); raise the consistency threshold or cutoff, or lower --max-order" );
  if ( params.unique_cover < 1 )
    throw InputError( "unique cover must be at least 1" );

  std::vector<CaseSet> gains;
  gains.reserve( candidates.size() );
  for ( const auto& c : candidates )
    gains.push_back( c.positives_matched & positives );

  const std::uint32_t limit = std::uint32_t{ 1 } << candidates.size();
  std::uint32_t best_mask = 0;
  std::size_t best_cover = 0;
  Ratio best_consistency{ 0, 1 };
  std::vector<std::size_t> best_order, order;

  for ( std::uint32_t mask = 1; mask < limit; ++mask )
  {
    const auto size = static_cast<std::size_t>( std::popcount( mask ) );
    if ( size > max_subset_size )
      continue;
    CaseSet cover( positives.universe() ), matched( positives.universe() );
    for ( std::uint32_t m = mask; m; m &= m - 1 )
    {
      auto k = static_cast<std::size_t>( std::countr_zero( m ) );
      cover |= gains[k];
      matched |= candidates[k].matched;
    }
    const auto covered = cover.count();
    Ratio consistency{ matched.count_and( positives ), std::max<std::size_t>( matched.count(), 1 ) };
    if ( covered == 0 )
      continue;
    const auto best_size = static_cast<std::size_t>( std::popcount( best_mask ) );
    bool better = true;
    if ( best_mask != 0 )
    {
      if ( covered != best_cover )
        better = covered > best_cover;
      else if ( size != best_size )
        better = size < best_size;
      else
        better = consistency > best_consistency;
    }
    if ( !better )
      continue;
    if ( !admissible_order( mask, gains, params.unique_cover, order ) )
      continue;
    best_mask = mask;
    best_cover = covered;
    best_consistency = consistency;
    best_order = order;
  }

  OracleResult result;
  result.covered_positives = best_cover;
  CaseSet covered( positives.universe() );
  for ( auto k : best_order )
  {
    result.selection.push_back( { candidates[k], gains[k].count_and_not( positives, covered ) } );
    covered |= gains[k];
  }
  return result;
}

} // namespace scpqca
