#include "scpqca/candidates.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace scpqca
{

namespace
{

constexpr std::uint64_t count_cap = std::uint64_t{ 1 } << 63;

struct Enumerator
{
  const CaseTable& table;
  std::vector<std::size_t> factors;
  const CandidateParams& params;
  std::size_t max_order;
  std::vector<std::vector<CaseSet>> masks;
  CaseSet positives;
  CaseSet universe;

  Enumerator( const CaseTable& t, std::span<const std::size_t> factor_set, const CandidateParams& p, const CaseSet* u )
      : table( t ), params( p ), masks( literal_masks( t ) ), positives( t.positives( p.decision_label ) ),
        universe( u ? *u : t.all() )
  {
    validate( p );
    std::set<std::size_t> unique( factor_set.begin(), factor_set.end() );
    for ( auto f : unique )
      if ( f >= t.schema().size() )
        throw InputError( "factor index " + std::to_string( f ) + " outside the schema" );
    factors.assign( unique.begin(), unique.end() );
    max_order = std::min( p.max_order.value_or( factors.size() ), factors.size() );
    if ( universe.universe() != t.size() )
      throw InputError( "enumeration universe does not match the table" );
  }

  // Visits the subtree rooted at `conj` (already matching `matched`); `next` is the first factor
  // position that may still be added.
  template<typename Sink>
  void descend( const Conjunction& conj, const CaseSet& matched, std::size_t next, Sink& sink ) const
  {
    emit_if_admissible( conj, matched, sink );
    if ( conj.size() >= max_order )
      return;
    for ( std::size_t k = next; k < factors.size(); ++k )
    {
      const auto f = factors[k];
      for ( Level v = 0; v < masks[f].size(); ++v )
      {
        auto narrowed = matched & masks[f][v];
        if ( narrowed.count() < params.cutoff )
          continue;
        descend( conj.with( { f, v } ), narrowed, k + 1, sink );
      }
    }
  }

  template<typename Sink>
  void emit_if_admissible( const Conjunction& conj, const CaseSet& matched, Sink& sink ) const
  {
    const auto n = matched.count();
    auto hits = matched & positives;
    Ratio consistency{ hits.count(), n };
    if ( at_least( consistency, params.consistency_threshold ) )
      sink( CandidateRule{ conj, matched, std::move( hits ), consistency } );
  }

  // One partition per first literal, in the deterministic (factor, level) order.
  std::vector<Literal> partitions() const
  {
    std::vector<Literal> out;
    if ( max_order == 0 )
      return out;
    for ( auto f : factors )
      for ( Level v = 0; v < masks[f].size(); ++v )
        out.push_back( { f, v } );
    return out;
  }

  template<typename Sink>
  void run_partition( const Literal& first, Sink& sink ) const
  {
    auto matched = universe & masks[first.factor][first.value];
    if ( matched.count() < params.cutoff )
      return;
    auto pos = std::find( factors.begin(), factors.end(), first.factor ) - factors.begin();
    descend( Conjunction( { first } ), matched, static_cast<std::size_t>( pos ) + 1, sink );
  }
};

} // namespace

void validate( const CandidateParams& params )
{
  if ( !( params.consistency_threshold > 0.0 && params.consistency_threshold <= 1.0 ) )
    throw InputError( "consistency threshold must lie in (0, 1]" );
  if ( params.cutoff < 1 )
    throw InputError( "cutoff must be at least 1" );
  if ( params.max_order && *params.max_order < 1 )
    throw InputError( "max order must be at least 1" );
}

void for_each_candidate( const CaseTable& table, std::span<const std::size_t> factor_set, const CandidateParams& params,
                         const CandidateSink& sink, const CaseSet* universe )
{
  Enumerator e( table, factor_set, params, universe );
  auto forward = [&]( CandidateRule&& r ) { sink( std::move( r ) ); };
  for ( const auto& first : e.partitions() )
    e.run_partition( first, forward );
}

std::vector<CandidateRule> enumerate_candidates( const CaseTable& table, std::span<const std::size_t> factor_set,
                                                 const CandidateParams& params, const CaseSet* universe )
{
  Enumerator e( table, factor_set, params, universe );
  const auto parts = e.partitions();
  std::vector<std::vector<CandidateRule>> results( parts.size() );

  unsigned workers = params.threads == 0 ? std::max( 1u, std::thread::hardware_concurrency() ) : params.threads;
  workers = static_cast<unsigned>( std::min<std::size_t>( workers, parts.size() ) );

  auto work = [&]( std::size_t k ) {
    auto sink = [&]( CandidateRule&& r ) { results[k].push_back( std::move( r ) ); };
    e.run_partition( parts[k], sink );
  };

  if ( workers <= 1 )
  {
    for ( std::size_t k = 0; k < parts.size(); ++k )
      work( k );
  }
  else
  {
    std::atomic<std::size_t> next{ 0 };
    std::vector<std::exception_ptr> errors( workers );
    {
      std::vector<std::jthread> pool;
      for ( unsigned w = 0; w < workers; ++w )
        pool.emplace_back( [&, w] {
          try
          {
            for ( std::size_t k; ( k = next.fetch_add( 1 ) ) < parts.size(); )
              work( k );
          }
          catch ( ... )
          {
            errors[w] = std::current_exception();
          }
        } );
    }
    for ( auto& err : errors )
      if ( err )
        std::rethrow_exception( err );
  }

  std::vector<CandidateRule> out;
  for ( auto& part : results )
    std::move( part.begin(), part.end(), std::back_inserter( out ) );
  std::sort( out.begin(), out.end(),
             []( const CandidateRule& a, const CandidateRule& b ) { return a.conjunction < b.conjunction; } );
  return out;
}

std::string CountBound::to_string() const
{
  return saturated ? "> 2^63" : std::to_string( value );
}

CountBound candidate_count_bound( const FactorSchema& schema, std::span<const std::size_t> factor_set,
                                  std::optional<std::size_t> max_order )
{
  std::set<std::size_t> unique( factor_set.begin(), factor_set.end() );
  const std::size_t order = std::min( max_order.value_or( unique.size() ), unique.size() );

  // elementary[k] = number of conjunctions with exactly k literals (saturating at 2^63).
  std::vector<Wide> elementary( order + 1, 0 );
  elementary[0] = 1;
  for ( auto f : unique )
  {
    const Wide levels = schema.factor( f ).levels;
    for ( std::size_t k = order; k >= 1; --k )
      elementary[k] = std::min<Wide>( elementary[k] + elementary[k - 1] * levels, count_cap + 1 );
  }
  Wide total = 0;
  for ( std::size_t k = 1; k <= order; ++k )
    total = std::min<Wide>( total + elementary[k], count_cap + 1 );
  if ( total > count_cap )
    return { count_cap, true };
  return { static_cast<std::uint64_t>( total ), false };
}

} // namespace scpqca
