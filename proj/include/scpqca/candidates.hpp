#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"

namespace scpqca
{

struct CandidateParams
{
  Level decision_label = 1;
  double consistency_threshold = 0.8;
  std::size_t cutoff = 2;                ///< minimum number of matched cases (total, not positives)
  std::optional<std::size_t> max_order;  ///< maximum literals per rule; unset = all factors
  unsigned threads = 1;                  ///< 0 = hardware concurrency; output does not depend on it
};

/// Throws InputError when a bound is violated.
void validate( const CandidateParams& params );

using CandidateSink = std::function<void( CandidateRule&& )>;

/// Streams every admissible rule over `factor_set` to `sink` in depth-first order. A partial rule
/// matching fewer than `cutoff` cases is never extended. When `universe` is given, matching is
/// restricted to those cases (e.g. the cases satisfying the necessary literals).
void for_each_candidate( const CaseTable& table, std::span<const std::size_t> factor_set, const CandidateParams& params,
                         const CandidateSink& sink, const CaseSet* universe = nullptr );

/// All admissible rules ordered by literal count, then lexicographically by (factor, level).
/// Partitions by first literal run on `params.threads` workers; the result is identical for any count.
std::vector<CandidateRule> enumerate_candidates( const CaseTable& table, std::span<const std::size_t> factor_set,
                                                 const CandidateParams& params, const CaseSet* universe = nullptr );

struct CountBound
{
  std::uint64_t value = 0;
  bool saturated = false;  ///< true when the true count exceeds 2^63

  std::string to_string() const;
};

/// Number of nonempty conjunctions of at most `max_order` literals over `factor_set`.
CountBound candidate_count_bound( const FactorSchema& schema, std::span<const std::size_t> factor_set,
                                  std::optional<std::size_t> max_order = std::nullopt );

} // namespace scpqca
