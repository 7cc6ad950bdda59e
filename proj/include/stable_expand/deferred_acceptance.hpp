#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stable_expand/instance.hpp"

namespace stable_expand {

struct BlockingPair {
  int resident;
  int hospital;
  bool operator==(const BlockingPair&) const = default;
};

struct StabilityReport {
  std::vector<BlockingPair> blocking_pairs;
  bool stable = true;
};

/// Resident-proposing deferred acceptance with capacities q + t.
///
/// Free residents propose in index order (FIFO); each hospital keeps its
/// tentative roster in a heap keyed by its own ranking so the worst held
/// resident is rejected in O(log q). The result is the resident-optimal
/// stable matching, so the proposal order does not affect it.
/// Throws InfeasibleError if t is not in the feasible expansion set.
Matching run_da(const MatchingInstance& instance, const ExpansionVector& t);

/// Sum of rank_d(M(d)) over residents, counting unassigned residents at
/// instance.unassigned_rank().
std::int64_t total_cost(const MatchingInstance& instance, const Matching& m);

std::vector<int> per_resident_ranks(const MatchingInstance& instance,
                                    const Matching& m);

// Enumerates every (d, h) with h ranked by d, d unassigned or preferring h to
// M(d), and h under capacity q_h + t_h or preferring d to its worst member.
StabilityReport find_blocking_pairs(const MatchingInstance& instance,
                                    const ExpansionVector& t,
                                    const Matching& m);

}  // namespace stable_expand
