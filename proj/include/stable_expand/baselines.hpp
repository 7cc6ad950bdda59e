#pragma once

#include <cstdint>
#include <vector>

#include "stable_expand/instance.hpp"
#include "stable_expand/min_cost_flow.hpp"

namespace stable_expand {

struct HeuristicResult {
  ExpansionVector expansion;
  Matching matching;
  std::int64_t cost = 0;
};

// Spends the budget one seat at a time, each time on the hospital whose extra
// seat gives the lowest DA cost (ties to the smaller id). Always spends all B
// seats. Throws InfeasibleError if sum b_h < B.
HeuristicResult greedy_expansion(const MatchingInstance& instance);

// Flow model used by lp_heuristic. Nodes: source, residents, hospitals,
// budget pool, sink.
//   source -> resident            cap 1,    cost 0
//   resident -> ranked hospital   cap 1,    cost rank_d(h)
//   hospital -> sink              cap q_h,  cost 0
//   hospital -> pool              cap b_h,  cost 0   (budget arc)
//   pool -> sink                  cap B,    cost 0
struct LphNetwork {
  FlowNetwork network;
  std::vector<int> budget_arcs;  // arc id per hospital
};
LphNetwork build_lph_network(const MatchingInstance& instance);

struct LphResult {
  HeuristicResult result;
  std::int64_t flow_cost = 0;  // assignment cost ignoring stability
};

// Fixes t from a min-cost assignment of all residents, then runs DA under t.
// Throws InfeasibleError if not every resident can be routed.
LphResult lp_heuristic(const MatchingInstance& instance);

// |Theta|, saturating at `cap`.
std::uint64_t count_theta(const MatchingInstance& instance, std::uint64_t cap);

// All t with t_h <= b_h and sum t_h <= B, in lexicographic order.
std::vector<ExpansionVector> enumerate_theta(const MatchingInstance& instance,
                                             std::uint64_t guard = 10'000'000);

struct OracleResult {
  ExpansionVector expansion;
  std::int64_t cost = 0;
};

// Exact optimum by running DA on every t in Theta; ties go to the
// lexicographically smallest t.
OracleResult brute_force_optimal(const MatchingInstance& instance,
                                 std::uint64_t guard = 10'000'000);

// Every stable matching under capacities q + t, by exhaustive assignment.
// Limited to D <= 6 and at most 3 real hospitals.
std::vector<Matching> enumerate_stable_matchings(const MatchingInstance& instance,
                                                 const ExpansionVector& t);

}  // namespace stable_expand
