#include "stable_expand/baselines.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "stable_expand/deferred_acceptance.hpp"
#include "stable_expand/errors.hpp"

namespace stable_expand {
namespace {

void require_budget(const MatchingInstance& instance) {
  if (instance.total_expansion_limit() < instance.budget())
    throw InfeasibleError(fmt::format(
        "budget {} exceeds the sum of expansion limits {}", instance.budget(),
        instance.total_expansion_limit()));
}

}  // namespace

HeuristicResult greedy_expansion(const MatchingInstance& instance) {
  require_budget(instance);
  const int num_h = instance.total_hospitals();
  HeuristicResult out;
  out.expansion = ExpansionVector::zeros(num_h);
  out.matching = run_da(instance, out.expansion);
  out.cost = total_cost(instance, out.matching);

  for (int step = 0; step < instance.budget(); ++step) {
    int chosen = -1;
    std::int64_t chosen_cost = std::numeric_limits<std::int64_t>::max();
    Matching chosen_matching;
    ExpansionVector candidate = out.expansion;
    for (int h = 0; h < num_h; ++h) {
      if (candidate[h] >= instance.expansion_limit(h)) continue;
      ++candidate[h];
      Matching m = run_da(instance, candidate);
      const std::int64_t cost = total_cost(instance, m);
      --candidate[h];
      if (cost < chosen_cost) {
        chosen = h;
        chosen_cost = cost;
        chosen_matching = std::move(m);
      }
    }
    if (chosen == -1) throw InfeasibleError("no hospital can take another seat");
    ++out.expansion[chosen];
    out.matching = std::move(chosen_matching);
    out.cost = chosen_cost;
  }
  return out;
}

LphNetwork build_lph_network(const MatchingInstance& instance) {
  const int num_d = instance.num_residents();
  const int num_h = instance.total_hospitals();
  const int source = 0;
  const int first_resident = 1;
  const int first_hospital = first_resident + num_d;
  const int pool = first_hospital + num_h;
  const int sink = pool + 1;

  LphNetwork out{FlowNetwork(sink + 1, source, sink), {}};
  auto& net = out.network;
  for (int d = 0; d < num_d; ++d) net.add_arc(source, first_resident + d, 1, 0);
  for (int d = 0; d < num_d; ++d) {
    for (const int h : instance.resident_prefs(d))
      net.add_arc(first_resident + d, first_hospital + h, 1,
                  instance.resident_rank(d, h));
  }
  out.budget_arcs.resize(num_h);
  for (int h = 0; h < num_h; ++h) {
    net.add_arc(first_hospital + h, sink, instance.quota(h), 0);
    out.budget_arcs[h] =
        net.add_arc(first_hospital + h, pool, instance.expansion_limit(h), 0);
  }
  net.add_arc(pool, sink, instance.budget(), 0);
  return out;
}

LphResult lp_heuristic(const MatchingInstance& instance) {
  require_budget(instance);
  const LphNetwork lph = build_lph_network(instance);
  const FlowSolution flow = min_cost_flow(lph.network, instance.num_residents());

  LphResult out;
  out.flow_cost = flow.total_cost;
  auto& r = out.result;
  r.expansion = ExpansionVector::zeros(instance.total_hospitals());
  for (int h = 0; h < instance.total_hospitals(); ++h)
    r.expansion[h] = static_cast<int>(flow.flow[lph.budget_arcs[h]]);
  r.matching = run_da(instance, r.expansion);
  r.cost = total_cost(instance, r.matching);
  return out;
}

std::uint64_t count_theta(const MatchingInstance& instance, std::uint64_t cap) {
  const int budget = std::max(0, instance.budget());
  // ways[s] = number of prefixes using exactly s seats.
  std::vector<std::uint64_t> ways(budget + 1, 0);
  ways[0] = 1;
  for (int h = 0; h < instance.total_hospitals(); ++h) {
    std::vector<std::uint64_t> next(budget + 1, 0);
    const int limit = std::max(0, instance.expansion_limit(h));
    for (int s = 0; s <= budget; ++s) {
      if (ways[s] == 0) continue;
      for (int k = 0; k <= limit && s + k <= budget; ++k)
        next[s + k] = std::min(cap, next[s + k] + ways[s]);
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto w : ways) total = std::min(cap, total + w);
  return total;
}

namespace {

void fill_theta(const MatchingInstance& instance, int h, int remaining,
                ExpansionVector& t, std::vector<ExpansionVector>& out) {
  if (h == instance.total_hospitals()) {
    out.push_back(t);
    return;
  }
  const int most = std::min(instance.expansion_limit(h), remaining);
  for (int k = 0; k <= most; ++k) {
    t[h] = k;
    fill_theta(instance, h + 1, remaining - k, t, out);
  }
  t[h] = 0;
}

}  // namespace

std::vector<ExpansionVector> enumerate_theta(const MatchingInstance& instance,
                                             std::uint64_t guard) {
  const std::uint64_t size = count_theta(instance, guard + 1);
  if (size > guard)
    throw GuardExceeded(
        fmt::format("expansion set has more than {} vectors", guard));
  std::vector<ExpansionVector> out;
  out.reserve(size);
  auto t = ExpansionVector::zeros(instance.total_hospitals());
  fill_theta(instance, 0, instance.budget(), t, out);
  return out;
}

OracleResult brute_force_optimal(const MatchingInstance& instance,
                                 std::uint64_t guard) {
  OracleResult best;
  best.cost = std::numeric_limits<std::int64_t>::max();
  for (const auto& t : enumerate_theta(instance, guard)) {
    const std::int64_t cost = total_cost(instance, run_da(instance, t));
    if (cost < best.cost) {
      best.cost = cost;
      best.expansion = t;
    }
  }
  return best;
}

std::vector<Matching> enumerate_stable_matchings(const MatchingInstance& instance,
                                                 const ExpansionVector& t) {
  const int num_d = instance.num_residents();
  if (num_d > 6 || instance.num_hospitals() > 3)
    throw GuardExceeded("stable matching enumeration limited to D <= 6, H <= 3");

  // choice[d] indexes d's list; the list length means unassigned.
  std::vector<int> choice(num_d, 0);
  std::vector<Matching> out;
  std::vector<int> load(instance.total_hospitals());
  while (true) {
    std::vector<int> assignment(num_d, kUnassigned);
    std::fill(load.begin(), load.end(), 0);
    bool fits = true;
    for (int d = 0; d < num_d && fits; ++d) {
      const auto prefs = instance.resident_prefs(d);
      if (choice[d] < static_cast<int>(prefs.size())) {
        const int h = prefs[choice[d]];
        assignment[d] = h;
        fits = ++load[h] <= instance.quota(h) + t[h];
      }
    }
    if (fits) {
      Matching m = Matching::from_assignment(instance, std::move(assignment));
      if (find_blocking_pairs(instance, t, m).stable) out.push_back(std::move(m));
    }

    int d = 0;
    while (d < num_d) {
      if (++choice[d] <= static_cast<int>(instance.resident_prefs(d).size())) break;
      choice[d] = 0;
      ++d;
    }
    if (d == num_d) break;
  }
  return out;
}

}  // namespace stable_expand
