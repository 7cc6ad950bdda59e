#include "stable_expand/deferred_acceptance.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include <fmt/format.h>

#include "stable_expand/errors.hpp"

namespace stable_expand {

Matching run_da(const MatchingInstance& instance, const ExpansionVector& t) {
  if (!in_theta(instance, t))
    throw InfeasibleError(
        fmt::format("expansion {} is not in the feasible set", to_string(t)));

  const int num_d = instance.num_residents();
  const int num_h = instance.total_hospitals();

  // (hospital rank of resident, resident); top() is the worst held resident.
  using Held = std::pair<int, int>;
  std::vector<std::priority_queue<Held>> held(num_h);
  std::vector<int> capacity(num_h);
  for (int h = 0; h < num_h; ++h) capacity[h] = instance.quota(h) + t[h];

  std::vector<int> next_choice(num_d, 0);
  std::deque<int> free;
  for (int d = 0; d < num_d; ++d) free.push_back(d);

  while (!free.empty()) {
    const int d = free.front();
    free.pop_front();
    const auto prefs = instance.resident_prefs(d);
    // A resident whose list is exhausted stays unassigned.
    while (next_choice[d] < static_cast<int>(prefs.size())) {
      const int h = prefs[next_choice[d]++];
      if (capacity[h] == 0) continue;
      const int rank = instance.hospital_rank(h, d);
      auto& roster = held[h];
      if (static_cast<int>(roster.size()) < capacity[h]) {
        roster.emplace(rank, d);
        break;
      }
      if (rank < roster.top().first) {
        const int rejected = roster.top().second;
        roster.pop();
        roster.emplace(rank, d);
        free.push_back(rejected);
        break;
      }
    }
  }

  std::vector<int> assignment(num_d, kUnassigned);
  for (int h = 0; h < num_h; ++h) {
    auto& roster = held[h];
    while (!roster.empty()) {
      assignment[roster.top().second] = h;
      roster.pop();
    }
  }
  return Matching::from_assignment(instance, std::move(assignment));
}

std::vector<int> per_resident_ranks(const MatchingInstance& instance,
                                    const Matching& m) {
  std::vector<int> ranks(instance.num_residents());
  for (int d = 0; d < instance.num_residents(); ++d) {
    const int h = m.assignment[d];
    ranks[d] = h == kUnassigned ? instance.unassigned_rank()
                                : instance.resident_rank(d, h);
  }
  return ranks;
}

std::int64_t total_cost(const MatchingInstance& instance, const Matching& m) {
  std::int64_t cost = 0;
  for (const int r : per_resident_ranks(instance, m)) cost += r;
  return cost;
}

StabilityReport find_blocking_pairs(const MatchingInstance& instance,
                                    const ExpansionVector& t,
                                    const Matching& m) {
  const int num_h = instance.total_hospitals();
  // Worst (largest) hospital rank among each roster; -1 for empty rosters.
  std::vector<int> worst(num_h, -1);
  for (int h = 0; h < num_h; ++h) {
    for (const int d : m.rosters[h])
      worst[h] = std::max(worst[h], instance.hospital_rank(h, d));
  }

  StabilityReport report;
  for (int d = 0; d < instance.num_residents(); ++d) {
    const int current = m.assignment[d];
    for (const int h : instance.resident_prefs(d)) {
      if (h == current) break;  // only strictly preferred hospitals
      const bool has_room =
          static_cast<int>(m.rosters[h].size()) < instance.quota(h) + t[h];
      if (has_room || instance.hospital_rank(h, d) < worst[h])
        report.blocking_pairs.push_back({d, h});
    }
  }
  report.stable = report.blocking_pairs.empty();
  return report;
}

}  // namespace stable_expand
