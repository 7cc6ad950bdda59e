#include "stable_expand/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "stable_expand/errors.hpp"
#include "stable_expand/random.hpp"

namespace stable_expand {
namespace {

constexpr int kMaxLimitDraws = 100'000;

void check_common(int num_residents, int num_hospitals, int budget) {
  if (num_residents < 1) throw std::invalid_argument("num_residents must be >= 1");
  if (num_hospitals < 1) throw std::invalid_argument("num_hospitals must be >= 1");
  if (num_hospitals > num_residents)
    throw std::invalid_argument("num_hospitals must not exceed num_residents");
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
}

// Uniform composition of `total` into `parts` positive integers: choose
// parts - 1 distinct cut points in {1, ..., total - 1}.
std::vector<int> random_composition(Rng& rng, int total, int parts) {
  std::vector<int> points(total - 1);
  std::iota(points.begin(), points.end(), 1);
  const int cuts = parts - 1;
  for (int i = 0; i < cuts; ++i) {
    const int j = i + static_cast<int>(rng.uniform_index(points.size() - i));
    std::swap(points[i], points[j]);
  }
  std::vector<int> chosen(points.begin(), points.begin() + cuts);
  std::sort(chosen.begin(), chosen.end());
  std::vector<int> out;
  out.reserve(parts);
  int prev = 0;
  for (const int c : chosen) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(total - prev);
  return out;
}

std::vector<std::vector<int>> random_hospital_orders(Rng& rng, int num_hospitals,
                                                     int num_residents) {
  std::vector<std::vector<int>> orders(num_hospitals);
  for (auto& order : orders) {
    order.resize(num_residents);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));
  }
  return orders;
}

InstanceData correlated_instance(int num_residents, int num_hospitals,
                                 int budget, double alpha, std::uint64_t seed,
                                 Rng& rng) {
  check_common(num_residents, num_hospitals, budget);
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha out of range [0, 1]");

  InstanceData data;
  data.num_residents = num_residents;
  data.num_hospitals = num_hospitals;
  data.budget = budget;
  data.seed = static_cast<std::int64_t>(seed);
  data.quotas = random_composition(rng, num_residents, num_hospitals);
  data.hospital_prefs = random_hospital_orders(rng, num_hospitals, num_residents);

  std::vector<double> common(num_hospitals);
  for (auto& p : common) p = rng.uniform_real();

  std::vector<double> score(num_hospitals);
  data.resident_prefs.resize(num_residents);
  for (auto& prefs : data.resident_prefs) {
    for (int h = 0; h < num_hospitals; ++h)
      score[h] = (1.0 - alpha) * rng.uniform_real() + alpha * common[h];
    prefs.resize(num_hospitals);
    std::iota(prefs.begin(), prefs.end(), 0);
    std::stable_sort(prefs.begin(), prefs.end(),
                     [&](int a, int b) { return score[a] > score[b]; });
  }
  data.expansion_limits.assign(num_hospitals, budget);
  return data;
}

}  // namespace

MatchingInstance generate_set1(int num_residents, int num_hospitals, int budget,
                               double alpha, std::uint64_t seed) {
  Rng rng(seed);
  return MatchingInstance(
      correlated_instance(num_residents, num_hospitals, budget, alpha, seed, rng));
}

MatchingInstance generate_set2(int num_residents, int num_hospitals, int budget,
                               double alpha, std::uint64_t seed) {
  if (budget < 2)
    throw std::invalid_argument("set 2 needs budget >= 2 so that b_h < B can sum to B");
  Rng rng(seed);
  InstanceData data =
      correlated_instance(num_residents, num_hospitals, budget, alpha, seed, rng);
  const std::int64_t upper = static_cast<std::int64_t>(budget) * num_hospitals;
  for (int draw = 0;; ++draw) {
    if (draw == kMaxLimitDraws)
      throw InfeasibleError(fmt::format(
          "no expansion limits with B <= sum b_h < B*H after {} draws",
          kMaxLimitDraws));
    std::int64_t sum = 0;
    for (auto& b : data.expansion_limits) {
      b = rng.uniform_int(0, budget - 1);
      sum += b;
    }
    if (sum >= budget && sum < upper) break;
  }
  return MatchingInstance(std::move(data));
}

std::vector<int> proportional_quotas(std::span<const int> capacities,
                                     int num_residents) {
  const int n = static_cast<int>(capacities.size());
  if (n == 0 || n > num_residents)
    throw std::invalid_argument("need 1 <= hospitals <= residents");
  const double total = std::accumulate(capacities.begin(), capacities.end(), 0.0);
  if (!(total > 0.0) ||
      std::any_of(capacities.begin(), capacities.end(), [](int a) { return a < 1; }))
    throw std::invalid_argument("capacities must be positive");

  std::vector<double> exact(n);
  std::vector<int> quotas(n);
  for (int h = 0; h < n; ++h) {
    exact[h] = capacities[h] * static_cast<double>(num_residents) / total;
    quotas[h] = std::max(1, static_cast<int>(std::floor(exact[h])));
  }
  int sum = std::accumulate(quotas.begin(), quotas.end(), 0);
  while (sum < num_residents) {
    int pick = 0;
    for (int h = 1; h < n; ++h)
      if (exact[h] - quotas[h] > exact[pick] - quotas[pick]) pick = h;
    ++quotas[pick];
    ++sum;
  }
  while (sum > num_residents) {
    int pick = -1;
    for (int h = 0; h < n; ++h) {
      if (quotas[h] <= 1) continue;
      if (pick == -1 || exact[h] - quotas[h] < exact[pick] - quotas[pick]) pick = h;
    }
    --quotas[pick];
    --sum;
  }
  return quotas;
}

MatchingInstance generate_partial(int num_residents, int num_hospitals,
                                  int applications_per_resident,
                                  std::span<const int> capacities, int budget,
                                  std::uint64_t seed) {
  check_common(num_residents, num_hospitals, budget);
  if (applications_per_resident < 1 || applications_per_resident > num_hospitals)
    throw std::invalid_argument("applications_per_resident must be in [1, H]");
  if (static_cast<int>(capacities.size()) != num_hospitals)
    throw std::invalid_argument("need one capacity per hospital");

  InstanceData data;
  data.num_residents = num_residents;
  data.num_hospitals = num_hospitals;
  data.budget = budget;
  data.seed = static_cast<std::int64_t>(seed);
  data.quotas = proportional_quotas(capacities, num_residents);
  data.expansion_limits.resize(num_hospitals);
  for (int h = 0; h < num_hospitals; ++h)
    data.expansion_limits[h] = std::max(0, capacities[h] - data.quotas[h]);
  const std::int64_t limit_sum = std::accumulate(
      data.expansion_limits.begin(), data.expansion_limits.end(), std::int64_t{0});
  if (budget > limit_sum)
    throw std::invalid_argument(fmt::format(
        "budget {} exceeds the expansion room {} left by the capacities", budget,
        limit_sum));

  Rng rng(seed);
  data.hospital_prefs = random_hospital_orders(rng, num_hospitals, num_residents);
  std::vector<int> pool(num_hospitals);
  data.resident_prefs.resize(num_residents);
  for (auto& prefs : data.resident_prefs) {
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates: a uniform subset in uniform order.
    for (int i = 0; i < applications_per_resident; ++i) {
      const int j = i + static_cast<int>(rng.uniform_index(num_hospitals - i));
      std::swap(pool[i], pool[j]);
    }
    prefs.assign(pool.begin(), pool.begin() + applications_per_resident);
  }
  return complete_with_dummy(MatchingInstance(std::move(data)));
}

}  // namespace stable_expand
