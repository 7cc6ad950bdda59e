#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stable_expand/instance.hpp"

namespace stable_expand {

/// Synthetic instance with correlated resident preferences and no per-hospital
/// expansion limit (b_h = B).
///
/// Draw order from the seeded stream: quota composition, hospital orders
/// (hospital 0 first), the common score vector, then each resident's private
/// score vector. Quotas are a uniform composition of D into H positive parts.
/// Resident d ranks hospitals by (1 - alpha) * p_d + alpha * p_common, highest
/// score first, ties to the smaller id.
///
/// Throws std::invalid_argument unless 1 <= H <= D, B >= 0, alpha in [0, 1].
MatchingInstance generate_set1(int num_residents, int num_hospitals, int budget,
                               double alpha, std::uint64_t seed);

/// As generate_set1, then b_h drawn uniformly from {0, ..., B - 1} and
/// redrawn as a whole until B <= sum b_h < B * H. Requires B >= 2; throws
/// InfeasibleError after 100000 rejected draws.
MatchingInstance generate_set2(int num_residents, int num_hospitals, int budget,
                               double alpha, std::uint64_t seed);

// Base quotas proportional to `capacities`, summing to exactly
// `num_residents`, each at least 1 (largest-remainder rounding).
std::vector<int> proportional_quotas(std::span<const int> capacities,
                                     int num_residents);

/// Partial-preference instance completed with a dummy hospital.
///
/// Each resident applies to a uniform random subset of
/// `applications_per_resident` hospitals in uniform random order. Hospital h
/// admits at most capacities[h] residents: q_h comes from proportional_quotas
/// and b_h = max(0, capacities[h] - q_h). Draw order: hospital orders, then
/// each resident's applications.
MatchingInstance generate_partial(int num_residents, int num_hospitals,
                                  int applications_per_resident,
                                  std::span<const int> capacities, int budget,
                                  std::uint64_t seed);

}  // namespace stable_expand
