#include "stable_expand/instance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/container_hash/hash.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "stable_expand/errors.hpp"

namespace stable_expand {

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(fmt::format("invalid instance: {}", fmt::join(violations, "; "))),
      violations_(std::move(violations)) {}

MatchingInstance::MatchingInstance(InstanceData data) : data_(std::move(data)) {
  const int num_d = std::max(0, data_.num_residents);
  const int num_h = std::max(0, total_hospitals());
  resident_rank_.assign(static_cast<std::size_t>(num_d) * num_h, 0);
  hospital_rank_.assign(static_cast<std::size_t>(num_h) * num_d, num_d);

  const int rd = std::min<int>(num_d, data_.resident_prefs.size());
  for (int d = 0; d < rd; ++d) {
    const auto& prefs = data_.resident_prefs[d];
    for (std::size_t k = 0; k < prefs.size(); ++k) {
      const int h = prefs[k];
      if (h < 0 || h >= num_h) continue;
      int& slot = resident_rank_[static_cast<std::size_t>(d) * num_h + h];
      if (slot == 0) slot = static_cast<int>(k) + 1;
    }
  }
  const int rh = std::min<int>(num_h, data_.hospital_prefs.size());
  for (int h = 0; h < rh; ++h) {
    const auto& order = data_.hospital_prefs[h];
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int d = order[k];
      if (d < 0 || d >= num_d) continue;
      int& slot = hospital_rank_[static_cast<std::size_t>(h) * num_d + d];
      if (slot == num_d) slot = static_cast<int>(k);
    }
  }
}

std::int64_t MatchingInstance::total_expansion_limit() const {
  return std::accumulate(data_.expansion_limits.begin(),
                         data_.expansion_limits.end(), std::int64_t{0});
}

int ExpansionVector::total() const {
  return std::accumulate(extras.begin(), extras.end(), 0);
}

bool ExpansionVector::dominated_by(const ExpansionVector& other) const {
  if (size() != other.size()) return false;
  for (std::size_t h = 0; h < size(); ++h) {
    if (extras[h] > other.extras[h]) return false;
  }
  return true;
}

std::size_t ExpansionVectorHash::operator()(
    const ExpansionVector& t) const noexcept {
  return boost::hash_range(t.extras.begin(), t.extras.end());
}

std::string to_string(const ExpansionVector& t) {
  return fmt::format("({})", fmt::join(t.extras, ","));
}

bool in_theta(const MatchingInstance& instance, const ExpansionVector& t) {
  if (static_cast<int>(t.size()) != instance.total_hospitals()) return false;
  std::int64_t sum = 0;
  for (int h = 0; h < instance.total_hospitals(); ++h) {
    if (t[h] < 0 || t[h] > instance.expansion_limit(h)) return false;
    sum += t[h];
  }
  return sum <= instance.budget();
}

Matching Matching::empty(const MatchingInstance& instance) {
  return from_assignment(
      instance, std::vector<int>(instance.num_residents(), kUnassigned));
}

Matching Matching::from_assignment(const MatchingInstance& instance,
                                   std::vector<int> assignment) {
  Matching m;
  m.rosters.resize(instance.total_hospitals());
  for (int d = 0; d < static_cast<int>(assignment.size()); ++d) {
    const int h = assignment[d];
    if (h != kUnassigned) m.rosters.at(h).push_back(d);
  }
  m.assignment = std::move(assignment);
  return m;
}

std::vector<std::string> validate(const MatchingInstance& instance) {
  const InstanceData& in = instance.data();
  std::vector<std::string> out;
  auto report = [&out](std::string msg) { out.push_back(std::move(msg)); };

  if (in.num_residents < 1) report("num_residents must be positive");
  if (in.num_hospitals < 1) report("num_hospitals must be positive");
  if (!out.empty()) return out;

  const int num_d = in.num_residents;
  const int num_h = instance.total_hospitals();

  if (static_cast<int>(in.quotas.size()) != num_h)
    report(fmt::format("quotas: expected {} entries, got {}", num_h,
                       in.quotas.size()));
  if (static_cast<int>(in.expansion_limits.size()) != num_h)
    report(fmt::format("expansion_limits: expected {} entries, got {}", num_h,
                       in.expansion_limits.size()));
  if (static_cast<int>(in.resident_prefs.size()) != num_d)
    report(fmt::format("resident_prefs: expected {} lists, got {}", num_d,
                       in.resident_prefs.size()));
  if (static_cast<int>(in.hospital_prefs.size()) != num_h)
    report(fmt::format("hospital_prefs: expected {} lists, got {}", num_h,
                       in.hospital_prefs.size()));
  if (!out.empty()) return out;

  for (int h = 0; h < num_h; ++h) {
    if (in.quotas[h] < 0)
      report(fmt::format("hospital {}: negative quota", h + 1));
    if (in.expansion_limits[h] < 0)
      report(fmt::format("hospital {}: negative expansion limit", h + 1));
  }
  if (in.budget < 0) report("budget must be non-negative");

  for (int d = 0; d < num_d; ++d) {
    const auto& prefs = in.resident_prefs[d];
    if (prefs.empty()) {
      report(fmt::format("resident {}: ranks no hospital", d + 1));
      continue;
    }
    std::vector<char> seen(num_h, 0);
    for (const int h : prefs) {
      if (h < 0 || h >= num_h) {
        report(fmt::format("resident {}: hospital id {} out of range", d + 1,
                           h + 1));
      } else if (seen[h]) {
        report(fmt::format("resident {}: duplicate rank entry for hospital {}",
                           d + 1, h + 1));
      } else {
        seen[h] = 1;
      }
    }
  }

  for (int h = 0; h < num_h; ++h) {
    const auto& order = in.hospital_prefs[h];
    std::vector<char> seen(num_d, 0);
    bool ok = static_cast<int>(order.size()) == num_d;
    for (const int d : order) {
      if (d < 0 || d >= num_d || seen[d]) {
        ok = false;
        break;
      }
      seen[d] = 1;
    }
    if (!ok)
      report(fmt::format(
          "hospital {}: preference order is not a permutation of all residents",
          h + 1));
  }

  if (in.dummy_hospital) {
    const int dummy = instance.dummy_id();
    if (in.quotas[dummy] < num_d)
      report("dummy hospital: quota must be at least num_residents");
    if (in.expansion_limits[dummy] != 0)
      report("dummy hospital: expansion limit must be 0");
  }

  if (in.budget > instance.total_expansion_limit())
    report(fmt::format("budget: B > sum of b_h ({} > {})", in.budget,
                       instance.total_expansion_limit()));
  return out;
}

MatchingInstance complete_with_dummy(const MatchingInstance& instance) {
  if (instance.has_dummy())
    throw std::invalid_argument("instance already contains a dummy hospital");
  InstanceData data = instance.data();
  const int dummy = data.num_hospitals;
  for (auto& prefs : data.resident_prefs) prefs.push_back(dummy);
  std::vector<int> identity(data.num_residents);
  std::iota(identity.begin(), identity.end(), 0);
  data.hospital_prefs.push_back(std::move(identity));
  data.quotas.push_back(data.num_residents);
  data.expansion_limits.push_back(0);
  data.dummy_hospital = true;
  return MatchingInstance(std::move(data));
}

}  // namespace stable_expand
