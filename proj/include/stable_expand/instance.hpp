#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stable_expand {

inline constexpr int kUnassigned = -1;

// Raw fields of a residency-match instance. Ids are 0-based. When
// `dummy_hospital` is set the per-hospital arrays carry one extra trailing
// entry (index num_hospitals) for the dummy.
struct InstanceData {
  int num_residents = 0;
  int num_hospitals = 0;
  std::vector<std::vector<int>> resident_prefs;  // most preferred first
  std::vector<std::vector<int>> hospital_prefs;  // most preferred first
  std::vector<int> quotas;
  std::vector<int> expansion_limits;
  int budget = 0;
  bool dummy_hospital = false;
  std::optional<std::int64_t> seed;

  bool operator==(const InstanceData&) const = default;
};

// Immutable instance with rank lookup tables. Construction never throws on
// semantic problems so that `validate` can report them; out-of-range ids are
// simply left out of the lookup tables.
class MatchingInstance {
 public:
  explicit MatchingInstance(InstanceData data);

  const InstanceData& data() const noexcept { return data_; }

  int num_residents() const noexcept { return data_.num_residents; }
  // Real hospitals only.
  int num_hospitals() const noexcept { return data_.num_hospitals; }
  // Real hospitals plus the dummy, if any.
  int total_hospitals() const noexcept {
    return data_.num_hospitals + (data_.dummy_hospital ? 1 : 0);
  }
  bool has_dummy() const noexcept { return data_.dummy_hospital; }
  int dummy_id() const noexcept {
    return data_.dummy_hospital ? data_.num_hospitals : -1;
  }
  int budget() const noexcept { return data_.budget; }
  int quota(int h) const { return data_.quotas[h]; }
  int expansion_limit(int h) const { return data_.expansion_limits[h]; }
  std::span<const int> quotas() const noexcept { return data_.quotas; }
  std::span<const int> expansion_limits() const noexcept {
    return data_.expansion_limits;
  }

  std::span<const int> resident_prefs(int d) const {
    return data_.resident_prefs[d];
  }
  std::span<const int> hospital_prefs(int h) const {
    return data_.hospital_prefs[h];
  }

  // 1-based rank of hospital h in resident d's list; 0 if d did not rank h.
  int resident_rank(int d, int h) const {
    return resident_rank_[static_cast<std::size_t>(d) * total_hospitals() + h];
  }
  bool ranks(int d, int h) const { return resident_rank(d, h) > 0; }

  // 0-based position of resident d in hospital h's order (smaller = better).
  int hospital_rank(int h, int d) const {
    return hospital_rank_[static_cast<std::size_t>(h) * num_residents() + d];
  }

  // Cost charged for an unassigned resident: one worse than any real rank.
  int unassigned_rank() const noexcept { return num_hospitals() + 1; }

  std::int64_t total_expansion_limit() const;

 private:
  InstanceData data_;
  std::vector<int> resident_rank_;
  std::vector<int> hospital_rank_;
};

// Per-hospital extra seats. Sized to total_hospitals(); the dummy's entry is
// always zero.
struct ExpansionVector {
  std::vector<int> extras;

  ExpansionVector() = default;
  explicit ExpansionVector(std::vector<int> values) : extras(std::move(values)) {}
  static ExpansionVector zeros(int num_hospitals) {
    return ExpansionVector(std::vector<int>(num_hospitals, 0));
  }

  std::size_t size() const noexcept { return extras.size(); }
  int operator[](std::size_t h) const { return extras[h]; }
  int& operator[](std::size_t h) { return extras[h]; }
  int total() const;
  // Pointwise <=.
  bool dominated_by(const ExpansionVector& other) const;

  auto operator<=>(const ExpansionVector&) const = default;
};

struct ExpansionVectorHash {
  std::size_t operator()(const ExpansionVector& t) const noexcept;
};

std::string to_string(const ExpansionVector& t);

// Membership in the feasible expansion set: sized correctly, 0 <= t_h <= b_h,
// sum t_h <= B.
bool in_theta(const MatchingInstance& instance, const ExpansionVector& t);

struct Matching {
  std::vector<int> assignment;            // hospital id or kUnassigned
  std::vector<std::vector<int>> rosters;  // ascending resident ids

  static Matching empty(const MatchingInstance& instance);
  // Builds rosters from a per-resident assignment.
  static Matching from_assignment(const MatchingInstance& instance,
                                  std::vector<int> assignment);

  bool operator==(const Matching&) const = default;
};

// Report-style check; an empty result means the instance is valid.
std::vector<std::string> validate(const MatchingInstance& instance);

// Appends a dummy hospital (quota D, limit 0) ranked by each resident right
// after its last applied hospital. Throws std::invalid_argument if the
// instance already has one.
MatchingInstance complete_with_dummy(const MatchingInstance& instance);

// JSON serialization. File ids are 1-based.
MatchingInstance load_instance(std::string_view document);
std::string save_instance(const MatchingInstance& instance);

MatchingInstance read_instance_file(const std::filesystem::path& path);
// Writes through a temporary file and renames it into place.
void write_text_file_atomic(const std::filesystem::path& path,
                            std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace stable_expand
