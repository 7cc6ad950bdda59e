#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stable_expand/instance.hpp"

namespace stable_expand {

// Ways of laying the expansion set out as a tree.
//   kIterative: each edge adds one seat to one hospital; leaves at depth B.
//   kIpt:       as kIterative, but edge labels along a path are nonincreasing.
//   kBatch:     depth k fixes the seat count of the k-th ordered hospital.
enum class Representation { kIterative, kIpt, kBatch };
enum class OrderingKind { kRandom, kPopularity, kEnvy };

std::string_view to_string(Representation rep);
std::string_view to_string(OrderingKind kind);

struct HospitalOrdering {
  OrderingKind kind = OrderingKind::kPopularity;
  // All hospital ids, most important first. The dummy, if any, is last.
  std::vector<int> permutation;
  std::uint64_t seed = 0;  // meaningful for kRandom only
};

// A node is identified by its edge labels from the root. For the iterative
// and priority trees a label is a 1-based position in the ordering; for the
// batch tree it is a seat count.
struct TreePath {
  Representation representation = Representation::kBatch;
  std::vector<int> labels;

  bool operator==(const TreePath&) const = default;
};

// Borda-style score sum_d rank_d(h); smaller is more popular. Hospitals a
// resident did not rank count as total_hospitals() + 1.
std::vector<std::int64_t> popularity_scores(const MatchingInstance& instance);

// Number of residents preferring h to their match in `base` (DA with no
// expansion when omitted). Unassigned residents rank their match at
// unassigned_rank(); unranked hospitals are never envied.
std::vector<int> envy_scores(const MatchingInstance& instance);
std::vector<int> envy_scores(const MatchingInstance& instance,
                             const Matching& base);

// Popularity sorts ascending, envy descending, random is a seeded uniform
// shuffle. Ties go to the smaller hospital id; the dummy is always last.
// `base` is the DA(0) matching used by the envy ordering; it is recomputed
// when not supplied.
HospitalOrdering make_ordering(const MatchingInstance& instance,
                               OrderingKind kind, std::uint64_t seed,
                               const Matching* base = nullptr);

// Walks one root-to-node path and tracks the induced expansion. Holds
// references to `instance` and `ordering`, which must outlive it.
class TreeCursor {
 public:
  TreeCursor(const MatchingInstance& instance, const HospitalOrdering& ordering,
             Representation rep);

  void reset();
  // Throws std::invalid_argument if `label` is not a child of the current node.
  void descend(int label);
  // Undoes the last descend().
  void ascend();

  bool is_leaf() const;
  // Empty exactly at leaves (given sum b_h >= B).
  std::vector<int> child_labels() const;

  int depth() const noexcept { return static_cast<int>(labels_.size()); }
  int seats() const noexcept { return seats_; }
  std::span<const int> labels() const noexcept { return labels_; }
  const ExpansionVector& expansion() const noexcept { return expansion_; }
  Representation representation() const noexcept { return rep_; }

 private:
  int limit_at(int position) const;
  int extras_at(int position) const;
  // Seats still placeable at positions [0, last_position] after a move.
  std::int64_t room_up_to(int last_position) const;

  const MatchingInstance* instance_;
  const HospitalOrdering* ordering_;
  Representation rep_;
  int positions_;  // real hospitals; the dummy never branches
  std::vector<int> labels_;
  ExpansionVector expansion_;
  int seats_ = 0;
};

std::vector<TreePath> children(const MatchingInstance& instance,
                               const HospitalOrdering& ordering,
                               const TreePath& path);

ExpansionVector node_to_expansion(const HospitalOrdering& ordering,
                                  const TreePath& path);

// Expansions of all leaves in depth-first order (children visited in label
// order). Throws GuardExceeded beyond `guard` leaves.
std::vector<ExpansionVector> enumerate_leaves(const MatchingInstance& instance,
                                              const HospitalOrdering& ordering,
                                              Representation rep,
                                              std::size_t guard = 1'000'000);

}  // namespace stable_expand
