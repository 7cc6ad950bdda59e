#include "stable_expand/expansion_space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "stable_expand/deferred_acceptance.hpp"
#include "stable_expand/errors.hpp"
#include "stable_expand/random.hpp"

namespace stable_expand {

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::kIterative: return "iterative";
    case Representation::kIpt: return "ipt";
    case Representation::kBatch: return "bt";
  }
  return "?";
}

std::string_view to_string(OrderingKind kind) {
  switch (kind) {
    case OrderingKind::kRandom: return "random";
    case OrderingKind::kPopularity: return "popularity";
    case OrderingKind::kEnvy: return "envy";
  }
  return "?";
}

std::vector<std::int64_t> popularity_scores(const MatchingInstance& instance) {
  const int num_h = instance.total_hospitals();
  const int unranked = num_h + 1;
  std::vector<std::int64_t> scores(num_h, 0);
  for (int d = 0; d < instance.num_residents(); ++d) {
    for (int h = 0; h < num_h; ++h) {
      const int r = instance.resident_rank(d, h);
      scores[h] += r > 0 ? r : unranked;
    }
  }
  return scores;
}

std::vector<int> envy_scores(const MatchingInstance& instance,
                             const Matching& base) {
  std::vector<int> scores(instance.total_hospitals(), 0);
  for (int d = 0; d < instance.num_residents(); ++d) {
    const int matched = base.assignment[d];
    const int current = matched == kUnassigned
                            ? instance.unassigned_rank()
                            : instance.resident_rank(d, matched);
    // Hospitals listed before position `current` are exactly the envied ones.
    const auto prefs = instance.resident_prefs(d);
    const int limit = std::min<int>(current - 1, prefs.size());
    for (int k = 0; k < limit; ++k) ++scores[prefs[k]];
  }
  return scores;
}

std::vector<int> envy_scores(const MatchingInstance& instance) {
  return envy_scores(
      instance,
      run_da(instance, ExpansionVector::zeros(instance.total_hospitals())));
}

HospitalOrdering make_ordering(const MatchingInstance& instance,
                               OrderingKind kind, std::uint64_t seed,
                               const Matching* base) {
  HospitalOrdering ordering;
  ordering.kind = kind;
  ordering.seed = seed;
  auto& perm = ordering.permutation;
  perm.resize(instance.num_hospitals());
  std::iota(perm.begin(), perm.end(), 0);

  switch (kind) {
    case OrderingKind::kRandom: {
      Rng rng(seed);
      rng.shuffle(std::span<int>(perm));
      break;
    }
    case OrderingKind::kPopularity: {
      const auto scores = popularity_scores(instance);
      std::stable_sort(perm.begin(), perm.end(),
                       [&](int a, int b) { return scores[a] < scores[b]; });
      break;
    }
    case OrderingKind::kEnvy: {
      const auto scores =
          base ? envy_scores(instance, *base) : envy_scores(instance);
      std::stable_sort(perm.begin(), perm.end(),
                       [&](int a, int b) { return scores[a] > scores[b]; });
      break;
    }
  }
  if (instance.has_dummy()) perm.push_back(instance.dummy_id());
  return ordering;
}

TreeCursor::TreeCursor(const MatchingInstance& instance,
                       const HospitalOrdering& ordering, Representation rep)
    : instance_(&instance),
      ordering_(&ordering),
      rep_(rep),
      positions_(instance.num_hospitals()),
      expansion_(ExpansionVector::zeros(instance.total_hospitals())) {
  if (static_cast<int>(ordering.permutation.size()) !=
      instance.total_hospitals())
    throw std::invalid_argument("ordering does not cover every hospital");
}

void TreeCursor::reset() {
  labels_.clear();
  std::fill(expansion_.extras.begin(), expansion_.extras.end(), 0);
  seats_ = 0;
}

int TreeCursor::limit_at(int position) const {
  return instance_->expansion_limit(ordering_->permutation[position]);
}

int TreeCursor::extras_at(int position) const {
  return expansion_[ordering_->permutation[position]];
}

std::int64_t TreeCursor::room_up_to(int last_position) const {
  std::int64_t room = 0;
  for (int p = 0; p <= last_position; ++p)
    room += limit_at(p) - extras_at(p);
  return room;
}

bool TreeCursor::is_leaf() const {
  const int budget = instance_->budget();
  if (rep_ == Representation::kBatch)
    return seats_ == budget || depth() == positions_;
  return depth() == budget;
}

std::vector<int> TreeCursor::child_labels() const {
  std::vector<int> out;
  if (is_leaf()) return out;
  const int budget = instance_->budget();

  if (rep_ == Representation::kBatch) {
    const int most = std::min(limit_at(depth()), budget - seats_);
    out.reserve(most + 1);
    for (int s = 0; s <= most; ++s) out.push_back(s);
    return out;
  }

  // One seat per edge. A child is kept only if the remaining seats can still
  // be placed below it, so every non-leaf has at least one child.
  const int max_label = rep_ == Representation::kIpt && !labels_.empty()
                            ? labels_.back()
                            : positions_;
  const std::int64_t still_needed = budget - depth() - 1;
  std::int64_t room = 0;  // prefix room over positions [0, p]
  std::int64_t total_room = room_up_to(positions_ - 1);
  for (int p = 0; p < max_label; ++p) {
    const int free_seats = limit_at(p) - extras_at(p);
    room += free_seats;
    if (free_seats <= 0) continue;
    const std::int64_t after =
        (rep_ == Representation::kIpt ? room : total_room) - 1;
    if (after >= still_needed) out.push_back(p + 1);
  }
  return out;
}

void TreeCursor::descend(int label) {
  const auto options = child_labels();
  if (std::find(options.begin(), options.end(), label) == options.end())
    throw std::invalid_argument(fmt::format(
        "label {} is not a child at depth {} of the {} tree", label, depth(),
        to_string(rep_)));
  if (rep_ == Representation::kBatch) {
    expansion_[ordering_->permutation[depth()]] = label;
    seats_ += label;
  } else {
    ++expansion_[ordering_->permutation[label - 1]];
    ++seats_;
  }
  labels_.push_back(label);
}

void TreeCursor::ascend() {
  if (labels_.empty()) throw std::logic_error("ascend() at the root");
  const int label = labels_.back();
  labels_.pop_back();
  if (rep_ == Representation::kBatch) {
    expansion_[ordering_->permutation[depth()]] = 0;
    seats_ -= label;
  } else {
    --expansion_[ordering_->permutation[label - 1]];
    --seats_;
  }
}

std::vector<TreePath> children(const MatchingInstance& instance,
                               const HospitalOrdering& ordering,
                               const TreePath& path) {
  TreeCursor cursor(instance, ordering, path.representation);
  for (const int label : path.labels) cursor.descend(label);
  std::vector<TreePath> out;
  for (const int label : cursor.child_labels()) {
    TreePath child = path;
    child.labels.push_back(label);
    out.push_back(std::move(child));
  }
  return out;
}

ExpansionVector node_to_expansion(const HospitalOrdering& ordering,
                                  const TreePath& path) {
  auto t = ExpansionVector::zeros(static_cast<int>(ordering.permutation.size()));
  if (path.representation == Representation::kBatch) {
    for (std::size_t k = 0; k < path.labels.size(); ++k)
      t[ordering.permutation.at(k)] = path.labels[k];
  } else {
    for (const int label : path.labels) ++t[ordering.permutation.at(label - 1)];
  }
  return t;
}

namespace {

void collect_leaves(TreeCursor& cursor, std::size_t guard,
                    std::vector<ExpansionVector>& out) {
  if (cursor.is_leaf()) {
    if (out.size() >= guard)
      throw GuardExceeded(
          fmt::format("tree has more than {} leaves", guard));
    out.push_back(cursor.expansion());
    return;
  }
  for (const int label : cursor.child_labels()) {
    cursor.descend(label);
    collect_leaves(cursor, guard, out);
    cursor.ascend();
  }
}

}  // namespace

std::vector<ExpansionVector> enumerate_leaves(const MatchingInstance& instance,
                                              const HospitalOrdering& ordering,
                                              Representation rep,
                                              std::size_t guard) {
  TreeCursor cursor(instance, ordering, rep);
  std::vector<ExpansionVector> out;
  collect_leaves(cursor, guard, out);
  return out;
}

}  // namespace stable_expand
