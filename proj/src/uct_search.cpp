#include "stable_expand/uct_search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "stable_expand/deferred_acceptance.hpp"
#include "stable_expand/errors.hpp"

namespace stable_expand {
namespace {

constexpr std::uint64_t kSearchStreamOffset = 0x9E3779B97F4A7C15ULL;

const MatchingInstance& checked(const MatchingInstance& instance) {
  if (instance.total_expansion_limit() < instance.budget())
    throw InfeasibleError("budget exceeds the sum of expansion limits");
  if (auto violations = validate(instance); !violations.empty())
    throw ValidationError(std::move(violations));
  return instance;
}

}  // namespace

double ucb_value(double child_value_sum, std::int64_t child_visits,
                 std::int64_t parent_visits, double exploration) {
  if (child_visits == 0) return std::numeric_limits<double>::infinity();
  const double mean = child_value_sum / static_cast<double>(child_visits);
  return mean + exploration * std::sqrt(std::log(static_cast<double>(parent_visits)) /
                                        static_cast<double>(child_visits));
}

double reward(std::int64_t cost, std::int64_t baseline_cost) {
  if (baseline_cost <= 0)
    throw std::invalid_argument("baseline cost must be positive");
  return static_cast<double>(baseline_cost - cost) /
         static_cast<double>(baseline_cost);
}

UctSearch::UctSearch(const MatchingInstance& instance, SearchConfig config)
    : instance_(checked(instance)),
      config_(config),
      rng_(config.seed + kSearchStreamOffset),
      baseline_matching_(run_da(
          instance, ExpansionVector::zeros(instance.total_hospitals()))),
      ordering_(make_ordering(instance, config.ordering, config.seed,
                              &baseline_matching_)),
      cursor_(instance, ordering_, config.representation) {
  if (config_.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (config_.exploration < 0.0)
    throw std::invalid_argument("exploration must be non-negative");
}

UctSearch::NodeView UctSearch::node(int id) const {
  const Node& n = nodes_.at(id);
  NodeView view;
  view.path.representation = config_.representation;
  for (int cur = id; nodes_[cur].parent != -1; cur = nodes_[cur].parent)
    view.path.labels.push_back(nodes_[cur].label);
  std::reverse(view.path.labels.begin(), view.path.labels.end());
  view.parent = n.parent;
  view.value_sum = n.value_sum;
  view.visits = n.visits;
  view.evaluated = n.evaluated;
  view.in_tree = n.in_tree;
  view.leaf = n.leaf;
  return view;
}

std::optional<std::int64_t> UctSearch::cached_cost(
    const ExpansionVector& t) const {
  if (auto it = cache_.find(t); it != cache_.end()) return it->second;
  return std::nullopt;
}

void UctSearch::initialize(int id) {
  Node& n = nodes_[id];
  if (n.initialized) return;
  n.initialized = true;
  n.leaf = cursor_.is_leaf();
  n.child_labels = cursor_.child_labels();
  n.child_ids.assign(n.child_labels.size(), -1);
  n.pending = static_cast<int>(n.child_labels.size());
}

int UctSearch::child(int id, std::size_t index) {
  if (nodes_[id].child_ids[index] != -1) return nodes_[id].child_ids[index];
  Node fresh;
  fresh.parent = id;
  fresh.label = nodes_[id].child_labels[index];
  nodes_.push_back(std::move(fresh));
  const int created = static_cast<int>(nodes_.size()) - 1;
  nodes_[id].child_ids[index] = created;
  return created;
}

bool UctSearch::child_evaluated(const Node& n, std::size_t index) const {
  const int id = n.child_ids[index];
  return id != -1 && nodes_[id].evaluated;
}

std::int64_t UctSearch::evaluate(const ExpansionVector& t) {
  if (auto it = cache_.find(t); it != cache_.end()) return it->second;
  Matching m = run_da(instance_, t);
  const std::int64_t cost = total_cost(instance_, m);
  ++evaluations_;
  cache_.emplace(t, cost);
  if (cost < result_.best_cost) {
    result_.best_cost = cost;
    result_.best_expansion = t;
    result_.best_matching = std::move(m);
  }
  return cost;
}

void UctSearch::mark_evaluated(int id) {
  if (nodes_[id].evaluated) return;
  nodes_[id].evaluated = true;
  for (int p = nodes_[id].parent; p != -1; p = nodes_[p].parent) {
    Node& parent = nodes_[p];
    if (--parent.pending > 0 || parent.evaluated) break;
    parent.evaluated = true;
  }
}

int UctSearch::select_child(int id) {
  const Node& n = nodes_[id];
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < n.child_labels.size(); ++i) {
    if (child_evaluated(n, i)) continue;
    const int cid = n.child_ids[i];
    const double value =
        cid == -1 || !nodes_[cid].in_tree
            ? std::numeric_limits<double>::infinity()
            : ucb_value(nodes_[cid].value_sum, nodes_[cid].visits, n.visits,
                        config_.exploration);
    if (value > best) {
      best = value;
      ties.clear();
    }
    if (value == best) ties.push_back(i);
  }
  if (ties.empty())
    throw std::logic_error("selection reached a node without open children");
  const std::size_t pick =
      ties.size() == 1 ? ties.front() : ties[rng_.uniform_index(ties.size())];
  return child(id, pick);
}

void UctSearch::record_trajectory(std::int64_t round) {
  result_.trajectory.push_back({round, result_.best_cost, evaluations_});
}

SearchResult UctSearch::run() {
  if (ran_) throw std::logic_error("UctSearch::run() called twice");
  ran_ = true;

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const auto zeros = ExpansionVector::zeros(instance_.total_hospitals());
  baseline_cost_ = total_cost(instance_, baseline_matching_);
  cache_.emplace(zeros, baseline_cost_);
  evaluations_ = 1;
  result_.best_cost = baseline_cost_;
  result_.best_expansion = zeros;
  result_.best_matching = baseline_matching_;
  result_.ordering = ordering_;

  nodes_.clear();
  nodes_.emplace_back();
  nodes_[0].in_tree = true;
  cursor_.reset();
  initialize(0);
  if (nodes_[0].leaf) mark_evaluated(0);
  record_trajectory(0);

  std::vector<std::size_t> open;
  for (std::int64_t round = 1; round <= config_.rounds; ++round) {
    if (nodes_[0].evaluated) break;
    if (config_.time_limit && Clock::now() - start >= *config_.time_limit) break;

    // Selection and development.
    cursor_.reset();
    int current = 0;
    int developed = -1;
    while (developed == -1) {
      const int next = select_child(current);
      cursor_.descend(nodes_[next].label);
      initialize(next);
      if (!nodes_[next].in_tree) {
        nodes_[next].in_tree = true;
        developed = next;
      }
      current = next;
    }

    // Simulation.
    int leaf = developed;
    while (!nodes_[leaf].leaf) {
      open.clear();
      const Node& n = nodes_[leaf];
      for (std::size_t i = 0; i < n.child_labels.size(); ++i)
        if (!child_evaluated(n, i)) open.push_back(i);
      const std::size_t pick =
          open.size() == 1 ? open.front() : open[rng_.uniform_index(open.size())];
      const int next = child(leaf, pick);
      cursor_.descend(nodes_[next].label);
      initialize(next);
      leaf = next;
    }
    const std::int64_t cost = evaluate(cursor_.expansion());
    const double value = reward(cost, baseline_cost_);
    mark_evaluated(leaf);

    // Backpropagation.
    for (int id = developed; id != -1; id = nodes_[id].parent) {
      nodes_[id].value_sum += value;
      nodes_[id].visits += 1;
    }

    result_.rounds_run = round;
    record_trajectory(round);
    if (config_.record_rounds) round_log_.push_back({developed, leaf, value});
  }

  result_.terminated_exhaustively = nodes_[0].evaluated;
  result_.da_evaluations = evaluations_;
  return result_;
}

SearchResult search(const MatchingInstance& instance,
                    const SearchConfig& config) {
  UctSearch searcher(instance, config);
  return searcher.run();
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory) {
  std::string out = "round,incumbent_cost,da_evaluations\n";
  for (const auto& p : trajectory)
    out += fmt::format("{},{},{}\n", p.round, p.incumbent_cost, p.da_evaluations);
  return out;
}

}  // namespace stable_expand
