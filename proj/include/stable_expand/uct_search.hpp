#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stable_expand/expansion_space.hpp"
#include "stable_expand/instance.hpp"
#include "stable_expand/random.hpp"

namespace stable_expand {

inline const double kDefaultExploration = std::sqrt(0.002);

struct SearchConfig {
  std::int64_t rounds = 1000;
  double exploration = kDefaultExploration;
  Representation representation = Representation::kBatch;
  OrderingKind ordering = OrderingKind::kEnvy;
  std::uint64_t seed = 0;
  // Wall-clock cap; runs stopped by it are not reproducible.
  std::optional<std::chrono::duration<double>> time_limit;
  // Keep a per-round log (developed node, reward) for replay checks.
  bool record_rounds = false;
};

struct TrajectoryPoint {
  std::int64_t round = 0;
  std::int64_t incumbent_cost = 0;
  std::int64_t da_evaluations = 0;

  bool operator==(const TrajectoryPoint&) const = default;
};

struct SearchResult {
  ExpansionVector best_expansion;
  std::int64_t best_cost = 0;
  Matching best_matching;
  // Round 0 is the no-expansion baseline computed before the first round.
  std::vector<TrajectoryPoint> trajectory;
  bool terminated_exhaustively = false;
  std::int64_t rounds_run = 0;
  std::int64_t da_evaluations = 0;
  HospitalOrdering ordering;
};

// UCB of a child; +infinity for an unvisited child. Natural log.
double ucb_value(double child_value_sum, std::int64_t child_visits,
                 std::int64_t parent_visits, double exploration);

// Relative improvement over the no-expansion cost: (c0 - c) / c0.
// Throws std::invalid_argument when baseline_cost is not positive.
double reward(std::int64_t cost, std::int64_t baseline_cost);

/// Upper-confidence tree over one tree representation of the expansion set.
///
/// Each round selects by maximum UCB among children not yet marked evaluated,
/// adds the first node outside the developed tree, rolls out uniformly at
/// random through non-evaluated children to a leaf, evaluates that leaf with
/// DA, and backs the reward up from the added node to the root. Leaf costs
/// are cached by expansion vector, so each distinct expansion runs DA once.
/// A leaf is marked evaluated once its cost is known, and an internal node
/// once all of its children are; evaluated nodes are never entered again.
/// The search stops early when the root becomes evaluated.
///
/// Random draws, in order of use within a round: ties among maximal UCB
/// children during selection, then one draw per rollout step with more than
/// one candidate.
class UctSearch {
 public:
  struct NodeView {
    TreePath path;
    int parent = -1;
    double value_sum = 0.0;
    std::int64_t visits = 0;
    bool evaluated = false;
    bool in_tree = false;
    bool leaf = false;
  };
  struct RoundRecord {
    int developed_node = -1;
    int leaf_node = -1;
    double reward = 0.0;
  };

  // Throws InfeasibleError if sum b_h < B or the instance is invalid.
  UctSearch(const MatchingInstance& instance, SearchConfig config);
  // The search keeps a reference to the instance.
  UctSearch(MatchingInstance&&, SearchConfig) = delete;

  // May be called once.
  SearchResult run();

  std::size_t node_count() const noexcept { return nodes_.size(); }
  NodeView node(int id) const;
  const std::vector<RoundRecord>& round_log() const noexcept {
    return round_log_;
  }
  std::optional<std::int64_t> cached_cost(const ExpansionVector& t) const;
  const HospitalOrdering& ordering() const noexcept { return ordering_; }

 private:
  struct Node {
    int parent = -1;
    int label = 0;
    double value_sum = 0.0;
    std::int64_t visits = 0;
    bool in_tree = false;
    bool evaluated = false;
    bool initialized = false;
    bool leaf = false;
    int pending = 0;  // children not yet evaluated
    std::vector<int> child_labels;
    std::vector<int> child_ids;  // -1 until created
  };

  // Fills in children/leaf status; the cursor must sit on `id`.
  void initialize(int id);
  int child(int id, std::size_t index);
  bool child_evaluated(const Node& n, std::size_t index) const;
  std::int64_t evaluate(const ExpansionVector& t);
  void mark_evaluated(int id);
  int select_child(int id);
  void record_trajectory(std::int64_t round);

  const MatchingInstance& instance_;
  SearchConfig config_;
  Rng rng_;
  Matching baseline_matching_;
  HospitalOrdering ordering_;
  TreeCursor cursor_;
  std::vector<Node> nodes_;
  std::unordered_map<ExpansionVector, std::int64_t, ExpansionVectorHash> cache_;
  std::int64_t baseline_cost_ = 0;
  std::int64_t evaluations_ = 0;
  SearchResult result_;
  std::vector<RoundRecord> round_log_;
  bool ran_ = false;
};

SearchResult search(const MatchingInstance& instance, const SearchConfig& config);

// `round,incumbent_cost,da_evaluations` with a header row.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory);

}  // namespace stable_expand
