#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stable_expand {

// Directed network with integral capacities and non-negative unit costs.
class FlowNetwork {
 public:
  struct Arc {
    int from;
    int to;
    std::int64_t capacity;
    std::int64_t cost;
  };

  FlowNetwork(int num_nodes, int source, int sink);

  // Returns the arc id. Throws std::invalid_argument on bad endpoints,
  // negative capacity or negative cost.
  int add_arc(int from, int to, std::int64_t capacity, std::int64_t cost);

  int num_nodes() const noexcept { return num_nodes_; }
  int source() const noexcept { return source_; }
  int sink() const noexcept { return sink_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

 private:
  int num_nodes_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
};

struct FlowSolution {
  std::vector<std::int64_t> flow;  // indexed by arc id
  std::int64_t total_cost = 0;
};

// Integral minimum-cost flow of exactly `required_flow` units from source to
// sink, by successive shortest augmenting paths with node potentials.
// Throws InfeasibleError if the network cannot carry that much flow.
FlowSolution min_cost_flow(const FlowNetwork& network, std::int64_t required_flow);

}  // namespace stable_expand
