#include "stable_expand/min_cost_flow.hpp"

#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/successive_shortest_path_nonnegative_weights.hpp>
#include <fmt/format.h>

#include "stable_expand/errors.hpp"

namespace stable_expand {
namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS,
                                            boost::directedS>;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<
        boost::edge_capacity_t, std::int64_t,
        boost::property<
            boost::edge_residual_capacity_t, std::int64_t,
            boost::property<boost::edge_reverse_t, Traits::edge_descriptor,
                            boost::property<boost::edge_weight_t,
                                            std::int64_t>>>>>;
using Edge = Graph::edge_descriptor;

// Adds an arc and its zero-capacity reverse twin.
Edge add_pair(Graph& g, int from, int to, std::int64_t capacity,
              std::int64_t cost) {
  auto capacity_map = boost::get(boost::edge_capacity, g);
  auto weight_map = boost::get(boost::edge_weight, g);
  auto reverse_map = boost::get(boost::edge_reverse, g);
  const Edge forward = boost::add_edge(from, to, g).first;
  const Edge backward = boost::add_edge(to, from, g).first;
  capacity_map[forward] = capacity;
  capacity_map[backward] = 0;
  weight_map[forward] = cost;
  weight_map[backward] = -cost;
  reverse_map[forward] = backward;
  reverse_map[backward] = forward;
  return forward;
}

}  // namespace

FlowNetwork::FlowNetwork(int num_nodes, int source, int sink)
    : num_nodes_(num_nodes), source_(source), sink_(sink) {
  if (num_nodes < 2 || source < 0 || source >= num_nodes || sink < 0 ||
      sink >= num_nodes || source == sink)
    throw std::invalid_argument("flow network needs distinct source and sink");
}

int FlowNetwork::add_arc(int from, int to, std::int64_t capacity,
                         std::int64_t cost) {
  if (from < 0 || from >= num_nodes_ || to < 0 || to >= num_nodes_)
    throw std::invalid_argument(fmt::format("arc {}->{} out of range", from, to));
  if (capacity < 0) throw std::invalid_argument("negative arc capacity");
  if (cost < 0) throw std::invalid_argument("negative arc cost");
  arcs_.push_back({from, to, capacity, cost});
  return static_cast<int>(arcs_.size()) - 1;
}

FlowSolution min_cost_flow(const FlowNetwork& network,
                           std::int64_t required_flow) {
  if (required_flow < 0) throw std::invalid_argument("negative required flow");

  // An extra super-source whose single arc caps the flow at required_flow;
  // the max-flow min-cost solution then carries exactly that much if it can.
  const int super_source = network.num_nodes();
  Graph g(network.num_nodes() + 1);
  std::vector<Edge> edges;
  edges.reserve(network.arcs().size());
  for (const auto& arc : network.arcs())
    edges.push_back(add_pair(g, arc.from, arc.to, arc.capacity, arc.cost));
  const Edge limiter =
      add_pair(g, super_source, network.source(), required_flow, 0);

  boost::successive_shortest_path_nonnegative_weights(g, super_source,
                                                      network.sink());

  auto capacity_map = boost::get(boost::edge_capacity, g);
  auto residual_map = boost::get(boost::edge_residual_capacity, g);
  const std::int64_t carried = capacity_map[limiter] - residual_map[limiter];
  if (carried != required_flow)
    throw InfeasibleError(fmt::format(
        "network carries at most {} of the required {} units", carried,
        required_flow));

  FlowSolution solution;
  solution.flow.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::int64_t f = capacity_map[edges[i]] - residual_map[edges[i]];
    solution.flow.push_back(f);
    solution.total_cost += f * network.arcs()[i].cost;
  }
  return solution;
}

}  // namespace stable_expand
