#include <gtest/gtest.h>

#include <limits>

#include "stable_expand/baselines.hpp"
#include "stable_expand/deferred_acceptance.hpp"
#include "stable_expand/errors.hpp"
#include "stable_expand/min_cost_flow.hpp"
#include "test_support.hpp"

namespace stable_expand {
namespace {

using testing::i2;
using testing::random_instance;

TEST(Flow, ParallelArcs) {
  FlowNetwork n(2, 0, 1);
  n.add_arc(0, 1, 1, 5);
  n.add_arc(0, 1, 1, 7);
  EXPECT_EQ(min_cost_flow(n, 2).total_cost, 12);
  const auto one = min_cost_flow(n, 1);
  EXPECT_EQ(one.total_cost, 5);
  EXPECT_EQ(one.flow, (std::vector<std::int64_t>{1, 0}));
  EXPECT_THROW(min_cost_flow(n, 3), InfeasibleError);
}

TEST(Flow, RejectsBadArcs) {
  FlowNetwork n(2, 0, 1);
  EXPECT_THROW(n.add_arc(0, 1, -1, 0), std::invalid_argument);
  EXPECT_THROW(n.add_arc(0, 1, 1, -2), std::invalid_argument);
  EXPECT_THROW(n.add_arc(0, 2, 1, 0), std::invalid_argument);
}

TEST(Flow, ZeroRequiredFlow) {
  FlowNetwork n(3, 0, 2);
  n.add_arc(0, 1, 4, 1);
  n.add_arc(1, 2, 4, 1);
  const auto s = min_cost_flow(n, 0);
  EXPECT_EQ(s.total_cost, 0);
  EXPECT_EQ(s.flow, (std::vector<std::int64_t>{0, 0}));
}

// Bellman-Ford over the residual graph; a relaxation in round |V| means a
// negative cycle, i.e. the flow was not optimal.
bool residual_has_negative_cycle(const FlowNetwork& n, const FlowSolution& s) {
  struct Edge { int from, to; std::int64_t cost; };
  std::vector<Edge> edges;
  const auto arcs = n.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (s.flow[i] < arcs[i].capacity) edges.push_back({arcs[i].from, arcs[i].to, arcs[i].cost});
    if (s.flow[i] > 0) edges.push_back({arcs[i].to, arcs[i].from, -arcs[i].cost});
  }
  std::vector<std::int64_t> dist(n.num_nodes(), 0);
  for (int round = 0; round < n.num_nodes(); ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      if (dist[e.from] + e.cost < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.cost;
        changed = true;
      }
    }
    if (!changed) return false;
  }
  return true;
}

void check_conservation(const FlowNetwork& n, const FlowSolution& s, std::int64_t value) {
  std::vector<std::int64_t> balance(n.num_nodes(), 0);
  std::int64_t cost = 0;
  const auto arcs = n.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    ASSERT_GE(s.flow[i], 0);
    ASSERT_LE(s.flow[i], arcs[i].capacity);
    balance[arcs[i].from] -= s.flow[i];
    balance[arcs[i].to] += s.flow[i];
    cost += s.flow[i] * arcs[i].cost;
  }
  for (int v = 0; v < n.num_nodes(); ++v) {
    const std::int64_t expected = v == n.source() ? -value : v == n.sink() ? value : 0;
    ASSERT_EQ(balance[v], expected);
  }
  ASSERT_EQ(cost, s.total_cost);
}

TEST(Flow, RandomNetworksAreOptimal) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const int nodes = rng.uniform_int(2, 7);
    FlowNetwork n(nodes, 0, nodes - 1);
    const int arcs = rng.uniform_int(1, 14);
    for (int a = 0; a < arcs; ++a) {
      const int u = rng.uniform_int(0, nodes - 1);
      int v = rng.uniform_int(0, nodes - 1);
      if (u == v) v = (v + 1) % nodes;
      n.add_arc(u, v, rng.uniform_int(0, 3), rng.uniform_int(0, 9));
    }
    // Find the largest feasible value, then check optimality at each value.
    for (std::int64_t value = 0;; ++value) {
      FlowSolution s;
      try {
        s = min_cost_flow(n, value);
      } catch (const InfeasibleError&) {
        break;
      }
      check_conservation(n, s, value);
      ASSERT_FALSE(residual_has_negative_cycle(n, s));
    }
  }
}

TEST(Lph, I2Network) {
  const auto inst = i2();
  const auto net = build_lph_network(inst);
  const auto s = min_cost_flow(net.network, 2);
  EXPECT_EQ(s.total_cost, 2);
  EXPECT_EQ(s.flow[net.budget_arcs[0]], 1);
  EXPECT_EQ(s.flow[net.budget_arcs[1]], 0);
  EXPECT_FALSE(residual_has_negative_cycle(net.network, s));
}

TEST(Lph, I2Result) {
  const auto r = lp_heuristic(i2());
  EXPECT_EQ(r.flow_cost, 2);
  EXPECT_EQ(r.result.expansion, ExpansionVector({1, 0}));
  EXPECT_EQ(r.result.cost, 2);
}

TEST(Lph, AlreadyOptimalInstance) {
  auto d = testing::i2_data();
  d.resident_prefs = {{0, 1}, {1, 0}};
  const MatchingInstance inst(d);
  const auto r = lp_heuristic(inst);
  EXPECT_EQ(r.result.cost, 2);
  EXPECT_EQ(r.flow_cost, 2);
}

TEST(Lph, UnroutableResidents) {
  auto d = testing::i2_data();
  d.quotas = {0, 0};
  d.budget = 1;
  EXPECT_THROW(lp_heuristic(MatchingInstance(d)), InfeasibleError);
}

TEST(Greedy, I2) {
  const auto r = greedy_expansion(i2());
  EXPECT_EQ(r.expansion, ExpansionVector({1, 0}));
  EXPECT_EQ(r.cost, 2);
}

TEST(Greedy, SpendsWholeBudgetEvenWithoutGain) {
  auto d = testing::i2_data();
  d.resident_prefs = {{0, 1}, {1, 0}};
  const auto r = greedy_expansion(MatchingInstance(d));
  EXPECT_EQ(r.expansion, ExpansionVector({1, 0}));
  EXPECT_EQ(r.cost, 2);
}

TEST(Greedy, ZeroBudget) {
  auto d = testing::i2_data();
  d.budget = 0;
  const auto r = greedy_expansion(MatchingInstance(d));
  EXPECT_EQ(r.expansion, ExpansionVector({0, 0}));
  EXPECT_EQ(r.cost, 3);
}

TEST(Theta, Enumeration) {
  const auto inst = i2();
  EXPECT_EQ(enumerate_theta(inst),
            (std::vector<ExpansionVector>{ExpansionVector({0, 0}), ExpansionVector({0, 1}),
                                          ExpansionVector({1, 0})}));
  EXPECT_EQ(count_theta(inst, 100), 3u);
  auto d = testing::i2_data();
  d.budget = 0;
  EXPECT_EQ(enumerate_theta(MatchingInstance(d)),
            std::vector<ExpansionVector>{ExpansionVector({0, 0})});
}

TEST(Theta, CountMatchesEnumeration) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(rng, 6, 5, 5, 3);
    const auto all = enumerate_theta(inst);
    EXPECT_EQ(count_theta(inst, 1'000'000), all.size());
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    for (const auto& t : all) EXPECT_TRUE(in_theta(inst, t));
  }
  const auto big = generate_set1(1000, 5, 5, 0.0, 1);
  EXPECT_EQ(count_theta(big, 1'000'000), 252u);
  EXPECT_EQ(count_theta(big, 100), 100u);
  EXPECT_THROW(enumerate_theta(big, 100), GuardExceeded);
}

TEST(Oracle, I2) {
  const auto r = brute_force_optimal(i2());
  EXPECT_EQ(r.expansion, ExpansionVector({1, 0}));
  EXPECT_EQ(r.cost, 2);
}

TEST(Oracle, BoundsHeuristicsAndFlow) {
  Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    auto inst = random_instance(rng, 12, 4, 4, 3);
    // Make every resident routable so the flow model is feasible.
    auto d = inst.data();
    d.quotas.assign(d.num_hospitals, (d.num_residents + d.num_hospitals - 1) / d.num_hospitals);
    inst = MatchingInstance(d);
    const auto oracle = brute_force_optimal(inst);
    const auto g = greedy_expansion(inst);
    const auto l = lp_heuristic(inst);
    EXPECT_TRUE(in_theta(inst, g.expansion));
    EXPECT_TRUE(in_theta(inst, l.result.expansion));
    EXPECT_EQ(g.expansion.total(), inst.budget());
    EXPECT_LE(oracle.cost, g.cost);
    EXPECT_LE(oracle.cost, l.result.cost);
    EXPECT_LE(l.flow_cost, oracle.cost);
    for (const auto& t : enumerate_theta(inst)) {
      const auto c = total_cost(inst, run_da(inst, t));
      ASSERT_LE(oracle.cost, c);
      if (c == oracle.cost) {
        ASSERT_EQ(oracle.expansion, t);
        break;
      }
    }
  }
}

}  // namespace
}  // namespace stable_expand
