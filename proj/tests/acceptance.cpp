// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "stable_expand/baselines.hpp"
#include "stable_expand/datagen.hpp"
#include "stable_expand/deferred_acceptance.hpp"
#include "stable_expand/expansion_space.hpp"
#include "stable_expand/harness.hpp"
#include "stable_expand/random.hpp"
#include "stable_expand/uct_search.hpp"
#include "test_support.hpp"

namespace se = stable_expand;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

constexpr se::Method kUctMethods[] = {
    se::Method::kUctIterative,    se::Method::kUctIptRandom, se::Method::kUctIptPopularity,
    se::Method::kUctIptEnvy,      se::Method::kUctBtRandom,  se::Method::kUctBtPopularity,
    se::Method::kUctBtEnvy,
};

// Shared by criteria 4-6 (producers) and 8, 10 (consumers).
struct RunLog {
  std::vector<std::string> records;  // RunRecord JSON without wall time
  std::int64_t trajectories = 0;
  std::int64_t non_monotone = 0;
};

RunLog first_pass;

void log_run(RunLog& log, const se::MatchingInstance& inst, const std::string& name,
             se::Method method, const se::RunConfig& config, const se::MethodOutcome& out) {
  const std::string bytes = se::save_instance(inst);
  log.records.push_back(
      se::to_json(se::make_run_record(name, bytes, inst, method, config, out), false).dump());
  if (!out.search) return;
  ++log.trajectories;
  const auto& t = out.search->trajectory;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i].incumbent_cost > t[i - 1].incumbent_cost) {
      ++log.non_monotone;
      break;
    }
  }
}

// A random member of Theta: hospitals in random order, each taking a uniform
// share of what remains.
se::ExpansionVector random_expansion(se::Rng& rng, const se::MatchingInstance& inst) {
  const int n = inst.total_hospitals();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  se::ExpansionVector t = se::ExpansionVector::zeros(n);
  int left = inst.budget();
  for (const int h : order) {
    t[h] = rng.uniform_int(0, std::min(left, inst.expansion_limit(h)));
    left -= t[h];
  }
  return t;
}

Verdict stability_suite() {
  se::Rng rng(1001);
  std::int64_t checks = 0;
  std::int64_t stable = 0;
  for (int i = 0; i < 200; ++i) {
    const bool set2 = i % 2 == 1;
    const int h = rng.uniform_int(set2 ? 2 : 1, 10);
    const int d = rng.uniform_int(h, 200);
    const int b = rng.uniform_int(2, 10);
    const double alpha = rng.uniform_real();
    const auto inst = set2 ? se::generate_set2(d, h, b, alpha, i) : se::generate_set1(d, h, b, alpha, i);
    for (int k = 0; k < 5; ++k) {
      const auto t = random_expansion(rng, inst);
      ++checks;
      if (se::find_blocking_pairs(inst, t, se::run_da(inst, t)).stable) ++stable;
    }
  }
  return {stable == checks, fmt::format("{}/{} DA outputs stable", stable, checks)};
}

Verdict resident_optimality() {
  se::Rng rng(2002);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    const auto inst = se::testing::random_instance(rng, 6, 3, 3, 2);
    const auto t = random_expansion(rng, inst);
    const auto da_cost = se::total_cost(inst, se::run_da(inst, t));
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& m : se::enumerate_stable_matchings(inst, t))
      best = std::min(best, se::total_cost(inst, m));
    if (best == da_cost) ++equal;
  }
  return {equal == 100, fmt::format("{}/100 DA cost equals min over stable matchings", equal)};
}

std::int64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

se::MatchingInstance limits_only(const std::vector<int>& limits, int budget) {
  const int h = static_cast<int>(limits.size());
  se::InstanceData d;
  d.num_residents = h;
  d.num_hospitals = h;
  for (int r = 0; r < h; ++r) {
    std::vector<int> prefs(h);
    std::iota(prefs.begin(), prefs.end(), 0);
    d.resident_prefs.push_back(prefs);
    d.hospital_prefs.push_back(prefs);
  }
  d.quotas.assign(h, 1);
  d.expansion_limits = limits;
  d.budget = budget;
  return se::MatchingInstance(std::move(d));
}

Verdict tree_bijections() {
  se::Rng rng(3003);
  int cases = 0;
  int good = 0;
  for (int h = 1; h <= 4; ++h) {
    for (int budget = 0; budget <= 4; ++budget) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> limits(h);
        int sum = 0;
        for (auto& b : limits) sum += (b = rng.uniform_int(0, budget));
        if (sum < budget) continue;
        const auto inst = limits_only(limits, budget);
        const auto ordering = se::make_ordering(inst, se::OrderingKind::kRandom, trial);
        std::set<se::ExpansionVector> full;
        for (const auto& t : se::enumerate_theta(inst))
          if (t.total() == budget) full.insert(t);

        bool ok = true;
        const auto ipt = se::enumerate_leaves(inst, ordering, se::Representation::kIpt);
        ok &= ipt.size() == full.size() &&
              std::set<se::ExpansionVector>(ipt.begin(), ipt.end()) == full;

        std::map<se::ExpansionVector, int> bt;
        for (const auto& t : se::enumerate_leaves(inst, ordering, se::Representation::kBatch)) {
          ok &= se::in_theta(inst, t);
          ++bt[t];
        }
        for (const auto& [t, n] : bt) ok &= n == 1;
        for (const auto& t : full) ok &= bt.count(t) == 1;

        std::map<se::ExpansionVector, std::int64_t> iter;
        for (const auto& t :
             se::enumerate_leaves(inst, ordering, se::Representation::kIterative))
          ++iter[t];
        ok &= iter.size() == full.size();
        for (const auto& t : full) {
          std::int64_t expected = factorial(budget);
          for (const int x : t.extras) expected /= factorial(x);
          ok &= iter[t] == expected;
        }
        ++cases;
        good += ok ? 1 : 0;
      }
    }
  }
  return {good == cases, fmt::format("{}/{} (H, B, b) cases exact", good, cases)};
}

Verdict exhaustiveness(RunLog& log) {
  se::Rng rng(4004);
  int instances = 0;
  int runs = 0;
  int good = 0;
  for (std::uint64_t seed = 1; instances < 20; ++seed) {
    const int h = rng.uniform_int(2, 5);
    const int b = rng.uniform_int(2, 6);
    const int d = rng.uniform_int(50, 200);
    const auto inst = seed % 2 ? se::generate_set1(d, h, b, 0.0, seed)
                               : se::generate_set2(d, h, b, 0.0, seed);
    if (se::count_theta(inst, 201) > 200) continue;
    ++instances;
    const auto oracle = se::brute_force_optimal(inst);
    for (const se::Method m : kUctMethods) {
      se::RunConfig config;
      config.seed = seed;
      const auto sc = se::search_config_for(m, inst, config);
      const auto ordering = se::make_ordering(inst, sc.ordering, sc.seed);
      config.rounds = static_cast<std::int64_t>(
          se::enumerate_leaves(inst, ordering, sc.representation).size());
      const auto out = se::solve(inst, m, config);
      log_run(log, inst, fmt::format("exhaustive_{}.json", seed), m, config, out);
      ++runs;
      if (out.search->terminated_exhaustively && out.cost == oracle.cost) ++good;
    }
  }
  return {good == runs,
          fmt::format("{}/{} runs exhausted at the brute-force optimum ({} instances)", good,
                      runs, instances)};
}

Verdict desk_scale_gaps(RunLog& log) {
  std::map<se::Method, double> gap_sum;
  int grdy_positive = 0;
  int lph_positive = 0;
  double grdy_avg = 0.0;
  double lph_avg = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = se::generate_set1(1000, 5, 5, 0.0, seed);
    se::RunConfig config;
    config.seed = seed;
    const auto name = fmt::format("set1_D1000_H5_B5_a0.0_s{}.json", seed);
    const auto ref = se::solve(inst, se::Method::kOracle, config);
    for (const se::Method m : kUctMethods) {
      const auto out = se::solve(inst, m, config);
      log_run(log, inst, name, m, config, out);
      gap_sum[m] += se::gap_percent(out.cost, ref.cost);
    }
    const double g = se::gap_percent(se::solve(inst, se::Method::kGreedy, config).cost, ref.cost);
    const double l = se::gap_percent(se::solve(inst, se::Method::kLph, config).cost, ref.cost);
    grdy_positive += g > 0.0 ? 1 : 0;
    lph_positive += l > 0.0 ? 1 : 0;
    grdy_avg += g / 10.0;
    lph_avg += l / 10.0;
  }
  bool uct_ok = true;
  double worst = 0.0;
  for (const auto& [m, s] : gap_sum) {
    worst = std::max(worst, std::abs(s / 10.0));
    uct_ok &= std::abs(s / 10.0) <= 0.05;
  }
  return {uct_ok && grdy_positive >= 8 && lph_positive >= 8,
          fmt::format("max |UCT avg gap| {:.4f}; grdy gap>0 on {}/10 (avg {:.2f}), lph gap>0 "
                      "on {}/10 (avg {:.2f})",
                      worst, grdy_positive, grdy_avg, lph_positive, lph_avg)};
}

Verdict ordering_effect(RunLog& log) {
  int beats_greedy = 0;
  int beats_random = 0;
  std::vector<std::string> rows;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = se::generate_set1(1000, 15, 30, 0.0, seed);
    se::RunConfig config;
    config.seed = seed;
    config.rounds = 30'000;
    const auto name = fmt::format("set1_D1000_H15_B30_a0.0_s{}.json", seed);
    const auto bte = se::solve(inst, se::Method::kUctBtEnvy, config);
    const auto btr = se::solve(inst, se::Method::kUctBtRandom, config);
    const auto grdy = se::solve(inst, se::Method::kGreedy, config);
    log_run(log, inst, name, se::Method::kUctBtEnvy, config, bte);
    log_run(log, inst, name, se::Method::kUctBtRandom, config, btr);
    beats_greedy += bte.cost <= grdy.cost ? 1 : 0;
    beats_random += bte.cost <= btr.cost ? 1 : 0;
    rows.push_back(fmt::format("{}/{}/{}", bte.cost, grdy.cost, btr.cost));
  }
  return {beats_greedy >= 8 && beats_random >= 7,
          fmt::format("bt-e <= grdy on {}/10, bt-e <= bt-r on {}/10 (bt-e/grdy/bt-r: {})",
                      beats_greedy, beats_random, fmt::join(rows, " "))};
}

Verdict comparative_statics() {
  se::Rng rng(7007);
  int good = 0;
  for (int i = 0; i < 100; ++i) {
    const auto inst = se::generate_set2(rng.uniform_int(20, 150), rng.uniform_int(2, 8),
                                        rng.uniform_int(2, 8), rng.uniform_real(), i);
    auto t = random_expansion(rng, inst);
    // Zero out some coordinates to get t <= t'.
    auto u = t;
    for (auto& x : t.extras) x = rng.uniform_int(0, x);
    const auto a = se::per_resident_ranks(inst, se::run_da(inst, t));
    const auto b = se::per_resident_ranks(inst, se::run_da(inst, u));
    bool ok = t.dominated_by(u);
    for (std::size_t d = 0; d < a.size(); ++d) ok &= b[d] <= a[d];
    good += ok ? 1 : 0;
  }
  return {good == 100, fmt::format("{}/100 pairs pointwise no worse under t'", good)};
}

Verdict anytime_monotonicity() {
  return {first_pass.trajectories > 0 && first_pass.non_monotone == 0,
          fmt::format("{} trajectories from criteria 4-6, {} non-monotone",
                      first_pass.trajectories, first_pass.non_monotone)};
}

Verdict lph_lower_bound() {
  se::Rng rng(9009);
  int good = 0;
  for (int i = 0; i < 50; ++i) {
    const auto inst = se::generate_set2(rng.uniform_int(20, 120), rng.uniform_int(2, 5),
                                        rng.uniform_int(2, 5), rng.uniform_real(), i);
    const auto oracle = se::brute_force_optimal(inst);
    const auto lph = se::lp_heuristic(inst);
    if (lph.flow_cost <= oracle.cost && lph.result.cost >= oracle.cost) ++good;
  }
  return {good == 50, fmt::format("{}/50 flow cost <= optimum <= lph cost", good)};
}

Verdict determinism() {
  RunLog second;
  exhaustiveness(second);
  desk_scale_gaps(second);
  ordering_effect(second);
  std::size_t same = 0;
  const std::size_t n = std::min(first_pass.records.size(), second.records.size());
  for (std::size_t i = 0; i < n; ++i) same += first_pass.records[i] == second.records[i] ? 1 : 0;
  const bool ok = first_pass.records.size() == second.records.size() &&
                  same == first_pass.records.size() && same > 0;
  return {ok, fmt::format("{}/{} run records byte-identical on rerun", same,
                          first_pass.records.size())};
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Verdict()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "stability", 30, stability_suite},
      {2, "resident optimality", 10, resident_optimality},
      {3, "tree bijections", 0, tree_bijections},
      {4, "exhaustive search", 0, [] { return exhaustiveness(first_pass); }},
      {5, "desk-scale gaps", 300, [] { return desk_scale_gaps(first_pass); }},
      {6, "ordering effect", 1800, [] { return ordering_effect(first_pass); }},
      {7, "comparative statics", 0, comparative_statics},
      {8, "anytime monotonicity", 0, anytime_monotonicity},
      {9, "flow lower bound", 0, lph_lower_bound},
      {10, "determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt::format("{:.1f} s", seconds);
    if (c.budget_seconds > 0) {
      timing += fmt::format(" of {:.0f} s", c.budget_seconds);
      if (seconds >= c.budget_seconds) v.pass = false;
    }
    failures += v.pass ? 0 : 1;
    std::printf("criterion %2d %s  %-22s %s [%s]\n", c.id, v.pass ? "PASS" : "FAIL",
                c.name.c_str(), v.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
