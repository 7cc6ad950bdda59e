#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stable_expand/instance.hpp"
#include "stable_expand/uct_search.hpp"

namespace stable_expand {

enum class Method {
  kDa0,
  kGreedy,
  kLph,
  kOracle,
  kUctIterative,
  kUctIptRandom,
  kUctIptPopularity,
  kUctIptEnvy,
  kUctBtRandom,
  kUctBtPopularity,
  kUctBtEnvy,
};

std::span<const Method> all_methods();
std::string_view method_name(Method method);
// nullopt for names outside the closed method set.
std::optional<Method> parse_method(std::string_view name);
// Recognized but deliberately unsupported (the MILP reference method).
bool is_out_of_scope_method(std::string_view name);
bool is_uct(Method method);

struct RunConfig {
  std::optional<std::int64_t> rounds;  // default B * 1000
  double exploration = kDefaultExploration;
  std::uint64_t seed = 0;
  std::optional<double> time_limit_seconds;
};

std::int64_t default_rounds(const MatchingInstance& instance);
// The search configuration a UCT method runs with.
SearchConfig search_config_for(Method method, const MatchingInstance& instance,
                               const RunConfig& config);

struct MethodOutcome {
  ExpansionVector expansion;
  std::int64_t cost = 0;
  Matching matching;
  std::optional<SearchResult> search;  // UCT methods only
  double wall_seconds = 0.0;
};

MethodOutcome solve(const MatchingInstance& instance, Method method,
                    const RunConfig& config);

struct RunRecord {
  std::string instance_path;
  std::string instance_digest;  // "sha256:<hex>" of the file bytes
  Method method = Method::kDa0;
  nlohmann::json config;
  std::int64_t best_cost = 0;
  std::vector<int> best_expansion;
  double wall_time_seconds = 0.0;
  std::optional<std::string> trajectory_path;
  std::optional<std::int64_t> da_evaluations;
  std::optional<bool> terminated_exhaustively;
};

RunRecord make_run_record(const std::string& instance_path,
                          std::string_view instance_bytes,
                          const MatchingInstance& instance, Method method,
                          const RunConfig& config, const MethodOutcome& outcome);
nlohmann::json to_json(const RunRecord& record, bool include_wall_time = true);

std::string sha256_hex(std::string_view bytes);

// 100 * (method - reference) / method.
double gap_percent(std::int64_t method_cost, std::int64_t reference_cost);

struct GapTable {
  std::vector<Method> methods;
  std::vector<std::string> instances;
  std::vector<std::vector<double>> gaps;  // [instance][method]
  std::vector<double> averages;           // per method
};

// Runs `reference` and every method on each instance file. Throws Error if
// the reference run cannot be produced for some instance.
GapTable compare_methods(std::span<const std::filesystem::path> instance_files,
                         std::span<const Method> methods, Method reference,
                         const RunConfig& config);

// Header `instance,<methods...>`, one row per instance, then `average`.
std::string to_csv(const GapTable& table);

}  // namespace stable_expand
