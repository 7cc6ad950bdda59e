#include "stable_expand/harness.hpp"

#include <array>
#include <chrono>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "stable_expand/baselines.hpp"
#include "stable_expand/deferred_acceptance.hpp"
#include "stable_expand/errors.hpp"

namespace stable_expand {
namespace {

constexpr std::array kMethods = {
    Method::kDa0,           Method::kGreedy,          Method::kLph,
    Method::kOracle,        Method::kUctIterative,    Method::kUctIptRandom,
    Method::kUctIptPopularity, Method::kUctIptEnvy,   Method::kUctBtRandom,
    Method::kUctBtPopularity,  Method::kUctBtEnvy,
};

MethodOutcome from_heuristic(HeuristicResult r) {
  MethodOutcome out;
  out.expansion = std::move(r.expansion);
  out.cost = r.cost;
  out.matching = std::move(r.matching);
  return out;
}

}  // namespace

std::span<const Method> all_methods() { return kMethods; }

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kDa0: return "da0";
    case Method::kGreedy: return "grdy";
    case Method::kLph: return "lph";
    case Method::kOracle: return "oracle";
    case Method::kUctIterative: return "uct-iter";
    case Method::kUctIptRandom: return "uct-ipt-r";
    case Method::kUctIptPopularity: return "uct-ipt-p";
    case Method::kUctIptEnvy: return "uct-ipt-e";
    case Method::kUctBtRandom: return "uct-bt-r";
    case Method::kUctBtPopularity: return "uct-bt-p";
    case Method::kUctBtEnvy: return "uct-bt-e";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const Method m : kMethods)
    if (method_name(m) == name) return m;
  return std::nullopt;
}

bool is_out_of_scope_method(std::string_view name) {
  return name == "agglin" || name == "agg-lin";
}

bool is_uct(Method method) {
  switch (method) {
    case Method::kDa0:
    case Method::kGreedy:
    case Method::kLph:
    case Method::kOracle:
      return false;
    default:
      return true;
  }
}

std::int64_t default_rounds(const MatchingInstance& instance) {
  return std::max<std::int64_t>(1, std::int64_t{instance.budget()} * 1000);
}

SearchConfig search_config_for(Method method, const MatchingInstance& instance,
                               const RunConfig& config) {
  SearchConfig sc;
  sc.rounds = config.rounds.value_or(default_rounds(instance));
  sc.exploration = config.exploration;
  sc.seed = config.seed;
  if (config.time_limit_seconds)
    sc.time_limit = std::chrono::duration<double>(*config.time_limit_seconds);
  switch (method) {
    case Method::kUctIterative:
      sc.representation = Representation::kIterative;
      sc.ordering = OrderingKind::kRandom;
      break;
    case Method::kUctIptRandom:
      sc.representation = Representation::kIpt;
      sc.ordering = OrderingKind::kRandom;
      break;
    case Method::kUctIptPopularity:
      sc.representation = Representation::kIpt;
      sc.ordering = OrderingKind::kPopularity;
      break;
    case Method::kUctIptEnvy:
      sc.representation = Representation::kIpt;
      sc.ordering = OrderingKind::kEnvy;
      break;
    case Method::kUctBtRandom:
      sc.representation = Representation::kBatch;
      sc.ordering = OrderingKind::kRandom;
      break;
    case Method::kUctBtPopularity:
      sc.representation = Representation::kBatch;
      sc.ordering = OrderingKind::kPopularity;
      break;
    case Method::kUctBtEnvy:
      sc.representation = Representation::kBatch;
      sc.ordering = OrderingKind::kEnvy;
      break;
    default:
      throw std::invalid_argument(
          fmt::format("{} is not a tree-search method", method_name(method)));
  }
  return sc;
}

MethodOutcome solve(const MatchingInstance& instance, Method method,
                    const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  MethodOutcome out;
  switch (method) {
    case Method::kDa0: {
      out.expansion = ExpansionVector::zeros(instance.total_hospitals());
      out.matching = run_da(instance, out.expansion);
      out.cost = total_cost(instance, out.matching);
      break;
    }
    case Method::kGreedy:
      out = from_heuristic(greedy_expansion(instance));
      break;
    case Method::kLph:
      out = from_heuristic(lp_heuristic(instance).result);
      break;
    case Method::kOracle: {
      auto best = brute_force_optimal(instance);
      out.expansion = std::move(best.expansion);
      out.matching = run_da(instance, out.expansion);
      out.cost = best.cost;
      break;
    }
    default: {
      SearchResult r = search(instance, search_config_for(method, instance, config));
      out.expansion = r.best_expansion;
      out.cost = r.best_cost;
      out.matching = r.best_matching;
      out.search = std::move(r);
      break;
    }
  }
  out.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return out;
}

RunRecord make_run_record(const std::string& instance_path,
                          std::string_view instance_bytes,
                          const MatchingInstance& instance, Method method,
                          const RunConfig& config, const MethodOutcome& outcome) {
  RunRecord rec;
  rec.instance_path = instance_path;
  rec.instance_digest = "sha256:" + sha256_hex(instance_bytes);
  rec.method = method;
  rec.config = nlohmann::json::object();
  if (is_uct(method)) {
    const SearchConfig sc = search_config_for(method, instance, config);
    rec.config["rounds"] = sc.rounds;
    rec.config["cp"] = sc.exploration;
    rec.config["seed"] = sc.seed;
    rec.config["representation"] = std::string(to_string(sc.representation));
    rec.config["ordering"] = std::string(to_string(sc.ordering));
  }
  rec.config["time_limit_seconds"] =
      config.time_limit_seconds ? nlohmann::json(*config.time_limit_seconds)
                                : nlohmann::json(nullptr);
  rec.best_cost = outcome.cost;
  rec.best_expansion = outcome.expansion.extras;
  rec.wall_time_seconds = outcome.wall_seconds;
  if (outcome.search) {
    rec.da_evaluations = outcome.search->da_evaluations;
    rec.terminated_exhaustively = outcome.search->terminated_exhaustively;
  }
  return rec;
}

nlohmann::json to_json(const RunRecord& record, bool include_wall_time) {
  nlohmann::json j;
  j["instance"] = record.instance_path;
  j["instance_digest"] = record.instance_digest;
  j["method"] = std::string(method_name(record.method));
  j["config"] = record.config;
  j["best_cost"] = record.best_cost;
  j["best_expansion"] = record.best_expansion;
  if (include_wall_time) j["wall_time_seconds"] = record.wall_time_seconds;
  j["trajectory"] = record.trajectory_path ? nlohmann::json(*record.trajectory_path)
                                           : nlohmann::json(nullptr);
  if (record.da_evaluations) j["da_evaluations"] = *record.da_evaluations;
  if (record.terminated_exhaustively)
    j["terminated_exhaustively"] = *record.terminated_exhaustively;
  return j;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

double gap_percent(std::int64_t method_cost, std::int64_t reference_cost) {
  if (method_cost <= 0) throw std::invalid_argument("method cost must be positive");
  return 100.0 * static_cast<double>(method_cost - reference_cost) /
         static_cast<double>(method_cost);
}

GapTable compare_methods(std::span<const std::filesystem::path> instance_files,
                         std::span<const Method> methods, Method reference,
                         const RunConfig& config) {
  GapTable table;
  table.methods.assign(methods.begin(), methods.end());
  table.averages.assign(methods.size(), 0.0);
  for (const auto& file : instance_files) {
    const MatchingInstance instance = read_instance_file(file);
    std::int64_t reference_cost = 0;
    try {
      reference_cost = solve(instance, reference, config).cost;
    } catch (const Error& e) {
      throw Error(fmt::format("missing reference run ({}) for {}: {}",
                              method_name(reference), file.string(), e.what()));
    }
    std::vector<double> row;
    row.reserve(methods.size());
    for (const Method m : methods) {
      const std::int64_t cost =
          m == reference ? reference_cost : solve(instance, m, config).cost;
      row.push_back(gap_percent(cost, reference_cost));
    }
    for (std::size_t i = 0; i < row.size(); ++i) table.averages[i] += row[i];
    table.instances.push_back(file.string());
    table.gaps.push_back(std::move(row));
  }
  if (!table.instances.empty())
    for (auto& a : table.averages) a /= static_cast<double>(table.instances.size());
  return table;
}

std::string to_csv(const GapTable& table) {
  std::string out = "instance";
  for (const Method m : table.methods) out += fmt::format(",{}", method_name(m));
  out += '\n';
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (const char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (std::size_t i = 0; i < table.instances.size(); ++i) {
    out += quote(table.instances[i]);
    for (const double g : table.gaps[i]) out += fmt::format(",{:.4f}", g);
    out += '\n';
  }
  out += "average";
  for (const double a : table.averages) out += fmt::format(",{:.4f}", a);
  out += '\n';
  return out;
}

}  // namespace stable_expand
