// Command-line front end: `gen`, `solve`, `compare`.

#include <cstdlib>
#include <filesystem>
#include <glob.h>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <charconv>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "stable_expand/datagen.hpp"
#include "stable_expand/errors.hpp"
#include "stable_expand/harness.hpp"
#include "stable_expand/instance.hpp"
#include "stable_expand/uct_search.hpp"

namespace fs = std::filesystem;
using namespace stable_expand;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kRuntime = 3,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("STABLE_EXPAND_SEED")) {
    std::uint64_t value = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw UsageError(fmt::format("STABLE_EXPAND_SEED is not an integer: {}", env));
    return value;
  }
  return 0;
}

// Shortest round-trip form, always with a decimal point ("0.0", "0.25").
std::string format_alpha(double alpha) {
  std::string s = fmt::format("{}", alpha);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

struct GenOptions {
  std::string set = "1";
  int residents = 1000;
  int hospitals = 5;
  int budget = 5;
  double alpha = 0.0;
  std::optional<std::uint64_t> seed;
  int count = 1;
  std::string out = ".";
  int applications = 8;
  std::vector<int> capacities;
};

int cmd_generate(const GenOptions& opt) {
  if (!(opt.alpha >= 0.0 && opt.alpha <= 1.0))
    throw UsageError(fmt::format("alpha out of range [0, 1]: {}", opt.alpha));
  if (opt.count < 0) throw UsageError("count must be non-negative");
  if (opt.set != "1" && opt.set != "2" && opt.set != "partial")
    throw UsageError(fmt::format("unknown set '{}' (expected 1, 2 or partial)", opt.set));
  const std::uint64_t first_seed = resolve_seed(opt.seed);
  if (opt.count == 0) return kOk;

  fs::create_directories(opt.out);
  const std::string set_name = opt.set == "partial" ? "partial" : "set" + opt.set;
  for (int i = 0; i < opt.count; ++i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    std::optional<MatchingInstance> instance;
    try {
      if (opt.set == "1") {
        instance = generate_set1(opt.residents, opt.hospitals, opt.budget, opt.alpha, seed);
      } else if (opt.set == "2") {
        instance = generate_set2(opt.residents, opt.hospitals, opt.budget, opt.alpha, seed);
      } else {
        std::vector<int> capacities = opt.capacities;
        if (capacities.empty()) {
          // Even split of the residents plus room for B extras per hospital.
          const int base = (opt.residents + opt.hospitals - 1) / opt.hospitals;
          capacities.assign(opt.hospitals, base + opt.budget);
        }
        instance = generate_partial(opt.residents, opt.hospitals, opt.applications,
                                    capacities, opt.budget, seed);
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const fs::path file =
        fs::path(opt.out) / fmt::format("{}_D{}_H{}_B{}_a{}_s{}.json", set_name,
                                        opt.residents, opt.hospitals, opt.budget,
                                        format_alpha(opt.alpha), seed);
    write_text_file_atomic(file, save_instance(*instance));
    std::cout << file.string() << '\n';
  }
  return kOk;
}

Method method_or_usage_error(const std::string& name) {
  if (is_out_of_scope_method(name))
    throw UsageError(fmt::format("{}: method not implemented; out of scope", name));
  if (auto m = parse_method(name)) return *m;
  throw UsageError(fmt::format("unknown method '{}'", name));
}

struct SolveOptions {
  std::string instance;
  std::string method;
  std::optional<std::int64_t> rounds;
  double cp = kDefaultExploration;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::string out;
};

RunConfig make_run_config(const std::optional<std::int64_t>& rounds, double cp,
                          const std::optional<std::uint64_t>& seed,
                          const std::optional<double>& time_limit) {
  if (rounds && *rounds < 1) throw UsageError("rounds must be >= 1");
  if (!(cp >= 0.0)) throw UsageError("cp must be non-negative");
  if (time_limit && !(*time_limit > 0.0)) throw UsageError("time limit must be positive");
  RunConfig config;
  config.rounds = rounds;
  config.exploration = cp;
  config.seed = resolve_seed(seed);
  config.time_limit_seconds = time_limit;
  return config;
}

int cmd_solve(const SolveOptions& opt) {
  const Method method = method_or_usage_error(opt.method);
  const RunConfig config = make_run_config(opt.rounds, opt.cp, opt.seed, opt.time_limit);
  const std::string bytes = read_text_file(opt.instance);
  const MatchingInstance instance = load_instance(bytes);

  const MethodOutcome outcome = solve(instance, method, config);
  RunRecord record =
      make_run_record(opt.instance, bytes, instance, method, config, outcome);

  fs::path out = opt.out;
  if (out.empty()) {
    out = fs::path(opt.instance);
    out.replace_extension();
    out += fmt::format(".{}.run.json", method_name(method));
  }
  if (outcome.search) {
    fs::path traj = out;
    traj.replace_extension();  // drop .json
    traj.replace_extension();  // drop .run
    traj += ".trajectory.csv";
    write_text_file_atomic(traj, trajectory_csv(outcome.search->trajectory));
    record.trajectory_path = traj.string();
  }
  write_text_file_atomic(out, to_json(record).dump(2) + "\n");
  std::cout << outcome.cost << '\n';
  std::cerr << fmt::format("{}: cost {} expansion {} ({:.3f} s) -> {}\n",
                           method_name(method), outcome.cost,
                           to_string(outcome.expansion), outcome.wall_seconds,
                           out.string());
  return kOk;
}

std::vector<fs::path> expand_patterns(const std::vector<std::string>& patterns) {
  std::vector<fs::path> files;
  for (const auto& pattern : patterns) {
    if (pattern.find_first_of("*?[") == std::string::npos) {
      files.emplace_back(pattern);
      continue;
    }
    glob_t matches{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &matches);
    if (rc == 0)
      for (std::size_t i = 0; i < matches.gl_pathc; ++i)
        files.emplace_back(matches.gl_pathv[i]);
    globfree(&matches);
    if (rc != 0) throw UsageError(fmt::format("no instance files match '{}'", pattern));
  }
  return files;
}

struct CompareOptions {
  std::vector<std::string> instances;
  std::vector<std::string> methods;
  std::string reference = "oracle";
  std::optional<std::int64_t> rounds;
  double cp = kDefaultExploration;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::string out;
};

int cmd_compare(const CompareOptions& opt) {
  const Method reference = method_or_usage_error(opt.reference);
  std::vector<Method> methods;
  if (opt.methods.empty()) {
    for (const Method m : all_methods())
      if (m != reference && m != Method::kDa0) methods.push_back(m);
  } else {
    for (const auto& name : opt.methods) methods.push_back(method_or_usage_error(name));
  }
  const RunConfig config = make_run_config(opt.rounds, opt.cp, opt.seed, opt.time_limit);
  const auto files = expand_patterns(opt.instances);
  const std::string csv = to_csv(compare_methods(files, methods, reference, config));
  if (opt.out.empty()) {
    std::cout << csv;
  } else {
    write_text_file_atomic(opt.out, csv);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity expansion for resident-hospital matching"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic instances");
  gen_cmd->add_option("--set", gen.set, "1, 2 or partial")->capture_default_str();
  gen_cmd->add_option("--residents", gen.residents)->capture_default_str();
  gen_cmd->add_option("--hospitals", gen.hospitals)->capture_default_str();
  gen_cmd->add_option("--budget", gen.budget)->capture_default_str();
  gen_cmd->add_option("--alpha", gen.alpha, "Preference correlation in [0, 1]")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "First seed (default: $STABLE_EXPAND_SEED or 0)");
  gen_cmd->add_option("--count", gen.count)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();
  gen_cmd->add_option("--applications", gen.applications,
                      "Applications per resident (partial set)")
      ->capture_default_str();
  gen_cmd->add_option("--capacities", gen.capacities,
                      "Per-hospital admission caps (partial set)")
      ->delimiter(',');

  SolveOptions solve_opt;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance with one method");
  solve_cmd->add_option("instance", solve_opt.instance, "Instance JSON file")->required();
  solve_cmd->add_option("--method", solve_opt.method)->required();
  solve_cmd->add_option("--rounds", solve_opt.rounds, "UCT rounds (default B*1000)");
  solve_cmd->add_option("--cp", solve_opt.cp, "UCB exploration constant")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve_opt.seed);
  solve_cmd->add_option("--time-limit", solve_opt.time_limit, "Seconds");
  solve_cmd->add_option("--out", solve_opt.out, "Run record path");

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Average gaps against a reference method");
  cmp_cmd->add_option("instances", cmp.instances, "Instance files or glob patterns")
      ->required();
  cmp_cmd->add_option("--method", cmp.methods, "Methods to compare (repeatable)")
      ->delimiter(',');
  cmp_cmd->add_option("--reference", cmp.reference)->capture_default_str();
  cmp_cmd->add_option("--rounds", cmp.rounds);
  cmp_cmd->add_option("--cp", cmp.cp)->capture_default_str();
  cmp_cmd->add_option("--seed", cmp.seed);
  cmp_cmd->add_option("--time-limit", cmp.time_limit, "Seconds");
  cmp_cmd->add_option("--out", cmp.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return cmd_generate(gen);
    if (*solve_cmd) return cmd_solve(solve_opt);
    if (*cmp_cmd) return cmd_compare(cmp);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
