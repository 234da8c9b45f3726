// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "levelopt/bench.hpp"

using namespace levelopt;

namespace {

int run_solve(const std::string& instance_path, const std::string& method,
              double eps, const harness::BenchParams& params,
              const std::string& trace_path, std::uint64_t seed,
              bool seed_given) {
  std::ifstream f(instance_path);
  if (!f) {
    std::cerr << "error: cannot open instance file: " << instance_path << "\n";
    return 1;
  }
  nlohmann::json j;
  f >> j;
  harness::InstanceSpec spec = harness::parse_instance(j);
  if (seed_given) spec.seed = seed;

  const harness::RunOutcome out = harness::run_method(spec, method, eps, params);
  if (out.status == "unsupported") {
    std::cerr << "error: method " << method << " does not apply to instance "
              << spec.name() << "\n";
    return 1;
  }
  if (!trace_path.empty()) write_csv_file(out.trace, trace_path);

  std::cout << "instance: " << out.instance << "\n"
            << "method:   " << out.method << "\n"
            << "status:   " << out.status << "\n"
            << "ub:       " << out.final_ub << "\n"
            << "lb:       " << out.final_lb << "\n"
            << "gap:      " << out.final_ub - out.final_lb << "\n"
            << "iters:    " << out.trace.rows.size() << "\n"
            << "phases:   " << out.trace.phases.size() << "\n"
            << "oracle:   " << out.trace.oracle_calls << "\n";
  return out.status == "converged" ? 0 : 2;
}

int run_bench_cmd(const std::string& suite_path, const std::string& out_dir) {
  std::ifstream f(suite_path);
  if (!f) {
    std::cerr << "error: cannot open suite file: " << suite_path << "\n";
    return 1;
  }
  nlohmann::json j;
  f >> j;
  const harness::BenchSuite suite = harness::parse_suite(j);
  const nlohmann::json summary = harness::run_bench(suite, out_dir);
  std::size_t failed = 0;
  for (const auto& row : summary.at("runs"))
    if (row.at("status") != "converged") ++failed;
  std::cout << "runs: " << summary.at("runs").size() << ", non-converged: "
            << failed << ", summary: " << out_dir << "/summary.json\n";
  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bundle-level convex optimization toolkit"};
  app.require_subcommand(1);

  std::string instance_path, trace_path, method = "apl";
  double eps = 1e-4;
  harness::BenchParams params;
  std::string policy = "poly";
  std::uint64_t seed = 0;

  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("--instance", instance_path, "instance spec JSON")->required();
  solve->add_option("--method", method, "abl|apl|apl-composite|usl|subgrad")
      ->check(CLI::IsMember({"abl", "apl", "apl-composite", "usl", "subgrad"}));
  solve->add_option("--eps", eps, "target gap");
  solve->add_option("--beta", params.beta, "level weight");
  solve->add_option("--theta", params.theta, "exit tightness");
  solve->add_option("--lambda", params.lambda, "full-memory contraction factor");
  solve->add_option("--bundle", params.bundle, "retained cut limit");
  solve->add_option("--policy", policy, "poly|recursive")
      ->check(CLI::IsMember({"poly", "recursive"}));
  solve->add_option("--trace", trace_path, "per-iteration CSV output");
  auto* seed_opt = solve->add_option("--seed", seed, "instance seed override");

  std::string suite_path, out_dir = "bench_out";
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("--suite", suite_path, "suite JSON")->required();
  bench->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    params.policy =
        policy == "recursive" ? StepKind::recursive : StepKind::polynomial;
    if (solve->parsed())
      return run_solve(instance_path, method, eps, params, trace_path, seed,
                       seed_opt->count() > 0);
    return run_bench_cmd(suite_path, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
