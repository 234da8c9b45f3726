// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/abl.hpp"
#include "levelopt/instances.hpp"

namespace levelopt::harness {

struct BenchParams {
  double beta = 0.5;
  double theta = 0.5;
  double lambda = 0.75;
  std::size_t bundle = 10;
  StepKind policy = StepKind::polynomial;
  double usl_q1 = 0.0;  // 0: use the problem's exact prox size
  std::size_t max_phases = 200;
  std::size_t max_iters_per_call = 100000;
};

/// Projected subgradient descent, the comparison baseline. Step size
/// DX / (M sqrt(k)) from the smoothness metadata when present, else
/// 1/sqrt(k). Emits the shared trace schema; lb is the known optimum when
/// available and -inf otherwise.
RunTrace subgradient_baseline(const Instance& inst, std::size_t iters);

struct RunOutcome {
  std::string instance;
  std::string method;
  double eps = 0.0;
  std::string status;  // converged | cap_exceeded | unsupported
  double final_ub = 0.0;
  double final_lb = 0.0;
  RunTrace trace;
};

/// One (instance, method, eps) run; method is one of
/// abl | apl | apl-composite | usl | subgrad.
RunOutcome run_method(const InstanceSpec& spec, const std::string& method,
                      double eps, const BenchParams& params);

struct BenchSuite {
  std::vector<InstanceSpec> instances;
  std::vector<std::string> methods;
  std::vector<double> epsilons;
  BenchParams params;
};

BenchSuite parse_suite(const nlohmann::json& j);

/// Runs the whole suite (instances in parallel worker threads), writing one
/// CSV per run plus summary.json under out_dir. Deterministic given the
/// seeds, wall-time columns aside. Returns the summary document.
nlohmann::json run_bench(const BenchSuite& suite, const std::string& out_dir);

}  // namespace levelopt::harness
