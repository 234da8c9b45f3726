// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/bench.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

namespace levelopt::harness {

RunTrace subgradient_baseline(const Instance& inst, std::size_t iters) {
  RunTrace trace;
  TraceSink sink;
  sink.trace = &trace;
  sink.phase = 1;
  const double lb = inst.known_optimum
                        ? *inst.known_optimum
                        : -std::numeric_limits<double>::infinity();
  const double dx = inst.domain.euclidean_diameter();
  const double scale =
      inst.smoothness ? dx / std::max(inst.smoothness->M, 1e-12) : 1.0;

  Vec x = inst.start_point();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= iters; ++k) {
    const OracleEval e = inst.oracle(x);
    ++sink.oracle_calls;
    if (e.value < best) best = e.value;
    IterRecord::Diag diag;
    sink.row(best, lb, diag);
    const double step = scale / std::sqrt(static_cast<double>(k));
    Vec y = x;
    add_scaled(y, -step, e.subgrad);
    x = inst.domain.is_box() ? project_box(y, inst.domain.lower(),
                                           inst.domain.upper())
                             : project_simplex(y);
  }
  trace.final_ub = best;
  trace.final_lb = lb;
  trace.oracle_calls = sink.oracle_calls;
  trace.wall_ms = sink.elapsed_ms();
  return trace;
}

namespace {

const char* status_name(RunStatus s) {
  return s == RunStatus::converged ? "converged" : "cap_exceeded";
}

}  // namespace

RunOutcome run_method(const InstanceSpec& spec, const std::string& method,
                      double eps, const BenchParams& params) {
  RunOutcome out;
  out.instance = spec.name();
  out.method = method;
  out.eps = eps;

  const Instance inst = build_instance(spec);
  const Vec start = inst.start_point();

  if (method == "abl") {
    AblConfig cfg;
    cfg.lambda = params.lambda;
    cfg.policy = params.policy;
    cfg.epsilon = eps;
    cfg.max_phases = params.max_phases;
    SolveResult r = abl_solve(start, cfg, inst.domain, inst.oracle);
    out.status = status_name(r.trace.status);
    out.final_ub = r.ub;
    out.final_lb = r.lb;
    out.trace = std::move(r.trace);
    return out;
  }

  AplConfig acfg;
  acfg.beta = params.beta;
  acfg.theta = params.theta;
  acfg.policy = params.policy;
  acfg.bundle_limit = params.bundle;
  acfg.epsilon = eps;
  acfg.max_phases = params.max_phases;
  acfg.max_iters_per_call = params.max_iters_per_call;

  if (method == "apl") {
    SolveResult r =
        spec.family == InstanceSpec::Family::lovasz_tiny && spec.shrink_domain
            ? solve_lovasz(spec, acfg)
            : apl_solve(start, acfg, inst.prox, inst.domain, inst.oracle);
    out.status = status_name(r.trace.status);
    out.final_ub = r.ub;
    out.final_lb = r.lb;
    out.trace = std::move(r.trace);
    return out;
  }

  if (method == "apl-composite") {
    if (!inst.composite) {
      out.status = "unsupported";
      return out;
    }
    SolveResult r = apl_composite_solve(start, acfg, inst.prox, inst.domain,
                                        inst.composite->inner,
                                        inst.composite->psi);
    out.status = status_name(r.trace.status);
    out.final_ub = r.ub;
    out.final_lb = r.lb;
    out.trace = std::move(r.trace);
    return out;
  }

  if (method == "usl") {
    if (!inst.saddle) {
      out.status = "unsupported";
      return out;
    }
    UslConfig ucfg;
    ucfg.beta = params.beta;
    ucfg.theta = params.theta;
    ucfg.policy = params.policy;
    ucfg.bundle_limit = params.bundle;
    ucfg.epsilon = eps;
    ucfg.Q1 = params.usl_q1 > 0.0 ? params.usl_q1 : inst.saddle->dvy();
    ucfg.max_phases = params.max_phases;
    ucfg.max_iters_per_call = params.max_iters_per_call;
    SolveResult r = usl_solve(start, ucfg, inst.prox, *inst.saddle);
    out.status = status_name(r.trace.status);
    out.final_ub = r.ub;
    out.final_lb = r.lb;
    out.trace = std::move(r.trace);
    return out;
  }

  if (method == "subgrad") {
    // Oracle budget comparable to a level-method run at this tolerance.
    const std::size_t iters = 20000;
    out.trace = subgradient_baseline(inst, iters);
    out.final_ub = out.trace.final_ub;
    out.final_lb = out.trace.final_lb;
    out.status =
        out.final_ub - out.final_lb <= eps ? "converged" : "cap_exceeded";
    return out;
  }

  throw std::invalid_argument("unknown method: " + method);
}

BenchSuite parse_suite(const nlohmann::json& j) {
  BenchSuite suite;
  for (const auto& ij : j.at("instances")) suite.instances.push_back(parse_instance(ij));
  suite.methods = j.at("methods").get<std::vector<std::string>>();
  suite.epsilons = j.at("epsilons").get<std::vector<double>>();
  if (j.contains("params")) {
    const auto& p = j.at("params");
    suite.params.beta = p.value("beta", 0.5);
    suite.params.theta = p.value("theta", 0.5);
    suite.params.lambda = p.value("lambda", 0.75);
    suite.params.bundle = p.value("bundle", std::size_t{10});
    suite.params.usl_q1 = p.value("usl_q1", 0.0);
    const std::string pol = p.value("policy", std::string("poly"));
    if (pol == "poly")
      suite.params.policy = StepKind::polynomial;
    else if (pol == "recursive")
      suite.params.policy = StepKind::recursive;
    else
      throw std::invalid_argument("suite: policy must be poly|recursive");
  }
  return suite;
}

nlohmann::json run_bench(const BenchSuite& suite, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  struct Job {
    InstanceSpec spec;
    std::string method;
    double eps;
  };
  std::vector<Job> jobs;
  for (const auto& spec : suite.instances)
    for (const auto& method : suite.methods)
      for (double eps : suite.epsilons) jobs.push_back({spec, method, eps});

  std::vector<std::future<RunOutcome>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs)
    futures.push_back(std::async(std::launch::async, [&suite, job] {
      return run_method(job.spec, job.method, job.eps, suite.params);
    }));

  nlohmann::json summary;
  summary["schema"] = 1;
  summary["runs"] = nlohmann::json::array();
  for (std::size_t i = 0; i < futures.size(); ++i) {
    RunOutcome r = futures[i].get();
    nlohmann::json row;
    row["instance"] = r.instance;
    row["method"] = r.method;
    row["eps"] = r.eps;
    row["status"] = r.status;
    if (r.status != "unsupported") {
      std::ostringstream fname;
      fname << r.instance << "__" << r.method << "__eps" << r.eps << ".csv";
      const std::string csv = (fs::path(out_dir) / fname.str()).string();
      write_csv_file(r.trace, csv);
      row["csv"] = fname.str();
      row["iterations"] = r.trace.rows.size();
      row["phases"] = r.trace.phases.size();
      row["final_ub"] = r.final_ub;
      if (std::isfinite(r.final_lb)) {
        row["final_lb"] = r.final_lb;
        row["final_gap"] = r.final_ub - r.final_lb;
      }
      row["oracle_calls"] = r.trace.oracle_calls;
      row["wall_ms"] = r.trace.wall_ms;
    }
    summary["runs"].push_back(std::move(row));
  }
  std::ofstream f(fs::path(out_dir) / "summary.json");
  f << summary.dump(2) << "\n";
  return summary;
}

}  // namespace levelopt::harness
