// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "levelopt/bench.hpp"
#include "test_util.hpp"

using namespace levelopt;
using harness::InstanceSpec;

namespace {

std::string strip_wall_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out << line.substr(0, pos) << '\n';
  }
  return out.str();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("identical specs build identical instances") {
  InstanceSpec spec;
  spec.family = InstanceSpec::Family::max_eigenvalue;
  spec.n = 6;
  spec.m = 10;
  spec.seed = 99;
  const harness::Instance a = harness::build_instance(spec);
  const harness::Instance b = harness::build_instance(spec);
  testutil::Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    Vec x = rng.vec_uniform(6, 0.0, 1.0);
    const double s = kern::sum(x.data(), 6);
    for (auto& v : x) v /= s;
    const OracleEval ea = a.oracle(x);
    const OracleEval eb = b.oracle(x);
    CHECK(ea.value == eb.value);  // bitwise
    CHECK(ea.subgrad == eb.subgrad);
  }
  CHECK(a.saddle->opnorm() == b.saddle->opnorm());
}

TEST_CASE("instance spec JSON round trip") {
  InstanceSpec spec;
  spec.family = InstanceSpec::Family::hoelder;
  spec.rho = 0.5;
  spec.n = 7;
  spec.seed = 42;
  spec.box_lower = Vec(7, -2.0);
  spec.box_upper = Vec(7, 2.0);
  spec.smoothness = SmoothnessClass{0.5, 1.4142};
  const nlohmann::json j = harness::to_json(spec);
  const InstanceSpec back = harness::parse_instance(j);
  CHECK(back.family == spec.family);
  CHECK(back.rho == spec.rho);
  CHECK(back.n == spec.n);
  CHECK(back.seed == spec.seed);
  CHECK(back.box_lower == spec.box_lower);
  CHECK(back.smoothness->M == spec.smoothness->M);
  CHECK_THROWS(harness::parse_instance(nlohmann::json{{"family", "nope"}}));
}

TEST_CASE("deterministic traces: identical bytes except wall time") {
  InstanceSpec spec;
  spec.family = InstanceSpec::Family::hoelder;
  spec.rho = 0.0;
  spec.n = 5;
  spec.seed = 7;
  harness::BenchParams params;
  const harness::RunOutcome a = harness::run_method(spec, "apl", 1e-5, params);
  const harness::RunOutcome b = harness::run_method(spec, "apl", 1e-5, params);
  std::ostringstream ca, cb;
  write_csv(a.trace, ca);
  write_csv(b.trace, cb);
  CHECK(strip_wall_column(ca.str()) == strip_wall_column(cb.str()));
  CHECK(validate_trace(a.trace) == "");
}

TEST_CASE("csv round trip preserves the column contract") {
  InstanceSpec spec;
  spec.family = InstanceSpec::Family::l1_regression;
  spec.n = 4;
  spec.seed = 5;
  harness::BenchParams params;
  const harness::RunOutcome r = harness::run_method(spec, "apl", 1e-6, params);
  const std::string path = "/tmp/levelopt_roundtrip.csv";
  write_csv_file(r.trace, path);
  const RunTrace back = read_csv_file(path);
  REQUIRE(back.rows.size() == r.trace.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    CHECK(back.rows[i].ub == r.trace.rows[i].ub);
    CHECK(back.rows[i].lb == r.trace.rows[i].lb);
    CHECK(back.rows[i].oracle_calls == r.trace.rows[i].oracle_calls);
  }
  CHECK(validate_trace(back) == "");
  // every row brackets the known optimum
  const harness::Instance inst = harness::build_instance(spec);
  for (const auto& row : back.rows) {
    CHECK(row.lb <= *inst.known_optimum + 1e-9);
    CHECK(row.ub >= *inst.known_optimum - 1e-9);
  }
}

TEST_CASE("subgradient baseline") {
  SUBCASE("affine objective reaches a vertex") {
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::hoelder;  // placeholder domain source
    spec.n = 3;
    harness::Instance inst = harness::build_instance(spec);
    const Vec c{1.0, -0.5, 0.25};
    inst.oracle = [c](const Vec& x) { return OracleEval{dot(c, x), c}; };
    Vec arg;
    inst.known_optimum = inst.domain.min_linear(c, &arg);
    inst.smoothness = SmoothnessClass{0.0, 2.0 * norm2(c)};
    const RunTrace tr = harness::subgradient_baseline(inst, 4000);
    CHECK(tr.final_ub <= *inst.known_optimum + 1e-3);
    CHECK(validate_trace(tr) == "");
  }
  SUBCASE("zero objective never moves") {
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::hoelder;
    spec.n = 2;
    harness::Instance inst = harness::build_instance(spec);
    inst.oracle = [](const Vec& x) {
      return OracleEval{0.0, Vec(x.size(), 0.0)};
    };
    inst.known_optimum = 0.0;
    const RunTrace tr = harness::subgradient_baseline(inst, 50);
    CHECK(tr.final_ub == 0.0);
    CHECK(tr.final_lb == 0.0);
  }
  SUBCASE("level method beats the baseline at equal oracle budget") {
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::hoelder;
    spec.rho = 0.0;
    spec.n = 10;
    spec.seed = 2;
    const harness::Instance inst = harness::build_instance(spec);
    harness::BenchParams params;
    const harness::RunOutcome level = harness::run_method(spec, "apl", 1e-6, params);
    const RunTrace base =
        harness::subgradient_baseline(inst, level.trace.oracle_calls);
    MESSAGE("apl ub: ", level.final_ub, "  subgrad ub: ", base.final_ub);
    CHECK(level.final_ub <= base.final_ub + 1e-12);  // recorded comparison
  }
}

TEST_CASE("graph capacity smoke values") {
  SUBCASE("pentagon") {
    // seed 4 generates the 5-cycle; its capacity is sqrt(5)
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::lovasz_tiny;
    spec.nodes = 5;
    spec.extra_edges = 1;
    spec.seed = 4;
    const harness::Instance inst = harness::build_instance(spec);
    REQUIRE(inst.domain.dim() == 5);  // 5 edges: the cycle
    AplConfig cfg;
    cfg.epsilon = 1e-5;
    cfg.max_phases = 150;
    const SolveResult r = harness::solve_lovasz(spec, cfg);
    REQUIRE(r.trace.status == RunStatus::converged);
    CHECK(r.ub == doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
    CHECK(r.lb <= std::sqrt(5.0) + 1e-6);
  }
  SUBCASE("complete graph has capacity 1") {
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::lovasz_tiny;
    spec.nodes = 4;
    spec.extra_edges = 12;
    spec.seed = 1;
    const harness::Instance inst = harness::build_instance(spec);
    REQUIRE(inst.domain.dim() == 6);  // all edges present
    AplConfig cfg;
    cfg.epsilon = 1e-5;
    cfg.max_phases = 150;
    const SolveResult r = harness::solve_lovasz(spec, cfg);
    REQUIRE(r.trace.status == RunStatus::converged);
    CHECK(r.ub == doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("domain shrinking does not change the answer") {
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::lovasz_tiny;
    spec.nodes = 6;
    spec.extra_edges = 3;
    spec.seed = 9;
    AplConfig cfg;
    cfg.epsilon = 1e-5;
    cfg.max_phases = 200;
    const SolveResult with = harness::solve_lovasz(spec, cfg);
    spec.shrink_domain = false;
    InstanceSpec fixed = spec;
    const harness::Instance inst = harness::build_instance(fixed);
    const SolveResult without = apl_solve(inst.start_point(), cfg, inst.prox,
                                          inst.domain, inst.oracle);
    REQUIRE(with.trace.status == RunStatus::converged);
    REQUIRE(without.trace.status == RunStatus::converged);
    CHECK(std::fabs(with.ub - without.ub) <= 3e-5);
  }
}

TEST_CASE("bench driver") {
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/levelopt_bench_test";
  fs::remove_all(dir);

  SUBCASE("empty method list gives an empty summary") {
    harness::BenchSuite suite;
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::hoelder;
    suite.instances.push_back(spec);
    suite.epsilons = {1e-3};
    const nlohmann::json summary = harness::run_bench(suite, dir);
    CHECK(summary.at("schema") == 1);
    CHECK(summary.at("runs").empty());
    CHECK(fs::exists(fs::path(dir) / "summary.json"));
  }

  SUBCASE("single instance run produces the expected artifacts") {
    harness::BenchSuite suite;
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::hoelder;
    spec.rho = 0.5;
    spec.n = 5;
    spec.seed = 3;
    suite.instances.push_back(spec);
    suite.methods = {"apl", "apl-composite"};
    suite.epsilons = {1e-3};
    const nlohmann::json summary = harness::run_bench(suite, dir);
    REQUIRE(summary.at("runs").size() == 2);
    const auto& first = summary.at("runs").at(0);
    CHECK(first.at("status") == "converged");
    CHECK(first.at("final_gap").get<double>() <= 1e-3);
    CHECK(fs::exists(fs::path(dir) / first.at("csv").get<std::string>()));
    // hoelder has no composite form: the second run is unsupported
    CHECK(summary.at("runs").at(1).at("status") == "unsupported");
  }

  SUBCASE("suite json parsing") {
    nlohmann::json j;
    j["instances"] = nlohmann::json::array({harness::to_json(InstanceSpec{})});
    j["methods"] = {"apl"};
    j["epsilons"] = {1e-2};
    j["params"]["beta"] = 0.4;
    j["params"]["policy"] = "recursive";
    const harness::BenchSuite suite = harness::parse_suite(j);
    CHECK(suite.params.beta == 0.4);
    CHECK(suite.params.policy == StepKind::recursive);
    j["params"]["policy"] = "quadratic";
    CHECK_THROWS(harness::parse_suite(j));
  }
}

TEST_CASE("cli exit codes") {
  const char* bin = std::getenv("LEVELOPT_BIN");
  REQUIRE(bin != nullptr);
  const std::string b(bin);
  {
    std::ofstream f("/tmp/levelopt_cli_inst.json");
    f << R"({"family":"hoelder","rho":1.0,"n":4,"seed":8})";
  }
  CHECK(std::system((b + " solve --instance /tmp/levelopt_cli_inst.json"
                         " --method apl --eps 1e-4 --trace /tmp/levelopt_cli.csv"
                         " > /dev/null").c_str()) == 0);
  CHECK(std::filesystem::exists("/tmp/levelopt_cli.csv"));
  // input error: missing file
  CHECK(WEXITSTATUS(std::system(
            (b + " solve --instance /tmp/does_not_exist.json > /dev/null 2>&1")
                .c_str())) == 1);
  // input error: method incompatible with the instance
  CHECK(WEXITSTATUS(std::system(
            (b + " solve --instance /tmp/levelopt_cli_inst.json --method usl"
                 " > /dev/null 2>&1").c_str())) == 1);
  // cap exceeded: baseline cannot certify the gap without a known optimum
  {
    std::ofstream f("/tmp/levelopt_cli_mm.json");
    f << R"({"family":"minimax_quadratics","n":3,"seed":8})";
  }
  CHECK(WEXITSTATUS(std::system(
            (b + " solve --instance /tmp/levelopt_cli_mm.json --method subgrad"
                 " --eps 1e-8 > /dev/null 2>&1").c_str())) == 2);
  // bench path
  {
    std::ofstream f("/tmp/levelopt_cli_suite.json");
    f << R"({"instances":[{"family":"hoelder","rho":0.0,"n":4,"seed":8}],)"
      << R"("methods":["apl"],"epsilons":[1e-3]})";
  }
  CHECK(std::system((b + " bench --suite /tmp/levelopt_cli_suite.json"
                         " --out /tmp/levelopt_cli_bench > /dev/null").c_str()) == 0);
  CHECK(std::filesystem::exists("/tmp/levelopt_cli_bench/summary.json"));
}

TEST_CASE("harness smoothness metadata holds on sampled pairs") {
  // f(y) - f(x) - <f'(x), y - x> <= M/(1+rho) ||y-x||^(1+rho) for the
  // generated instances that carry (M, rho).
  testutil::Rng rng(271);
  for (double rho : {0.0, 0.5, 1.0}) {
    InstanceSpec spec;
    spec.family = InstanceSpec::Family::hoelder;
    spec.rho = rho;
    spec.n = 4;
    spec.seed = 31;
    const harness::Instance inst = harness::build_instance(spec);
    const double M = inst.smoothness->M;
    for (int t = 0; t < 300; ++t) {
      const Vec x = rng.vec_uniform(4, 0.0, 1.0);
      const Vec y = rng.vec_uniform(4, 0.0, 1.0);
      const OracleEval ex = inst.oracle(x);
      const OracleEval ey = inst.oracle(y);
      double inner = 0.0;
      for (int i = 0; i < 4; ++i) inner += ex.subgrad[i] * (y[i] - x[i]);
      const double lhs = ey.value - ex.value - inner;
      const double rhs =
          M / (1.0 + rho) * std::pow(std::sqrt(dist2sq(x, y)), 1.0 + rho);
      CHECK(lhs <= rhs + 1e-12);
    }
  }
  // same for the l1-regression metadata (rho = 0, M from the Lipschitz bound)
  InstanceSpec spec;
  spec.family = InstanceSpec::Family::l1_regression;
  spec.n = 4;
  spec.seed = 32;
  const harness::Instance inst = harness::build_instance(spec);
  const double M = inst.smoothness->M;
  for (int t = 0; t < 300; ++t) {
    const Vec x = rng.vec_uniform(4, -1.5, 1.5);
    const Vec y = rng.vec_uniform(4, -1.5, 1.5);
    const OracleEval ex = inst.oracle(x);
    const OracleEval ey = inst.oracle(y);
    double inner = 0.0;
    for (int i = 0; i < 4; ++i) inner += ex.subgrad[i] * (y[i] - x[i]);
    CHECK(ey.value - ex.value - inner <= M * std::sqrt(dist2sq(x, y)) + 1e-12);
  }
}
