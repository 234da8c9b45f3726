// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "levelopt/composite.hpp"
#include "levelopt/usl.hpp"

namespace levelopt::harness {

/// Declarative description of a benchmark instance. Identical specs generate
/// bitwise-identical instances (seeded, deterministic generation).
struct InstanceSpec {
  enum class Family {
    hoelder,            // ||x - x*||^(1+rho)/(1+rho) on a box
    l1_regression,      // 0.5 ||x - a||^2 + w ||x||_1 on a box
    minimax_quadratics, // max_i ||x - c_i||^2 on a box
    max_eigenvalue,     // lambda_1(A0 + sum x_i A_i) on the simplex
    lovasz_tiny         // graph capacity smoke test, <= 12 nodes
  };

  Family family = Family::hoelder;
  std::uint64_t seed = 1;

  // hoelder
  double rho = 0.0;
  std::size_t n = 10;
  Vec box_lower, box_upper;  // empty: unit box [0,1]^n
  Vec xstar;                 // empty: seeded interior point

  // l1_regression
  double l1_weight = 1.0;

  // minimax_quadratics
  std::size_t centers = 2;

  // max_eigenvalue
  std::size_t m = 20;
  double density = 1.0;

  // lovasz_tiny
  std::size_t nodes = 5;
  std::size_t extra_edges = 0;  // edges beyond the random spanning tree
  bool shrink_domain = true;    // refresh the variable bounds each phase

  std::optional<double> known_optimum;       // filled when analytic
  std::optional<SmoothnessClass> smoothness; // filled when derivable

  std::string name() const;
};

InstanceSpec parse_instance(const nlohmann::json& j);
nlohmann::json to_json(const InstanceSpec& s);

/// Composite view of an instance, for the modified fixed-level method.
struct CompositeForm {
  PsiTemplate psi;
  InnerOracle inner;
};

/// A fully built instance: domain, prox pairing, oracle, and the structured
/// views the specialized solvers need.
struct Instance {
  std::string name;
  InstanceSpec spec;
  FeasibleSet domain;
  ProxSetup prox;
  Oracle oracle;
  std::optional<double> known_optimum;
  std::optional<SmoothnessClass> smoothness;
  std::shared_ptr<const SaddleProblem> saddle;  // eigenvalue families only
  std::optional<CompositeForm> composite;       // composite families only

  Instance(FeasibleSet d, ProxSetup p) : domain(std::move(d)), prox(p) {}

  Vec start_point() const { return domain.interior_point(); }
};

/// Deterministic construction from the spec (same spec, same bits).
Instance build_instance(const InstanceSpec& spec);

/// Graph capacity with per-phase domain shrinking: the variable box is
/// rebuilt from the incumbent upper bound between gap-reduction calls.
/// Returns the usual solve result; phases carry the standard records.
SolveResult solve_lovasz(const InstanceSpec& spec, const AplConfig& cfg);

}  // namespace levelopt::harness
