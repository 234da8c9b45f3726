// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/instances.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace levelopt::harness {

namespace {

// Deterministic generator with an explicit output mapping so that identical
// specs produce identical instances on any libstdc++.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

  double normal() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

Vec box_lower_of(const InstanceSpec& s) {
  return s.box_lower.empty() ? Vec(s.n, 0.0) : s.box_lower;
}
Vec box_upper_of(const InstanceSpec& s) {
  return s.box_upper.empty() ? Vec(s.n, 1.0) : s.box_upper;
}

double max_dist_to_box(const Vec& c, const Vec& lo, const Vec& hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = std::max(std::fabs(c[i] - lo[i]), std::fabs(c[i] - hi[i]));
    s += d * d;
  }
  return std::sqrt(s);
}

Instance build_hoelder(const InstanceSpec& spec) {
  const Vec lo = box_lower_of(spec), hi = box_upper_of(spec);
  Instance inst(FeasibleSet::box(lo, hi), ProxSetup::euclidean());
  Vec center = spec.xstar;
  if (center.empty()) {
    Rng rng(spec.seed);
    center.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
      center[i] = lo[i] + (0.25 + 0.5 * rng.uniform()) * (hi[i] - lo[i]);
  }
  const double rho = spec.rho;
  inst.oracle = [center, rho](const Vec& x) {
    const double r = std::sqrt(dist2sq(x, center));
    OracleEval e;
    e.value = std::pow(r, 1.0 + rho) / (1.0 + rho);
    e.subgrad.assign(x.size(), 0.0);
    if (r > 0.0)
      for (std::size_t i = 0; i < x.size(); ++i)
        e.subgrad[i] = std::pow(r, rho - 1.0) * (x[i] - center[i]);
    return e;
  };
  inst.known_optimum = 0.0;
  inst.smoothness = SmoothnessClass{rho, std::pow(2.0, 1.0 - rho)};
  return inst;
}

Instance build_l1_regression(const InstanceSpec& spec) {
  Vec lo = spec.box_lower.empty() ? Vec(spec.n, -1.5) : spec.box_lower;
  Vec hi = spec.box_upper.empty() ? Vec(spec.n, 1.5) : spec.box_upper;
  Instance inst(FeasibleSet::box(lo, hi), ProxSetup::euclidean());
  Rng rng(spec.seed);
  Vec a(spec.n);
  for (auto& v : a) v = rng.uniform(-2.0, 2.0);
  const double w = spec.l1_weight;

  inst.oracle = [a, w](const Vec& x) {
    OracleEval e;
    e.value = 0.5 * dist2sq(x, a) + w * norm1(x);
    e.subgrad.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double sgn = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
      e.subgrad[i] = x[i] - a[i] + w * sgn;
    }
    return e;
  };

  // Per-coordinate soft threshold, clamped to the box.
  double fstar = 0.0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    double t = a[i] > w ? a[i] - w : (a[i] < -w ? a[i] + w : 0.0);
    t = std::min(std::max(t, lo[i]), hi[i]);
    fstar += 0.5 * (t - a[i]) * (t - a[i]) + w * std::fabs(t);
  }
  inst.known_optimum = fstar;

  const double lip = max_dist_to_box(a, lo, hi) +
                     w * std::sqrt(static_cast<double>(spec.n));
  inst.smoothness = SmoothnessClass{0.0, 2.0 * lip};

  CompositeForm cf;
  cf.psi = PsiTemplate::linear_plus_l1(w);
  cf.inner = [a](const Vec& x) {
    InnerEval e;
    e.values.push_back(0.5 * dist2sq(x, a));
    e.slopes.push_back(sub(x, a));
    return e;
  };
  inst.composite = std::move(cf);
  return inst;
}

Instance build_minimax(const InstanceSpec& spec) {
  Vec lo = spec.box_lower.empty() ? Vec(spec.n, -1.0) : spec.box_lower;
  Vec hi = spec.box_upper.empty() ? Vec(spec.n, 1.0) : spec.box_upper;
  Instance inst(FeasibleSet::box(lo, hi), ProxSetup::euclidean());
  Rng rng(spec.seed);
  std::vector<Vec> centers(spec.centers);
  for (auto& c : centers) {
    c.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
      c[i] = lo[i] + (0.2 + 0.6 * rng.uniform()) * (hi[i] - lo[i]);
  }

  inst.oracle = [centers](const Vec& x) {
    std::size_t best = 0;
    double bv = -1e308;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double v = dist2sq(x, centers[j]);
      if (v > bv) {
        bv = v;
        best = j;
      }
    }
    OracleEval e;
    e.value = bv;
    e.subgrad = sub(x, centers[best]);
    kern::scal(2.0, e.subgrad.data(), e.subgrad.size());
    return e;
  };

  double lip = 0.0;
  for (const auto& c : centers) lip = std::max(lip, 2.0 * max_dist_to_box(c, lo, hi));
  inst.smoothness = SmoothnessClass{0.0, 2.0 * lip};

  CompositeForm cf;
  cf.psi = PsiTemplate::max_of(spec.centers);
  cf.inner = [centers](const Vec& x) {
    InnerEval e;
    for (const auto& c : centers) {
      e.values.push_back(dist2sq(x, c));
      Vec g = sub(x, c);
      kern::scal(2.0, g.data(), g.size());
      e.slopes.push_back(std::move(g));
    }
    return e;
  };
  inst.composite = std::move(cf);
  return inst;
}

eig::SymMatrix random_sym(Rng& rng, std::size_t m, double density) {
  eig::SymMatrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      if (density < 1.0 && rng.uniform() > density) continue;
      a.set(i, j, rng.normal());
    }
  return a;
}

Instance build_max_eigenvalue(const InstanceSpec& spec) {
  Rng rng(spec.seed);
  std::vector<eig::SymMatrix> mats;
  mats.reserve(spec.n + 1);
  for (std::size_t i = 0; i <= spec.n; ++i)
    mats.push_back(random_sym(rng, spec.m, spec.density));
  auto saddle = std::make_shared<SaddleProblem>(
      SaddleProblem::max_eigenvalue(std::move(mats), FeasibleSet::simplex(spec.n)));

  Instance inst(saddle->domain(), ProxSetup::entropy());
  inst.saddle = saddle;
  inst.oracle = [saddle](const Vec& x) { return saddle->eval_F(x); };
  inst.smoothness = SmoothnessClass{0.0, 2.0 * saddle->opnorm()};
  return inst;
}

struct Graph {
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

Graph random_graph(const InstanceSpec& spec) {
  if (spec.nodes < 2 || spec.nodes > 12)
    throw std::invalid_argument("lovasz_tiny: 2..12 nodes supported");
  Rng rng(spec.seed);
  Graph g;
  g.nodes = spec.nodes;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  // spanning tree first, then extra random edges
  for (std::size_t i = 1; i < spec.nodes; ++i) {
    const std::size_t j = rng.index(i);
    seen.insert({j, i});
  }
  std::size_t attempts = 0;
  std::size_t added = 0;
  while (added < spec.extra_edges && attempts < 200) {
    ++attempts;
    std::size_t a = rng.index(spec.nodes);
    std::size_t b = rng.index(spec.nodes);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) ++added;
  }
  g.edges.assign(seen.begin(), seen.end());
  return g;
}

std::vector<eig::SymMatrix> lovasz_pencil(const Graph& g) {
  const std::size_t q = g.nodes;
  eig::SymMatrix d(q);
  std::set<std::pair<std::size_t, std::size_t>> edge_set(g.edges.begin(),
                                                         g.edges.end());
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i; j < q; ++j)
      if (i == j || !edge_set.count({i, j})) d.set(i, j, 1.0);
  std::vector<eig::SymMatrix> mats{d};
  for (const auto& [i, j] : g.edges) {
    eig::SymMatrix e(q);
    e.set(i, j, 1.0);
    mats.push_back(std::move(e));
  }
  return mats;
}

Instance build_lovasz(const InstanceSpec& spec) {
  const Graph g = random_graph(spec);
  auto mats = lovasz_pencil(g);
  const std::size_t n = g.edges.size();
  // initial bound v = lambda_1(d) at x = 0
  const double v0 = eig::jacobi_eig(mats[0]).eigenvalues[0];
  const double r = std::max(v0 - 1.0, 1e-6);
  Instance inst(FeasibleSet::box(Vec(n, -r), Vec(n, r)), ProxSetup::euclidean());
  auto shared = std::make_shared<std::vector<eig::SymMatrix>>(std::move(mats));
  inst.oracle = [shared](const Vec& x) {
    const eig::SymMatrix ax = eig::apply_A(*shared, x);
    const eig::EigDecomp d = eig::jacobi_eig(ax);
    OracleEval e;
    e.value = d.eigenvalues[0];
    const double* u = d.vector(0);
    const std::size_t q = ax.dim();
    e.subgrad.resize(shared->size() - 1);
    Vec tmp(q);
    for (std::size_t i = 1; i < shared->size(); ++i) {
      const Vec uv(u, u + q);
      (*shared)[i].multiply(uv, tmp);
      e.subgrad[i - 1] = kern::dot(u, tmp.data(), q);
    }
    return e;
  };
  return inst;
}

}  // namespace

std::string InstanceSpec::name() const {
  std::ostringstream os;
  switch (family) {
    case Family::hoelder:
      os << "hoelder_rho" << rho << "_n" << n;
      break;
    case Family::l1_regression:
      os << "l1reg_n" << n;
      break;
    case Family::minimax_quadratics:
      os << "minimax_n" << n << "_m" << centers;
      break;
    case Family::max_eigenvalue:
      os << "maxeig_n" << n << "_m" << m;
      break;
    case Family::lovasz_tiny:
      os << "lovasz_q" << nodes;
      break;
  }
  os << "_s" << seed;
  return os.str();
}

Instance build_instance(const InstanceSpec& spec) {
  Instance inst = [&] {
    switch (spec.family) {
      case InstanceSpec::Family::hoelder:
        return build_hoelder(spec);
      case InstanceSpec::Family::l1_regression:
        return build_l1_regression(spec);
      case InstanceSpec::Family::minimax_quadratics:
        return build_minimax(spec);
      case InstanceSpec::Family::max_eigenvalue:
        return build_max_eigenvalue(spec);
      case InstanceSpec::Family::lovasz_tiny:
        return build_lovasz(spec);
    }
    throw std::invalid_argument("unknown family");
  }();
  inst.spec = spec;
  inst.name = spec.name();
  if (spec.known_optimum) inst.known_optimum = spec.known_optimum;
  if (spec.smoothness) inst.smoothness = spec.smoothness;
  return inst;
}

SolveResult solve_lovasz(const InstanceSpec& spec, const AplConfig& cfg) {
  if (spec.family != InstanceSpec::Family::lovasz_tiny)
    throw std::invalid_argument("solve_lovasz: wrong family");
  Instance inst = build_instance(spec);
  SolveResult out;
  TraceSink sink;
  sink.trace = &out.trace;
  detail::ScalarLevelOracle adapter(inst.oracle);

  Vec p(inst.domain.dim(), 0.0);
  const GenCut c0 = adapter.cut_at(p);
  ++sink.oracle_calls;
  double ub0 = c0.pieces[0].value;  // Phi(0) = lambda_1(d)

  auto domain_for = [&](double v) {
    const double r = std::max(v - 1.0, 1e-6);
    const std::size_t n = inst.domain.dim();
    return FeasibleSet::box(Vec(n, -r), Vec(n, r));
  };

  FeasibleSet domain = spec.shrink_domain ? domain_for(ub0) : inst.domain;
  const LocalizerSet plain(domain, cfg.bundle_limit);
  const SubproblemReport rep0 = solve_lower_bound(plain, c0);
  sink.subproblem_iters += rep0.dual_iterations;
  p = rep0.minimizer;
  double lb = rep0.optimal_value;
  UpperEval at_p = adapter.upper_at(p);
  ++sink.oracle_calls;
  double ub = at_p.f;

  const LevelGapParams params = detail::params_of(cfg);
  for (std::size_t s = 1; s <= cfg.max_phases; ++s) {
    if (ub - lb <= cfg.epsilon) break;
    if (spec.shrink_domain) {
      domain = domain_for(ub);
      // Any point with value ub stays inside the refreshed box up to
      // roundoff; re-evaluate if the projection actually moved it.
      if (!domain.contains(p, 0.0)) {
        p = project_box(p, domain.lower(), domain.upper());
        at_p = adapter.upper_at(p);
        ++sink.oracle_calls;
        ub = at_p.f;
      }
    }
    sink.phase = s;
    PhaseRecord ph;
    ph.phase_index = s;
    ph.delta0 = ub - lb;
    const LevelGapResult r =
        level_gap(adapter, domain, inst.prox, p, at_p, lb, params, sink);
    ph.iterations = r.iterations;
    ph.significant = true;
    ph.exit = r.exit;
    out.trace.phases.push_back(ph);
    p = r.p_plus;
    lb = r.lb_plus;
    ub = r.ub_plus;
    at_p = UpperEval{ub, ub};
    if (r.exit == GapExit::cap) {
      out.trace.status = RunStatus::cap_exceeded;
      break;
    }
  }
  if (out.trace.status == RunStatus::converged && ub - lb > cfg.epsilon)
    out.trace.status = RunStatus::cap_exceeded;
  out.solution = p;
  out.ub = ub;
  out.lb = lb;
  out.trace.final_ub = ub;
  out.trace.final_lb = lb;
  out.trace.oracle_calls = sink.oracle_calls;
  out.trace.subproblem_iters = sink.subproblem_iters;
  out.trace.wall_ms = sink.elapsed_ms();
  return out;
}

namespace {

const char* family_name(InstanceSpec::Family f) {
  switch (f) {
    case InstanceSpec::Family::hoelder: return "hoelder";
    case InstanceSpec::Family::l1_regression: return "l1_regression";
    case InstanceSpec::Family::minimax_quadratics: return "minimax_quadratics";
    case InstanceSpec::Family::max_eigenvalue: return "max_eigenvalue";
    case InstanceSpec::Family::lovasz_tiny: return "lovasz_tiny";
  }
  return "?";
}

InstanceSpec::Family family_of(const std::string& s) {
  if (s == "hoelder") return InstanceSpec::Family::hoelder;
  if (s == "l1_regression") return InstanceSpec::Family::l1_regression;
  if (s == "minimax_quadratics") return InstanceSpec::Family::minimax_quadratics;
  if (s == "max_eigenvalue") return InstanceSpec::Family::max_eigenvalue;
  if (s == "lovasz_tiny") return InstanceSpec::Family::lovasz_tiny;
  throw std::invalid_argument("unknown instance family: " + s);
}

}  // namespace

InstanceSpec parse_instance(const nlohmann::json& j) {
  InstanceSpec s;
  s.family = family_of(j.at("family").get<std::string>());
  s.seed = j.value("seed", std::uint64_t{1});
  s.rho = j.value("rho", 0.0);
  s.n = j.value("n", std::size_t{10});
  if (j.contains("box")) {
    const auto& b = j.at("box");
    s.box_lower = b.at("lower").get<Vec>();
    s.box_upper = b.at("upper").get<Vec>();
    s.n = s.box_lower.size();
  }
  if (j.contains("xstar")) s.xstar = j.at("xstar").get<Vec>();
  s.l1_weight = j.value("l1_weight", 1.0);
  s.centers = j.value("centers", std::size_t{2});
  s.m = j.value("m", std::size_t{20});
  s.density = j.value("density", 1.0);
  s.nodes = j.value("nodes", std::size_t{5});
  s.extra_edges = j.value("extra_edges", std::size_t{0});
  s.shrink_domain = j.value("shrink_domain", true);
  if (j.contains("known_optimum") && !j.at("known_optimum").is_null())
    s.known_optimum = j.at("known_optimum").get<double>();
  if (j.contains("smoothness") && !j.at("smoothness").is_null()) {
    SmoothnessClass sc;
    sc.rho = j.at("smoothness").at("rho").get<double>();
    sc.M = j.at("smoothness").at("M").get<double>();
    s.smoothness = sc;
  }
  if (s.rho < 0.0 || s.rho > 1.0)
    throw std::invalid_argument("instance: rho in [0,1] required");
  return s;
}

nlohmann::json to_json(const InstanceSpec& s) {
  nlohmann::json j;
  j["family"] = family_name(s.family);
  j["seed"] = s.seed;
  switch (s.family) {
    case InstanceSpec::Family::hoelder:
      j["rho"] = s.rho;
      j["n"] = s.n;
      if (!s.xstar.empty()) j["xstar"] = s.xstar;
      break;
    case InstanceSpec::Family::l1_regression:
      j["n"] = s.n;
      j["l1_weight"] = s.l1_weight;
      break;
    case InstanceSpec::Family::minimax_quadratics:
      j["n"] = s.n;
      j["centers"] = s.centers;
      break;
    case InstanceSpec::Family::max_eigenvalue:
      j["n"] = s.n;
      j["m"] = s.m;
      j["density"] = s.density;
      break;
    case InstanceSpec::Family::lovasz_tiny:
      j["nodes"] = s.nodes;
      j["extra_edges"] = s.extra_edges;
      j["shrink_domain"] = s.shrink_domain;
      break;
  }
  if (!s.box_lower.empty()) {
    j["box"]["lower"] = s.box_lower;
    j["box"]["upper"] = s.box_upper;
  }
  if (s.known_optimum) j["known_optimum"] = *s.known_optimum;
  if (s.smoothness) {
    j["smoothness"]["rho"] = s.smoothness->rho;
    j["smoothness"]["M"] = s.smoothness->M;
  }
  return j;
}

}  // namespace levelopt::harness
