// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace levelopt {

enum class GapExit { lower_bound, upper_bound, smoothing, cap };
enum class RunStatus { converged, cap_exceeded };

/// One row per gap-reduction iteration. The first eight fields are the CSV
/// contract; diag carries instrumentation for the invariant checks and is
/// never exported.
struct IterRecord {
  std::uint64_t iter = 0;   // global iteration index, 1-based
  std::uint64_t phase = 0;  // 1-based phase index
  double ub = 0.0;
  double lb = 0.0;
  double gap = 0.0;  // always ub - lb
  std::uint64_t oracle_calls = 0;
  std::uint64_t subproblem_iters = 0;
  double wall_ms = 0.0;

  struct Diag {
    double alpha = 0.0;
    double level = 0.0;
    double prox_move_sq = 0.0;  // ||x_k - x_{k-1}||^2
    double d_omega = 0.0;       // Bregman distance of x_k from the phase anchor
    double upper_candidate = 0.0;
  } diag;
};

struct PhaseRecord {
  std::uint64_t phase_index = 0;
  double delta0 = 0.0;  // gap at phase start
  std::uint64_t iterations = 0;
  bool significant = true;
  double q_estimate = 0.0;  // smoothing-size estimate in use (0 when unused)
  GapExit exit = GapExit::upper_bound;
};

struct RunTrace {
  std::vector<IterRecord> rows;
  std::vector<PhaseRecord> phases;
  RunStatus status = RunStatus::converged;
  double final_ub = 0.0;
  double final_lb = 0.0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t subproblem_iters = 0;
  double wall_ms = 0.0;
};

/// CSV export with the fixed column set
/// iter,phase,ub,lb,gap,oracle_calls,subproblem_iters,wall_ms.
void write_csv(const RunTrace& trace, std::ostream& out);
void write_csv_file(const RunTrace& trace, const std::string& path);

/// Parses a CSV produced by write_csv (diagnostics are not round-tripped).
RunTrace read_csv_file(const std::string& path);

/// Re-validates the row invariants: gap == ub - lb, rows ordered by
/// iteration, lb nondecreasing and ub nonincreasing within each phase.
/// Returns an empty string when clean, else a description of the violation.
std::string validate_trace(const RunTrace& trace);

}  // namespace levelopt
