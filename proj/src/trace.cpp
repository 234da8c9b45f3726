// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/trace.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levelopt {

namespace {

void format_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

}  // namespace

void write_csv(const RunTrace& trace, std::ostream& out) {
  out << "iter,phase,ub,lb,gap,oracle_calls,subproblem_iters,wall_ms\n";
  for (const IterRecord& r : trace.rows) {
    out << r.iter << ',' << r.phase << ',';
    format_double(out, r.ub);
    out << ',';
    format_double(out, r.lb);
    out << ',';
    format_double(out, r.gap);
    out << ',' << r.oracle_calls << ',' << r.subproblem_iters << ',';
    format_double(out, r.wall_ms);
    out << '\n';
  }
}

void write_csv_file(const RunTrace& trace, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_csv(trace, f);
}

RunTrace read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line))
    throw std::runtime_error("empty trace file: " + path);
  RunTrace t;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    // strtoull/strtod parsing: streams cannot read "inf" tokens, which the
    // baseline emits for unknown lower bounds.
    double v[8];
    const char* p = line.c_str();
    bool ok = true;
    for (int i = 0; i < 8; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(p, &end);
      if (end == p || (i < 7 && *end != ',')) {
        ok = false;
        break;
      }
      p = end + (i < 7 ? 1 : 0);
    }
    if (!ok) throw std::runtime_error("malformed trace row: " + line);
    IterRecord r;
    r.iter = static_cast<std::uint64_t>(v[0]);
    r.phase = static_cast<std::uint64_t>(v[1]);
    r.ub = v[2];
    r.lb = v[3];
    r.gap = v[4];
    r.oracle_calls = static_cast<std::uint64_t>(v[5]);
    r.subproblem_iters = static_cast<std::uint64_t>(v[6]);
    r.wall_ms = v[7];
    t.rows.push_back(r);
  }
  if (!t.rows.empty()) {
    t.final_ub = t.rows.back().ub;
    t.final_lb = t.rows.back().lb;
    t.oracle_calls = t.rows.back().oracle_calls;
    t.subproblem_iters = t.rows.back().subproblem_iters;
  }
  return t;
}

std::string validate_trace(const RunTrace& trace) {
  std::uint64_t prev_iter = 0;
  double prev_ub = 0.0, prev_lb = 0.0;
  std::uint64_t prev_phase = UINT64_MAX;
  for (const IterRecord& r : trace.rows) {
    if (r.gap != r.ub - r.lb) return "gap != ub - lb at iter " + std::to_string(r.iter);
    if (r.iter <= prev_iter) return "rows not ordered by iteration";
    if (r.phase == prev_phase) {
      if (r.ub > prev_ub) return "ub increased within phase at iter " + std::to_string(r.iter);
      if (r.lb < prev_lb) return "lb decreased within phase at iter " + std::to_string(r.iter);
    }
    prev_iter = r.iter;
    prev_ub = r.ub;
    prev_lb = r.lb;
    prev_phase = r.phase;
  }
  return "";
}

}  // namespace levelopt
