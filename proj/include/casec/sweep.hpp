// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casec/energy.hpp"

namespace casec {

/// One CSV record of a parameter sweep. `energy`/`err` are absent for failed
/// points, whose error name travels in `flag`.
struct SweepRow {
  double alpha = 0.0;
  double delta = 0.0;
  std::string method;
  std::string pol;
  std::optional<double> energy;
  std::optional<double> err;
  int order_cut = 0;
  int inner_cut = 0;
  int panels = 0;
  std::string flag;
};

struct SweepResult {
  std::vector<SweepRow> rows;          // ordered by the primary sweep parameter
  NumericsPolicy policy;               // snapshot shared by every row
  std::string tool_version;
  std::string timestamp;               // diagnostics only, never part of the CSV
  bool any_failed = false;
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Exact column set: alpha,delta,method,pol,energy,err,order_cut,inner_cut,panels,flag
extern const char* const kCsvHeader;

void write_csv(std::ostream& os, const SweepResult& result);

/// One-line policy echo for diagnostics streams.
std::string describe(const NumericsPolicy& policy);

/// Runs fn(0..n-1) on `threads` workers (0 = hardware concurrency). Each index
/// is processed exactly once; callers write results into per-index slots, so
/// the outcome is identical for any worker count.
void parallel_for_ordered(int n, int threads, const std::function<void(int)>& fn);

}  // namespace casec
