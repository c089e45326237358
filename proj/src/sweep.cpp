// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#include "casec/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

namespace casec {

const char* const kCsvHeader = "alpha,delta,method,pol,energy,err,order_cut,inner_cut,panels,flag";

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const SweepResult& result) {
  os << kCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    os << format_double(r.alpha) << ',' << format_double(r.delta) << ',' << r.method << ','
       << r.pol << ',';
    if (r.energy) os << format_double(*r.energy);
    os << ',';
    if (r.err) os << format_double(*r.err);
    os << ',' << r.order_cut << ',' << r.inner_cut << ',' << r.panels << ',' << r.flag << '\n';
  }
}

std::string describe(const NumericsPolicy& p) {
  std::ostringstream os;
  os << "rel_tol=" << format_double(p.rel_tol) << " initial_order_cut=" << p.initial_order_cut
     << " max_order_cut=" << p.max_order_cut
     << " beta_max_factor=" << format_double(p.beta_max_factor) << " max_panels=" << p.max_panels
     << " quad_order=" << p.quad_order;
  return os.str();
}

void parallel_for_ordered(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace casec
