#include "dpr1/bench.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

namespace dpr1 {

namespace {

double median(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const std::size_t m = x.size() / 2;
  return x.size() % 2 == 1 ? x[m] : (x[m - 1] + x[m]) / 2.0;
}

}  // namespace

BenchReport bench(const RawInput& a, const SolveOptions& opts, std::size_t repeat) {
  if (repeat == 0) throw Error(ErrorCode::invalid_argument, "bench: repeat must be positive");
  BenchReport r;
  r.n = a.size();
  r.repeat = repeat;
  SolveOptions with_dd = opts, plain = opts;
  with_dd.solver.use_double = true;
  plain.solver.use_double = false;

  std::vector<double> t_dd, t_plain;
  using clock = std::chrono::steady_clock;
  // Alternate the variants so drift in machine load hits both equally.
  for (std::size_t i = 0; i < repeat; ++i) {
    auto t0 = clock::now();
    const Solution s = solve(a, with_dd);
    auto t1 = clock::now();
    solve(a, plain);
    auto t2 = clock::now();
    t_dd.push_back(std::chrono::duration<double>(t1 - t0).count());
    t_plain.push_back(std::chrono::duration<double>(t2 - t1).count());
    if (i == 0) {
      r.dd_count = static_cast<std::size_t>(std::count_if(
          s.diags.begin(), s.diags.end(), [](const SolveDiagnostics& d) { return d.used_double_b; }));
    }
  }
  r.median_dd_seconds = median(t_dd);
  r.median_plain_seconds = median(t_plain);
  r.ratio = r.median_plain_seconds > 0.0 ? r.median_dd_seconds / r.median_plain_seconds : 0.0;
  return r;
}

}  // namespace dpr1
