#include "dcoupler/transducer.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace dcoupler {

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs) {
  if (spec.points < 2) throw std::invalid_argument("sweep needs >= 2 points");
  if (!(spec.omega_c_lo > 0.0) || spec.omega_c_lo >= spec.omega_c_hi)
    throw std::invalid_argument("sweep range must satisfy 0 < lo < hi");

  std::vector<double> grid;
  grid.reserve(spec.points + 1);
  const double log_lo = std::log(spec.omega_c_lo);
  const double log_hi = std::log(spec.omega_c_hi);
  for (int i = 0; i < spec.points; ++i)
    grid.push_back(std::exp(log_lo + (log_hi - log_lo) * i /
                            static_cast<double>(spec.points - 1)));
  if (spec.marker && *spec.marker >= spec.omega_c_lo &&
      *spec.marker <= spec.omega_c_hi)
    grid.push_back(*spec.marker);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<SweepRow> rows(grid.size());
  auto eval_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SweepRow& row = rows[i];
      row.omega_c = grid[i];
      try {
        const TransducerDesign d = transducer_optimal_n(
            spec.omega1, spec.omega2, grid[i], spec.g1, spec.g2);
        if (!std::isfinite(d.n_opt) || d.n_opt <= 0.0) continue;
        row.valid = true;
        row.n_opt = d.n_opt;
        row.g_eff = d.g_eff;
        row.t_transfer = d.base_time;
        const double d1 = spec.omega1 - grid[i], s1 = spec.omega1 + grid[i];
        const double d2 = spec.omega2 - grid[i], s2 = spec.omega2 + grid[i];
        const double rhs = spec.g2 * spec.g2 * (1.0 / s2 - 1.0 / d2) -
                           spec.g1 * spec.g1 * (1.0 / s1 - 1.0 / d1);
        const double lhs = (spec.omega1 - spec.omega2) / d.n_opt;
        row.residual = std::abs(lhs - rhs) / std::abs(lhs);
      } catch (const SingularDenominator&) {
        // gap
      } catch (const std::invalid_argument&) {
        // gap
      }
    }
  };

  const int workers = std::clamp(jobs, 1, static_cast<int>(rows.size()));
  if (workers <= 1) {
    eval_range(0, rows.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (rows.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(rows.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(eval_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace dcoupler
