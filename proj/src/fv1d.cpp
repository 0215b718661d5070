#include "sgdg/fv1d.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "sgdg/errors.hpp"
#include "sgdg/riemann.hpp"

namespace sgdg {

namespace {

const Vec2 kNormal{1.0, 0.0};

// Interface j sits between cells j-1 and j, j = 0..n; the ends use copies.
const State& left_of(const Fv1dGrid& g, std::size_t j) { return g.cells[j == 0 ? 0 : j - 1]; }
const State& right_of(const Fv1dGrid& g, std::size_t j) { return g.cells[std::min(j, g.cells.size() - 1)]; }

}  // namespace

double fv1d_max_dt(const Fv1dGrid& grid, double cfl) {
  double smax = 0.0;
  for (std::size_t j = 0; j <= grid.cells.size(); ++j) {
    const WaveSpeeds ws = wave_speed_estimates(left_of(grid, j), right_of(grid, j), kNormal);
    smax = std::max({smax, std::abs(ws.sL), std::abs(ws.sR)});
  }
  return cfl * grid.h / smax;
}

Fv1dGrid step_3pt(const Fv1dGrid& grid, double dt) {
  const std::size_t n = grid.cells.size();
  std::vector<FluctuationPair> fl(n + 1);
  std::vector<double> speed(n + 1);
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n + 1), [&](const tbb::blocked_range<std::size_t>& r) {
    for (std::size_t j = r.begin(); j != r.end(); ++j) {
      HllcBreakdown b;
      fl[j] = hllc_fluctuations(left_of(grid, j), right_of(grid, j), kNormal, b);
      speed[j] = std::max(std::abs(b.sL), std::abs(b.sR));
    }
  });
  const double smax = *std::max_element(speed.begin(), speed.end());
  if (dt * smax / grid.h > 0.5 * (1.0 + 1e-12))
    throw StepError(fmt::format("three-point scheme: dt max|s| / h = {} exceeds 1/2", dt * smax / grid.h));

  Fv1dGrid next = grid;
  const double r = dt / grid.h;
  for (std::size_t j = 0; j < n; ++j) next.cells[j] = grid.cells[j] - r * (fl[j + 1].dminus + fl[j].dplus);
  next.t = grid.t + dt;
  return next;
}

}  // namespace sgdg
