#pragma once

#include <array>
#include <optional>

#include "sgdg/limiter.hpp"
#include "sgdg/solver.hpp"

namespace sgdg {

struct StepOptions {
  double safety = 0.9;         // applied to condition A
  double lambda_factor = 1.5;  // bound on the element wave speed: factor * max(|v|+c)
  std::optional<double> fixed_dt;
  bool limit = true;
  LimiterBounds bounds{};
};

struct StepReport {
  double dt = 0.0;
  double dtA = 0.0;  // largest step allowed by the face condition (without safety)
  double dtB = 0.0;  // largest step allowed by the velocity-divergence condition
  char bound = 'A';  // 'A', 'B' or 'F' (fixed)
  std::array<LimiterReport, 3> stage_limiter{};
  double min_rho = 0.0;
  double min_rhoe_margin = 0.0;  // min over DOFs of rho e - pinf
};

StepReport compute_dt(const Discretization& d, const Field& u, const StepOptions& opt);

// U - dt R / (omega omega J). Throws StepError when a cell average of the
// result is not admissible.
void euler_step(const Discretization& d, const Field& u, double dt, Field& out);
Field euler_step(const Discretization& d, const Field& u, double dt);

// Three-stage SSP Runge-Kutta step, limiting after every stage when
// opt.limit is set. u is updated in place.
void ssprk3_step(const Discretization& d, Field& u, double dt, const StepOptions& opt, StepReport& report);

}  // namespace sgdg
