#pragma once

#include <vector>

#include "sgdg/fluctuations.hpp"
#include "sgdg/state.hpp"

namespace sgdg {

struct WaveSpeeds {
  double sL = 0.0;
  double sR = 0.0;
};

// Direct estimates bounding the exact wave fan; n must be a unit vector.
WaveSpeeds wave_speed_estimates(const State& uL, const State& uR, const Vec2& n);

struct HllcBreakdown {
  double sL = 0.0, sStar = 0.0, sR = 0.0;
  double pStar = 0.0;
  double QL = 0.0, QR = 0.0;
  State starL{}, starR{};
  bool degenerate = false;  // mass fluxes vanished to round-off; means were used
};

HllcBreakdown hllc_breakdown(const State& uL, const State& uR, const Vec2& n);

FluctuationPair hllc_fluctuations(const State& uL, const State& uR, const Vec2& n);
// Same, also returning the breakdown (used by time-step and diagnostics).
FluctuationPair hllc_fluctuations(const State& uL, const State& uR, const Vec2& n, HllcBreakdown& breakdown);

// Conservative rows only; Gamma and Pi rows are zero.
State rusanov_flux(const State& uL, const State& uR, const Vec2& n, double lambda);

// Exact solution of the Riemann problem between two stiffened gases.
struct ExactRiemannSolution {
  double pStar = 0.0;
  double uStar = 0.0;
  double rhoStarL = 0.0;
  double rhoStarR = 0.0;
  int iterations = 0;
  State uL{}, uR{};
  Vec2 n{1.0, 0.0};

  // State at similarity coordinate xi = x/t (x along n).
  State sample(double xi) const;
};

ExactRiemannSolution exact_riemann(const State& uL, const State& uR, const Vec2& n);
std::vector<State> exact_riemann(const State& uL, const State& uR, const Vec2& n, const std::vector<double>& xi);

}  // namespace sgdg
