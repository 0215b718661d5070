#pragma once

#include <vector>

#include "sgdg/state.hpp"

namespace sgdg {

// Cell averages of a uniform 1D grid; cell j covers [x0 + j h, x0 + (j+1) h].
struct Fv1dGrid {
  std::vector<State> cells;
  double x0 = 0.0;
  double h = 1.0;
  double t = 0.0;

  double center(std::size_t j) const { return x0 + (static_cast<double>(j) + 0.5) * h; }
};

// Largest dt with dt max(|sL|, |sR|) / h <= cfl over all interfaces
// (including the copied boundary ghosts).
double fv1d_max_dt(const Fv1dGrid& grid, double cfl);

// U_j - dt/h (D-(U_j, U_j+1) + D+(U_j-1, U_j)) with HLLC fluctuations and
// copied ghost cells. Throws StepError when dt exceeds the half CFL bound.
Fv1dGrid step_3pt(const Fv1dGrid& grid, double dt);

}  // namespace sgdg
