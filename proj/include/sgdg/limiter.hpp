#pragma once

#include <span>
#include <vector>

#include "sgdg/solver.hpp"
#include "sgdg/state.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

struct LimiterBounds {
  double gamma_min = 0.0, gamma_max = 0.0;
  double pi_min = 0.0, pi_max = 0.0;
  double eps = 1e-8;
  // false: the density, Gamma and Pi factors scale the whole state, which
  // keeps uniform pressure and velocity uniform. true: each factor scales
  // only its own variable.
  bool componentwise = false;

  static LimiterBounds from_species(const SpeciesTable& species, double eps = 1e-8, bool componentwise = false);
};

// Scaling factors applied to one element, each in [0, 1].
struct ElementTheta {
  double rho = 1.0;
  double Gamma = 1.0;
  double Pi = 1.0;
  double rhoe = 1.0;
};

struct LimiterReport {
  std::vector<ElementTheta> theta;
  int n_rho = 0, n_gamma = 0, n_pi = 0, n_rhoe = 0;
  int n_elements = 0;  // elements where at least one limiter acted

  void merge(const LimiterReport& other);
};

// Linear scaling of the DOFs of one element around its cell average avg:
// density, then Gamma, then Pi, then internal energy (scaling rho, rho v and
// rho E together, Gamma and Pi left as limited). avg must be the quadrature average of dofs.
ElementTheta limit_element(std::span<State> dofs, const State& avg, const LimiterBounds& bounds);

LimiterReport limit_field(const Discretization& d, Field& u, const LimiterBounds& bounds);

}  // namespace sgdg
