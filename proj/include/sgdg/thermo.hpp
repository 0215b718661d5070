#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgdg/state.hpp"

namespace sgdg {

// Stiffened-gas constants of one component: p = (gamma-1) rho e - gamma pinf.
struct Species {
  double gamma = 1.4;
  double pinf = 0.0;
  double cv = 1.0;
};

class SpeciesTable {
 public:
  SpeciesTable() = default;
  explicit SpeciesTable(std::vector<Species> species);

  std::size_t size() const { return species_.size(); }
  const Species& operator[](std::size_t i) const { return species_[i]; }
  const std::vector<Species>& species() const { return species_; }

  // Bounds on Gamma = 1/(gamma-1) and Pi = gamma pinf/(gamma-1) over the table.
  double gamma_min() const { return gamma_min_; }
  double gamma_max() const { return gamma_max_; }
  double pi_min() const { return pi_min_; }
  double pi_max() const { return pi_max_; }

 private:
  std::vector<Species> species_;
  double gamma_min_ = 0.0, gamma_max_ = 0.0, pi_min_ = 0.0, pi_max_ = 0.0;
};

struct Primitive {
  double rho = 1.0;
  Vec2 vel{0.0, 0.0};
  double p = 1.0;
  double Gamma = 2.5;
  double Pi = 0.0;
};

// Unchecked helpers used in flux kernels; callers guarantee admissibility.
inline double internal_energy_density(const State& u) {
  return u[kRhoE] - 0.5 * (u[kMomX] * u[kMomX] + u[kMomY] * u[kMomY]) / u[kRho];
}
inline double ratio_of_heats(const State& u) { return (u[kGamma] + 1.0) / u[kGamma]; }
inline double stiffness(const State& u) { return u[kPi] / (u[kGamma] + 1.0); }
inline double pressure_unchecked(const State& u) {
  return (internal_energy_density(u) - u[kPi]) / u[kGamma];
}
inline Vec2 velocity(const State& u) { return {u[kMomX] / u[kRho], u[kMomY] / u[kRho]}; }

struct Admissibility {
  bool ok = true;
  std::string violated;  // "rho", "Gamma", "Pi", "rho_e" or "finite"
  explicit operator bool() const { return ok; }
};

Admissibility is_admissible(const State& u);
// Throws AdmissibilityError naming the violated bound.
void require_admissible(const State& u, const char* where = nullptr);

double mixture_pressure(const State& u);
double sound_speed(const State& u);
// Same quantity evaluated as sqrt(gamma (p + pinf) / rho).
double sound_speed_from_pressure(const State& u);

Primitive to_primitive(const State& u);
State to_conserved(const Primitive& w);

std::pair<double, double> gamma_pi_mix(std::span<const double> alphas, const SpeciesTable& species);
// Volume fraction of the first component of a two-component table from Gamma.
double first_fraction_from_gamma(double Gamma, const SpeciesTable& species);

// cv (ln(e - Pi tau/(Gamma+1)) + ln(tau)/Gamma - ln Gamma), tau = 1/rho.
double specific_entropy(const State& u, double cv);
// cv ln((p + pinf) / rho^gamma).
double specific_entropy_pressure_form(const State& u, double cv);

struct EntropyEval {
  double eta = 0.0;
  Vec2 q{0.0, 0.0};
  State theta{};
  double zeta = 0.0;
  double s = 0.0;
};

EntropyEval entropy_variables(const State& u, double cv);

}  // namespace sgdg
