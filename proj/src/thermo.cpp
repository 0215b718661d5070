#include "sgdg/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "sgdg/errors.hpp"

namespace sgdg {

SpeciesTable::SpeciesTable(std::vector<Species> species) : species_(std::move(species)) {
  if (species_.empty()) throw ConfigError("species table is empty");
  gamma_min_ = pi_min_ = HUGE_VAL;
  gamma_max_ = pi_max_ = -HUGE_VAL;
  for (const Species& s : species_) {
    if (!(s.gamma > 1.0)) throw ConfigError(fmt::format("species gamma must exceed 1, got {}", s.gamma));
    if (!(s.pinf >= 0.0)) throw ConfigError(fmt::format("species pinf must be non-negative, got {}", s.pinf));
    if (!(s.cv > 0.0)) throw ConfigError(fmt::format("species cv must be positive, got {}", s.cv));
    const double G = 1.0 / (s.gamma - 1.0);
    const double P = s.gamma * s.pinf / (s.gamma - 1.0);
    gamma_min_ = std::min(gamma_min_, G);
    gamma_max_ = std::max(gamma_max_, G);
    pi_min_ = std::min(pi_min_, P);
    pi_max_ = std::max(pi_max_, P);
  }
}

Admissibility is_admissible(const State& u) {
  for (double x : u)
    if (!std::isfinite(x)) return {false, "finite"};
  if (!(u[kRho] > 0.0)) return {false, "rho"};
  if (!(u[kGamma] > 0.0)) return {false, "Gamma"};
  if (!(u[kPi] >= 0.0)) return {false, "Pi"};
  if (!(internal_energy_density(u) > stiffness(u))) return {false, "rho_e"};
  return {};
}

void require_admissible(const State& u, const char* where) {
  const Admissibility a = is_admissible(u);
  if (!a.ok) {
    throw AdmissibilityError(fmt::format("inadmissible state{}{}: bound '{}' violated (rho={}, rhoE={}, Gamma={}, Pi={})",
                                         where ? " in " : "", where ? where : "", a.violated, u[kRho], u[kRhoE],
                                         u[kGamma], u[kPi]));
  }
}

double mixture_pressure(const State& u) {
  require_admissible(u, "mixture_pressure");
  return pressure_unchecked(u);
}

double sound_speed(const State& u) {
  require_admissible(u, "sound_speed");
  const double g = ratio_of_heats(u);
  const double arg = g * (g - 1.0) * (internal_energy_density(u) - stiffness(u)) / u[kRho];
  if (!(arg > 0.0)) throw AdmissibilityError("sound_speed: non-positive squared sound speed");
  return std::sqrt(arg);
}

double sound_speed_from_pressure(const State& u) {
  require_admissible(u, "sound_speed");
  const double arg = ratio_of_heats(u) * (pressure_unchecked(u) + stiffness(u)) / u[kRho];
  if (!(arg > 0.0)) throw AdmissibilityError("sound_speed: non-positive squared sound speed");
  return std::sqrt(arg);
}

Primitive to_primitive(const State& u) {
  require_admissible(u, "to_primitive");
  return {u[kRho], velocity(u), pressure_unchecked(u), u[kGamma], u[kPi]};
}

State to_conserved(const Primitive& w) {
  State u{};
  u[kRho] = w.rho;
  u[kMomX] = w.rho * w.vel[0];
  u[kMomY] = w.rho * w.vel[1];
  u[kRhoE] = w.Gamma * w.p + w.Pi + 0.5 * w.rho * dot(w.vel, w.vel);
  u[kGamma] = w.Gamma;
  u[kPi] = w.Pi;
  return u;
}

std::pair<double, double> gamma_pi_mix(std::span<const double> alphas, const SpeciesTable& species) {
  if (alphas.size() != species.size())
    throw ConfigError(fmt::format("{} volume fractions given for {} species", alphas.size(), species.size()));
  double sum = 0.0, G = 0.0, P = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError(fmt::format("volume fraction {} outside [0,1]", a));
    const Species& s = species[i];
    sum += a;
    G += a / (s.gamma - 1.0);
    P += a * s.gamma * s.pinf / (s.gamma - 1.0);
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError(fmt::format("volume fractions sum to {}, not 1", sum));
  return {G, P};
}

double first_fraction_from_gamma(double Gamma, const SpeciesTable& species) {
  if (species.size() == 1) return 1.0;
  const double g1 = 1.0 / (species[0].gamma - 1.0);
  const double g2 = 1.0 / (species[1].gamma - 1.0);
  if (g1 == g2) return 1.0;
  return std::clamp((Gamma - g2) / (g1 - g2), 0.0, 1.0);
}

double specific_entropy(const State& u, double cv) {
  require_admissible(u, "specific_entropy");
  const double tau = 1.0 / u[kRho];
  const double e = internal_energy_density(u) * tau;
  const double G = u[kGamma];
  return cv * (std::log(e - u[kPi] * tau / (G + 1.0)) + std::log(tau) / G - std::log(G));
}

double specific_entropy_pressure_form(const State& u, double cv) {
  require_admissible(u, "specific_entropy");
  const double g = ratio_of_heats(u);
  return cv * std::log((pressure_unchecked(u) + stiffness(u)) / std::pow(u[kRho], g));
}

EntropyEval entropy_variables(const State& u, double cv) {
  EntropyEval r;
  r.s = specific_entropy(u, cv);
  const double g = ratio_of_heats(u);
  const double p = pressure_unchecked(u);
  const Vec2 v = velocity(u);
  r.zeta = (g - 1.0) * cv * u[kRho] / (p + stiffness(u));
  r.eta = -u[kRho] * r.s;
  r.q = {r.eta * v[0], r.eta * v[1]};
  r.theta[kRho] = g * cv - r.s - 0.5 * r.zeta * dot(v, v);
  r.theta[kMomX] = r.zeta * v[0];
  r.theta[kMomY] = r.zeta * v[1];
  r.theta[kRhoE] = -r.zeta;
  r.theta[kGamma] = 0.0;
  r.theta[kPi] = 0.0;
  return r;
}

}  // namespace sgdg
