#pragma once

#include <cmath>
#include <utility>

#include "sgdg/state.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

enum class Flavor { kCP, kEC };

const char* to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

struct FluctuationPair {
  State dminus{};
  State dplus{};
};

// (rho v.n, rho v (v.n) + p n, (rho E + p) v.n, 0, 0) for any (not
// necessarily unit) n.
State physical_flux(const State& u, const Vec2& n);

// (arithmetic mean, jump) with jump = a_plus - a_minus.
std::pair<double, double> mean_jump(double a_minus, double a_plus);

// (a+ - a-)/(ln a+ - ln a-), series expansion near a+ = a-.
double log_mean(double a_minus, double a_plus);

// Symmetric conservative parts of the two-point fluxes.
State cp_flux(const State& um, const State& up, const Vec2& n);
State ec_flux(const State& um, const State& up, const Vec2& n);

FluctuationPair cp_fluctuations(const State& um, const State& up, const Vec2& n);
FluctuationPair ec_fluctuations(const State& um, const State& up, const Vec2& n);
FluctuationPair volume_fluctuations(const State& um, const State& up, const Vec2& n, Flavor flavor);

// Volume fluctuation D~(u-, u+, n) = 2 h(u-, u+, n) + d-(u-, u+, n) - d+(u+, u-, n),
// so that D~(u, u, n) = 2 f(u).n.
State volume_tilde(const State& um, const State& up, const Vec2& n, Flavor flavor);

namespace detail {

// Quantities reused by every two-point evaluation involving a node.
struct PointData {
  double rho, vx, vy, p, rhoE, Gamma, Pi;
  double pinf, inv_gamma, beta, log_rho, log_beta;
};

inline PointData point_data(const State& u) {
  PointData d;
  d.rho = u[kRho];
  d.vx = u[kMomX] / u[kRho];
  d.vy = u[kMomY] / u[kRho];
  d.rhoE = u[kRhoE];
  d.Gamma = u[kGamma];
  d.Pi = u[kPi];
  d.p = (u[kRhoE] - 0.5 * d.rho * (d.vx * d.vx + d.vy * d.vy) - d.Pi) / d.Gamma;
  d.pinf = d.Pi / (d.Gamma + 1.0);
  d.inv_gamma = 1.0 / d.Gamma;
  d.beta = d.rho / (d.Gamma * (d.p + d.pinf));
  d.log_rho = std::log(d.rho);
  d.log_beta = std::log(d.beta);
  return d;
}

inline double log_mean_pre(double a, double b, double la, double lb) {
  const double ratio = b / a - 1.0;
  if (std::abs(ratio) < 1e-4) {
    const double f = (b - a) / (b + a);
    const double u = f * f;
    return 0.5 * (a + b) / (1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u / 7.0)));
  }
  return (b - a) / (lb - la);
}

// Symmetric flux h_X(a, b, n) written into h[0..3]; h[4] = h[5] = 0.
inline void two_point_flux(const PointData& a, const PointData& b, double nx, double ny, Flavor flavor, State& h) {
  const double vx = 0.5 * (a.vx + b.vx);
  const double vy = 0.5 * (a.vy + b.vy);
  const double vn = vx * nx + vy * ny;
  if (flavor == Flavor::kCP) {
    const double rho = 0.5 * (a.rho + b.rho);
    const double p = 0.5 * (a.p + b.p);
    const double mass = rho * vn;
    h[kRho] = mass;
    h[kMomX] = mass * vx + p * nx;
    h[kMomY] = mass * vy + p * ny;
    h[kRhoE] = (0.5 * (a.rhoE + b.rhoE) + p) * vn;
  } else {
    const double rho_hat = log_mean_pre(a.rho, b.rho, a.log_rho, b.log_rho);
    const double beta_hat = log_mean_pre(a.beta, b.beta, a.log_beta, b.log_beta);
    const double beta_bar = 0.5 * (a.beta + b.beta);
    const double p_tilde = 0.5 * (a.rho + b.rho) * 0.5 * (a.inv_gamma + b.inv_gamma) / beta_bar;
    const double pinf_bar = 0.5 * (a.pinf + b.pinf);
    const double mass = rho_hat * vn;
    h[kRho] = mass;
    h[kMomX] = mass * vx + (p_tilde - pinf_bar) * nx;
    h[kMomY] = mass * vy + (p_tilde - pinf_bar) * ny;
    h[kRhoE] = (1.0 / beta_hat + 0.5 * (a.vx * b.vx + a.vy * b.vy)) * mass + p_tilde * vn;
  }
  h[kGamma] = 0.0;
  h[kPi] = 0.0;
}

}  // namespace detail

}  // namespace sgdg
