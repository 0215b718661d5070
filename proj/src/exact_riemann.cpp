#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sgdg/errors.hpp"
#include "sgdg/riemann.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

namespace {

struct Gas {
  double rho, un, p, pinf, gamma, c;
  Vec2 vt;
  double Gamma, Pi;
};

Gas gas_of(const State& u, const Vec2& n) {
  Gas g;
  g.rho = u[kRho];
  const Vec2 v = velocity(u);
  g.un = dot(v, n);
  g.vt = v - g.un * n;
  g.p = pressure_unchecked(u);
  g.pinf = stiffness(u);
  g.gamma = ratio_of_heats(u);
  g.c = std::sqrt(g.gamma * (g.p + g.pinf) / g.rho);
  g.Gamma = u[kGamma];
  g.Pi = u[kPi];
  return g;
}

// Velocity change across the wave connecting state g to pressure p, and its
// derivative in p.
void wave_function(const Gas& g, double p, double& f, double& df) {
  const double P = p + g.pinf;
  const double PK = g.p + g.pinf;
  if (P > PK) {
    const double A = 2.0 / ((g.gamma + 1.0) * g.rho);
    const double B = (g.gamma - 1.0) / (g.gamma + 1.0) * PK;
    const double q = std::sqrt(A / (P + B));
    f = (P - PK) * q;
    df = q * (1.0 - 0.5 * (P - PK) / (P + B));
  } else {
    const double e = 0.5 * (g.gamma - 1.0) / g.gamma;
    const double r = std::pow(P / PK, e);
    f = 2.0 * g.c / (g.gamma - 1.0) * (r - 1.0);
    df = r / (g.rho * g.c) * PK / P;
  }
}

double star_density(const Gas& g, double p) {
  const double P = p + g.pinf;
  const double PK = g.p + g.pinf;
  if (P > PK) {
    const double k = (g.gamma - 1.0) / (g.gamma + 1.0);
    return g.rho * (P / PK + k) / (k * P / PK + 1.0);
  }
  return g.rho * std::pow(P / PK, 1.0 / g.gamma);
}

State conserved(double rho, double un, const Vec2& vt, const Vec2& n, double p, double Gamma, double Pi) {
  Primitive w;
  w.rho = rho;
  w.vel = un * n + vt;
  w.p = p;
  w.Gamma = Gamma;
  w.Pi = Pi;
  return to_conserved(w);
}

}  // namespace

ExactRiemannSolution exact_riemann(const State& uL, const State& uR, const Vec2& n) {
  require_admissible(uL, "exact_riemann (left)");
  require_admissible(uR, "exact_riemann (right)");
  const Gas L = gas_of(uL, n);
  const Gas R = gas_of(uR, n);
  const double du = R.un - L.un;
  const double pmin = std::max(-L.pinf, -R.pinf);

  // Both rarefactions reaching the lowest admissible pressure still leave a
  // non-negative velocity gap: vacuum (or cavitation) forms.
  {
    double fL, fR, d;
    wave_function(L, pmin, fL, d);
    wave_function(R, pmin, fR, d);
    if (fL + fR + du >= 0.0)
      throw VacuumError(fmt::format("Riemann data generate vacuum: du={} exceeds the rarefaction limit {}", du, -(fL + fR)));
  }

  const double scale = std::max(L.p + L.pinf, R.p + R.pinf);
  // Acoustic guess. The sum of wave functions is increasing and concave in p,
  // so Newton iterates stay on the left of the root after the first step.
  double p = (L.p * R.rho * R.c + R.p * L.rho * L.c - du * L.rho * L.c * R.rho * R.c) / (L.rho * L.c + R.rho * R.c);
  if (!(p > pmin)) p = pmin + 1e-3 * scale;

  ExactRiemannSolution sol;
  sol.uL = uL;
  sol.uR = uR;
  sol.n = n;
  int it = 0;
  bool converged = false;
  while (it < 100) {
    ++it;
    double fL, dfL, fR, dfR;
    wave_function(L, p, fL, dfL);
    wave_function(R, p, fR, dfR);
    double pn = p - (fL + fR + du) / (dfL + dfR);
    if (!(pn > pmin)) pn = 0.5 * (p + pmin);
    const double change = std::abs(pn - p);
    p = pn;
    if (change <= 1e-12 * (p - pmin) || change <= 1e-15 * scale) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError(fmt::format("exact Riemann solver did not converge (p={})", p));
  double fL, fR, d;
  wave_function(L, p, fL, d);
  wave_function(R, p, fR, d);
  sol.pStar = p;
  sol.uStar = 0.5 * (L.un + R.un) + 0.5 * (fR - fL);
  sol.rhoStarL = star_density(L, p);
  sol.rhoStarR = star_density(R, p);
  sol.iterations = it;
  return sol;
}

State ExactRiemannSolution::sample(double xi) const {
  const Gas L = gas_of(uL, n);
  const Gas R = gas_of(uR, n);
  if (xi <= uStar) {
    const Gas& g = L;
    const double P = pStar + g.pinf, PK = g.p + g.pinf;
    if (P > PK) {
      const double k = (g.gamma + 1.0) / (2.0 * g.gamma) * P / PK + (g.gamma - 1.0) / (2.0 * g.gamma);
      const double s = g.un - g.c * std::sqrt(k);
      if (xi <= s) return uL;
      return conserved(rhoStarL, uStar, g.vt, n, pStar, g.Gamma, g.Pi);
    }
    const double head = g.un - g.c;
    const double cstar = std::sqrt(g.gamma * P / rhoStarL);
    const double tail = uStar - cstar;
    if (xi <= head) return uL;
    if (xi >= tail) return conserved(rhoStarL, uStar, g.vt, n, pStar, g.Gamma, g.Pi);
    const double gm = g.gamma - 1.0, gp = g.gamma + 1.0;
    const double c = 2.0 / gp * g.c + gm / gp * (g.un - xi);
    const double un = 2.0 / gp * (g.c + 0.5 * gm * g.un + xi);
    const double rho = g.rho * std::pow(c / g.c, 2.0 / gm);
    const double Pf = PK * std::pow(c / g.c, 2.0 * g.gamma / gm);
    return conserved(rho, un, g.vt, n, Pf - g.pinf, g.Gamma, g.Pi);
  }
  const Gas& g = R;
  const double P = pStar + g.pinf, PK = g.p + g.pinf;
  if (P > PK) {
    const double k = (g.gamma + 1.0) / (2.0 * g.gamma) * P / PK + (g.gamma - 1.0) / (2.0 * g.gamma);
    const double s = g.un + g.c * std::sqrt(k);
    if (xi >= s) return uR;
    return conserved(rhoStarR, uStar, g.vt, n, pStar, g.Gamma, g.Pi);
  }
  const double head = g.un + g.c;
  const double cstar = std::sqrt(g.gamma * P / rhoStarR);
  const double tail = uStar + cstar;
  if (xi >= head) return uR;
  if (xi <= tail) return conserved(rhoStarR, uStar, g.vt, n, pStar, g.Gamma, g.Pi);
  const double gm = g.gamma - 1.0, gp = g.gamma + 1.0;
  const double c = 2.0 / gp * g.c - gm / gp * (g.un - xi);
  const double un = 2.0 / gp * (-g.c + 0.5 * gm * g.un + xi);
  const double rho = g.rho * std::pow(c / g.c, 2.0 / gm);
  const double Pf = PK * std::pow(c / g.c, 2.0 * g.gamma / gm);
  return conserved(rho, un, g.vt, n, Pf - g.pinf, g.Gamma, g.Pi);
}

std::vector<State> exact_riemann(const State& uL, const State& uR, const Vec2& n, const std::vector<double>& xi) {
  const ExactRiemannSolution sol = exact_riemann(uL, uR, n);
  std::vector<State> out;
  out.reserve(xi.size());
  for (double x : xi) out.push_back(sol.sample(x));
  return out;
}

}  // namespace sgdg
