#include "sgdg/riemann.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sgdg/errors.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

namespace {

struct Side {
  double rho, un, p, pinf, gamma;
  Vec2 v, vt;
};

Side side_of(const State& u, const Vec2& n) {
  Side s;
  s.rho = u[kRho];
  s.v = velocity(u);
  s.un = dot(s.v, n);
  s.vt = s.v - s.un * n;
  s.p = pressure_unchecked(u);
  s.pinf = stiffness(u);
  s.gamma = ratio_of_heats(u);
  return s;
}

WaveSpeeds speeds(const Side& L, const Side& R) {
  const double g = std::max(L.gamma, R.gamma);
  const double cL = std::sqrt(g * (L.p + L.pinf) / L.rho);
  const double cR = std::sqrt(g * (R.p + R.pinf) / R.rho);
  const double k = 0.5 * (g + 1.0);
  const double du = L.un - R.un;
  double ctL, ctR;
  if (R.p >= L.p) {
    ctL = cL + k * std::max((R.p - L.p) / (R.rho * cR) + du, 0.0);
    ctR = cR + k * std::max((L.p - R.p) / (L.rho * ctL) + du, 0.0);
  } else {
    ctR = cR + k * std::max((L.p - R.p) / (L.rho * cL) + du, 0.0);
    ctL = cL + k * std::max((R.p - L.p) / (R.rho * ctR) + du, 0.0);
  }
  return {L.un - ctL, R.un + ctR};
}

State star_state(const State& u, const Side& s, const Vec2& n, double rho_star, double sstar, double E_star) {
  State w{};
  w[kRho] = rho_star;
  const Vec2 v = sstar * n + s.vt;
  w[kMomX] = rho_star * v[0];
  w[kMomY] = rho_star * v[1];
  w[kRhoE] = rho_star * E_star;
  w[kGamma] = u[kGamma];
  w[kPi] = u[kPi];
  return w;
}

// Conservative rows of the flux of a star state with star pressure.
State flux_unchecked(const State& u, const Side& s, const Vec2& n) {
  State f{};
  f[kRho] = u[kRho] * s.un;
  f[kMomX] = u[kMomX] * s.un + s.p * n[0];
  f[kMomY] = u[kMomY] * s.un + s.p * n[1];
  f[kRhoE] = (u[kRhoE] + s.p) * s.un;
  return f;
}

}  // namespace

WaveSpeeds wave_speed_estimates(const State& uL, const State& uR, const Vec2& n) {
  require_admissible(uL, "wave_speed_estimates (left)");
  require_admissible(uR, "wave_speed_estimates (right)");
  return speeds(side_of(uL, n), side_of(uR, n));
}

HllcBreakdown hllc_breakdown(const State& uL, const State& uR, const Vec2& n) {
  require_admissible(uL, "hllc (left)");
  require_admissible(uR, "hllc (right)");
  const Side L = side_of(uL, n);
  const Side R = side_of(uR, n);
  const WaveSpeeds ws = speeds(L, R);

  HllcBreakdown b;
  b.sL = ws.sL;
  b.sR = ws.sR;
  b.QL = L.rho * (L.un - b.sL);
  b.QR = R.rho * (b.sR - R.un);
  const double Qs = b.QL + b.QR;
  const double scale = std::max(L.rho * std::sqrt(L.gamma * (L.p + L.pinf) / L.rho),
                                R.rho * std::sqrt(R.gamma * (R.p + R.pinf) / R.rho));
  if (Qs < 1e-12 * scale) {
    b.degenerate = true;
    b.sStar = 0.5 * (L.un + R.un);
    b.pStar = 0.5 * (L.p + R.p);
  } else {
    b.pStar = (b.QL * R.p + b.QR * L.p + b.QR * b.QL * (L.un - R.un)) / Qs;
    b.sStar = (b.QL * L.un + b.QR * R.un + L.p - R.p) / Qs;
  }
  if (!(b.sL < b.sStar && b.sStar < b.sR))
    throw InterlacingError(fmt::format("HLLC speeds not interlaced: sL={} s*={} sR={}", b.sL, b.sStar, b.sR));

  const double EL = uL[kRhoE] / L.rho;
  const double ER = uR[kRhoE] / R.rho;
  const double rhoL = b.QL / (b.sStar - b.sL);
  const double rhoR = b.QR / (b.sR - b.sStar);
  double ELs, ERs;
  if (b.degenerate) {
    ELs = EL;
    ERs = ER;
  } else {
    ELs = EL + (b.sStar - L.un) * (b.sStar - L.p / b.QL);
    ERs = ER + (b.sStar - R.un) * (b.sStar + R.p / b.QR);
  }
  b.starL = star_state(uL, L, n, rhoL, b.sStar, ELs);
  b.starR = star_state(uR, R, n, rhoR, b.sStar, ERs);
  return b;
}

FluctuationPair hllc_fluctuations(const State& uL, const State& uR, const Vec2& n, HllcBreakdown& b) {
  b = hllc_breakdown(uL, uR, n);
  const Side L = side_of(uL, n);
  const Side R = side_of(uR, n);
  const State fL = flux_unchecked(uL, L, n);
  const State fR = flux_unchecked(uR, R, n);

  State total = fR - fL;
  total[kGamma] = b.sStar * (uR[kGamma] - uL[kGamma]);
  total[kPi] = b.sStar * (uR[kPi] - uL[kPi]);

  FluctuationPair r;
  if (0.0 <= b.sL) {
    r.dplus = total;
  } else if (b.sR <= 0.0) {
    r.dminus = total;
  } else if (0.0 <= b.sStar) {
    // sL < 0 <= s*: the left acoustic wave is the only one moving left.
    r.dminus = b.sL * (b.starL - uL);
    // fR - f(u*L) with f(u*L) = fL + sL (u*L - uL) across the left wave.
    r.dplus = total - r.dminus;
  } else {
    r.dplus = b.sR * (uR - b.starR);
    r.dminus = total - r.dplus;
  }
  return r;
}

FluctuationPair hllc_fluctuations(const State& uL, const State& uR, const Vec2& n) {
  HllcBreakdown b;
  return hllc_fluctuations(uL, uR, n, b);
}

State rusanov_flux(const State& uL, const State& uR, const Vec2& n, double lambda) {
  require_admissible(uL, "rusanov (left)");
  require_admissible(uR, "rusanov (right)");
  const State fL = flux_unchecked(uL, side_of(uL, n), n);
  const State fR = flux_unchecked(uR, side_of(uR, n), n);
  State f{};
  for (int v = 0; v < 4; ++v) f[v] = 0.5 * (fL[v] + fR[v]) - 0.5 * lambda * (uR[v] - uL[v]);
  return f;
}

}  // namespace sgdg
