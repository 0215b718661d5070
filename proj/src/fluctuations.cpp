#include "sgdg/fluctuations.hpp"

#include <fmt/format.h>

#include "sgdg/errors.hpp"

namespace sgdg {

const char* to_string(Flavor f) { return f == Flavor::kCP ? "cp" : "ec"; }

Flavor flavor_from_string(const std::string& s) {
  if (s == "cp" || s == "CP") return Flavor::kCP;
  if (s == "ec" || s == "EC") return Flavor::kEC;
  throw ConfigError(fmt::format("unknown volume flux flavor '{}' (expected cp or ec)", s));
}

State physical_flux(const State& u, const Vec2& n) {
  require_admissible(u, "physical_flux");
  const double p = pressure_unchecked(u);
  const Vec2 v = velocity(u);
  const double vn = dot(v, n);
  State f{};
  f[kRho] = u[kRho] * vn;
  f[kMomX] = u[kMomX] * vn + p * n[0];
  f[kMomY] = u[kMomY] * vn + p * n[1];
  f[kRhoE] = (u[kRhoE] + p) * vn;
  return f;
}

std::pair<double, double> mean_jump(double a_minus, double a_plus) {
  return {0.5 * (a_minus + a_plus), a_plus - a_minus};
}

double log_mean(double a_minus, double a_plus) {
  if (!(a_minus > 0.0) || !(a_plus > 0.0))
    throw DomainError(fmt::format("log_mean needs positive arguments, got ({}, {})", a_minus, a_plus));
  return detail::log_mean_pre(a_minus, a_plus, std::log(a_minus), std::log(a_plus));
}

namespace {

State flux_of(const State& um, const State& up, const Vec2& n, Flavor flavor) {
  require_admissible(um, "two-point flux (minus state)");
  require_admissible(up, "two-point flux (plus state)");
  State h{};
  detail::two_point_flux(detail::point_data(um), detail::point_data(up), n[0], n[1], flavor, h);
  return h;
}

}  // namespace

State cp_flux(const State& um, const State& up, const Vec2& n) { return flux_of(um, up, n, Flavor::kCP); }
State ec_flux(const State& um, const State& up, const Vec2& n) { return flux_of(um, up, n, Flavor::kEC); }

FluctuationPair volume_fluctuations(const State& um, const State& up, const Vec2& n, Flavor flavor) {
  const State h = flux_of(um, up, n, flavor);
  const State fm = physical_flux(um, n);
  const State fp = physical_flux(up, n);
  const double vnm = dot(velocity(um), n);
  const double vnp = dot(velocity(up), n);
  FluctuationPair r;
  r.dminus = h - fm;
  r.dplus = fp - h;
  for (int v : {kGamma, kPi}) {
    const double jump = up[v] - um[v];
    r.dminus[v] = 0.5 * vnm * jump;
    r.dplus[v] = 0.5 * vnp * jump;
  }
  return r;
}

FluctuationPair cp_fluctuations(const State& um, const State& up, const Vec2& n) {
  return volume_fluctuations(um, up, n, Flavor::kCP);
}

FluctuationPair ec_fluctuations(const State& um, const State& up, const Vec2& n) {
  return volume_fluctuations(um, up, n, Flavor::kEC);
}

State volume_tilde(const State& um, const State& up, const Vec2& n, Flavor flavor) {
  // h(u-, u+) + h(u+, u-) + d-(u-, u+) - d+(u+, u-); h is symmetric.
  State r = 2.0 * flux_of(um, up, n, flavor);
  const double vnm = dot(velocity(um), n);
  r[kGamma] = vnm * (up[kGamma] - um[kGamma]);
  r[kPi] = vnm * (up[kPi] - um[kPi]);
  return r;
}

}  // namespace sgdg
