#include "sgdg/limiter.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "sgdg/errors.hpp"

namespace sgdg {

LimiterBounds LimiterBounds::from_species(const SpeciesTable& species, double eps, bool componentwise) {
  LimiterBounds b;
  b.gamma_min = species.gamma_min();
  b.gamma_max = species.gamma_max();
  b.pi_min = species.pi_min();
  b.pi_max = species.pi_max();
  b.eps = eps;
  b.componentwise = componentwise;
  return b;
}

void LimiterReport::merge(const LimiterReport& o) {
  n_rho += o.n_rho;
  n_gamma += o.n_gamma;
  n_pi += o.n_pi;
  n_rhoe += o.n_rhoe;
  n_elements += o.n_elements;
}

namespace {

inline double rhoe_of(const State& u) { return internal_energy_density(u); }

constexpr std::initializer_list<int> kAll{kRho, kMomX, kMomY, kRhoE, kGamma, kPi};

void scale(std::span<State> dofs, const State& avg, double theta, std::initializer_list<int> vars) {
  for (State& s : dofs)
    for (int v : vars) s[v] = avg[v] + theta * (s[v] - avg[v]);
}

// Limits component v into [lo, hi]. Values within roundoff of a bound are
// snapped onto it; larger violations are removed by scaling towards the
// average, either v alone or the whole state. Returns the scaling factor
// (1 when only snapping was needed).
double limit_bounded(std::span<State> dofs, const State& avg, int v, double lo, double hi, bool whole,
                     const char* name) {
  const double tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  const double a = avg[v];
  if (a < lo - tol || a > hi + tol)
    throw LimiterError(fmt::format("cell average of {} = {} outside [{}, {}]", name, a, lo, hi));
  double vmin = hi, vmax = lo;
  for (State& s : dofs) {
    if (s[v] < lo && s[v] >= lo - tol) s[v] = lo;
    if (s[v] > hi && s[v] <= hi + tol) s[v] = hi;
    vmin = std::min(vmin, s[v]);
    vmax = std::max(vmax, s[v]);
  }
  double theta = 1.0;
  if (vmin < lo) theta = std::min(theta, (a - lo) / (a - vmin));
  if (vmax > hi) theta = std::min(theta, (hi - a) / (vmax - a));
  theta = std::clamp(theta, 0.0, 1.0);
  if (theta < 1.0) {
    if (whole) scale(dofs, avg, theta, kAll);
    else scale(dofs, avg, theta, {v});
    for (State& s : dofs) s[v] = std::clamp(s[v], lo, hi);
  }
  return theta;
}

}  // namespace

ElementTheta limit_element(std::span<State> dofs, const State& avg, const LimiterBounds& b) {
  ElementTheta th;
  const double eps = b.eps;

  const double rho_avg = avg[kRho];
  if (!(rho_avg > eps)) throw LimiterError(fmt::format("cell-average density {} is below {}", rho_avg, eps));
  double rho_min = dofs[0][kRho];
  for (const State& s : dofs) rho_min = std::min(rho_min, s[kRho]);
  if (rho_min < eps) {
    th.rho = std::min((rho_avg - eps) / (rho_avg - rho_min), 1.0);
    if (b.componentwise) scale(dofs, avg, th.rho, {kRho});
    else scale(dofs, avg, th.rho, kAll);
  }

  th.Gamma = limit_bounded(dofs, avg, kGamma, b.gamma_min, b.gamma_max, !b.componentwise, "Gamma");
  th.Pi = limit_bounded(dofs, avg, kPi, b.pi_min, b.pi_max, !b.componentwise, "Pi");

  const double rhoe_avg = rhoe_of(avg);
  double theta = 1.0;
  for (const State& s : dofs) {
    const double pinf = s[kPi] / (s[kGamma] + 1.0);
    const double rhoe = rhoe_of(s);
    if (rhoe >= pinf + eps) continue;
    const double num = rhoe_avg - pinf - eps;
    if (!(num > 0.0))
      throw LimiterError(fmt::format("cell-average internal energy {} does not exceed pinf + eps = {}", rhoe_avg, pinf + eps));
    theta = std::min(theta, num / (rhoe_avg - rhoe));
  }
  th.rhoe = theta;
  if (theta < 1.0) {
    scale(dofs, avg, theta, {kRho, kMomX, kMomY, kRhoE});
    // A DOF whose own pinf exceeds the average internal energy can be pulled
    // below it by the scaling; no theta fixes both.
    for (const State& s : dofs) {
      const double pinf = s[kPi] / (s[kGamma] + 1.0);
      if (rhoe_of(s) < pinf + eps * (1.0 - 1e-6))
        throw LimiterError(fmt::format("internal energy {} below pinf + eps = {} after scaling", rhoe_of(s), pinf + eps));
    }
  }
  return th;
}

LimiterReport limit_field(const Discretization& d, Field& u, const LimiterBounds& bounds) {
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  LimiterReport rep;
  rep.theta.resize(ne);
  tbb::parallel_for(tbb::blocked_range<int>(0, ne), [&](const tbb::blocked_range<int>& range) {
    for (int e = range.begin(); e != range.end(); ++e) {
      const State avg = cell_average(d, u, e);
      try {
        rep.theta[e] = limit_element(std::span<State>(u.data() + d.index(e, 0), nn), avg, bounds);
      } catch (const LimiterError& err) {
        throw LimiterError(fmt::format("element {}: {}", e, err.what()));
      }
    }
  });
  for (const ElementTheta& t : rep.theta) {
    const bool r = t.rho < 1.0, g = t.Gamma < 1.0, p = t.Pi < 1.0, en = t.rhoe < 1.0;
    rep.n_rho += r;
    rep.n_gamma += g;
    rep.n_pi += p;
    rep.n_rhoe += en;
    rep.n_elements += (r || g || p || en);
  }
  return rep;
}

}  // namespace sgdg
