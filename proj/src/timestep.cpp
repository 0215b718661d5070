#include "sgdg/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_reduce.h>

#include "sgdg/errors.hpp"
#include "sgdg/riemann.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

namespace {

double max_speed(const State& u) {
  const Admissibility adm = is_admissible(u);
  if (!adm.ok) throw AdmissibilityError(fmt::format("time step: state violates the {} bound", adm.violated));
  const double c = sound_speed(u);
  const double s = norm(velocity(u)) + c;
  if (!std::isfinite(s)) throw AdmissibilityError("time step: non-finite wave speed");
  return s;
}

// omega~ J at a boundary node of element e.
double boundary_mass(const Discretization& d, int e, int node) {
  const Mesh& m = d.mesh;
  const double mass = d.node_mass(e, node);
  if (m.dim == 1) return mass;
  const int n1 = m.n1();
  const int i = node % n1, j = node / n1;
  const bool corner = (i == 0 || i == m.p) && (j == 0 || j == m.p);
  return corner ? 0.5 * mass : mass;
}

}  // namespace

StepReport compute_dt(const Discretization& d, const Field& u, const StepOptions& opt) {
  StepReport rep;
  if (opt.fixed_dt) {
    rep.dt = *opt.fixed_dt;
    rep.bound = 'F';
    return rep;
  }
  const Mesh& m = d.mesh;
  const LobattoOperator& op = d.op;
  const int ne = static_cast<int>(m.elements.size());
  const int nn = m.nodes_per_element();
  const int nf = m.faces_per_element();
  const int nk = m.face_nodes();
  const int n1 = m.n1();

  std::vector<double> lambda(ne);
  tbb::parallel_for(tbb::blocked_range<int>(0, ne), [&](const tbb::blocked_range<int>& r) {
    for (int e = r.begin(); e != r.end(); ++e) {
      double lam = 0.0;
      for (int a = 0; a < nn; ++a) lam = std::max(lam, max_speed(u[d.index(e, a)]));
      for (int f = 0; f < nf; ++f)
        for (int k = 0; k < nk; ++k) lam = std::max(lam, max_speed(exterior_trace(d, u, e, f, k)));
      lambda[e] = opt.lambda_factor * lam;
    }
  });

  struct Rates {
    double a = 0.0, b = 0.0;
  };
  const Rates rates = tbb::parallel_reduce(
      tbb::blocked_range<int>(0, ne), Rates{},
      [&](const tbb::blocked_range<int>& r, Rates acc) {
        std::vector<double> sb(nn);
        for (int e = r.begin(); e != r.end(); ++e) {
          const Element& el = m.elements[e];
          std::fill(sb.begin(), sb.end(), 0.0);
          // Volume part of condition B.
          const int ndir = m.dim == 1 ? 1 : 2;
          for (int dir = 0; dir < ndir; ++dir) {
            const int stride = dir == 0 ? 1 : n1;
            const int other = dir == 0 ? n1 : 1;
            const int nlines = m.dim == 1 ? 1 : n1;
            const std::vector<Vec2>& metric = dir == 0 ? el.jxi : el.jeta;
            for (int line = 0; line < nlines; ++line) {
              const double wline = m.dim == 1 ? 1.0 : op.weights[line];
              for (int i = 0; i < n1; ++i) {
                const int a = i * stride + line * other;
                double s = 0.0;
                for (int k = 0; k < n1; ++k) {
                  const int b = k * stride + line * other;
                  const Vec2 n = 0.5 * (metric[a] + metric[b]);
                  const Vec2 v = velocity(u[d.index(e, b)]);
                  s += op.weights[k] * op.D(k, i) * dot(v, n);
                }
                sb[a] += wline * s;
              }
            }
          }
          for (int f = 0; f < nf; ++f) {
            const FaceLink& l = el.link[f];
            for (int k = 0; k < nk; ++k) {
              const int a = m.face_node(f, k);
              const State& um = u[d.index(e, a)];
              const State up = exterior_trace(d, u, e, f, k);
              const HllcBreakdown hb = hllc_breakdown(um, up, el.face_normal[f][k]);
              const double wj = d.face_weight(k) * el.face_jac[f][k];
              sb[a] -= wj * std::min(hb.sStar, 0.0);

              double denom = boundary_mass(d, e, a);
              double speed = std::max({std::abs(hb.sL), std::abs(hb.sR), lambda[e]});
              if (l.elem >= 0) {
                const int b = m.face_node(l.face, m.neighbour_face_node(l, k));
                denom = std::min(denom, boundary_mass(d, l.elem, b));
                speed = std::max(speed, lambda[l.elem]);
              }
              acc.a = std::max(acc.a, wj / denom * speed);
            }
          }
          for (int a = 0; a < nn; ++a) acc.b = std::max(acc.b, sb[a] / d.node_mass(e, a));
        }
        return acc;
      },
      [](Rates x, Rates y) { return Rates{std::max(x.a, y.a), std::max(x.b, y.b)}; });

  const double inf = std::numeric_limits<double>::infinity();
  rep.dtA = rates.a > 0.0 ? 0.5 / rates.a : inf;
  rep.dtB = rates.b > 0.0 ? 1.0 / rates.b : inf;
  const double dtA = opt.safety * rep.dtA;
  if (rep.dtB < dtA) {
    rep.dt = rep.dtB;
    rep.bound = 'B';
    spdlog::debug("time step limited by the velocity-divergence condition: dtB={:.6e} < {:.6e}", rep.dtB, dtA);
  } else {
    rep.dt = dtA;
    rep.bound = 'A';
  }
  if (!(rep.dt > 0.0) || !std::isfinite(rep.dt))
    throw AdmissibilityError(fmt::format("time step: invalid dt {} (dtA={}, dtB={})", rep.dt, rep.dtA, rep.dtB));
  return rep;
}

void euler_step(const Discretization& d, const Field& u, double dt, Field& out) {
  Field dudt;
  time_derivative(d, u, dudt);
  out.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + dt * dudt[i];
  const int ne = static_cast<int>(d.mesh.elements.size());
  for (int e = 0; e < ne; ++e) {
    const State avg = cell_average(d, out, e);
    const Admissibility adm = is_admissible(avg);
    if (!adm.ok)
      throw StepError(fmt::format("cell average of element {} violates the {} bound after a step of {}", e,
                                  adm.violated, dt));
  }
}

Field euler_step(const Discretization& d, const Field& u, double dt) {
  Field out;
  euler_step(d, u, dt, out);
  return out;
}

void ssprk3_step(const Discretization& d, Field& u, double dt, const StepOptions& opt, StepReport& report) {
  Field u1, u2, tmp;
  auto stage_limit = [&](Field& w, int stage) {
    if (opt.limit) report.stage_limiter[stage] = limit_field(d, w, opt.bounds);
  };
  euler_step(d, u, dt, u1);
  stage_limit(u1, 0);
  euler_step(d, u1, dt, tmp);
  u2.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) u2[i] = 0.75 * u[i] + 0.25 * tmp[i];
  stage_limit(u2, 1);
  euler_step(d, u2, dt, tmp);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (1.0 / 3.0) * u[i] + (2.0 / 3.0) * tmp[i];
  stage_limit(u, 2);

  report.min_rho = std::numeric_limits<double>::infinity();
  report.min_rhoe_margin = std::numeric_limits<double>::infinity();
  for (const State& s : u) {
    report.min_rho = std::min(report.min_rho, s[kRho]);
    report.min_rhoe_margin = std::min(report.min_rhoe_margin, internal_energy_density(s) - stiffness(s));
  }
}

}  // namespace sgdg
