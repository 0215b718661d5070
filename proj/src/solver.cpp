#include "sgdg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "sgdg/errors.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

double Discretization::node_mass(int e, int node) const {
  const Element& el = mesh.elements[e];
  const int n1 = mesh.n1();
  if (mesh.dim == 1) return op.weights[node] * el.jac[node];
  return op.weights[node % n1] * op.weights[node / n1] * el.jac[node];
}

State exterior_trace(const Discretization& d, const Field& u, int e, int f, int k) {
  const Mesh& m = d.mesh;
  const Element& el = m.elements[e];
  const FaceLink& l = el.link[f];
  if (l.elem >= 0) {
    const int kn = m.neighbour_face_node(l, k);
    return u[d.index(l.elem, m.face_node(l.face, kn))];
  }
  const State& in = u[d.index(e, m.face_node(f, k))];
  switch (l.kind) {
    case BoundaryKind::kSupersonicInflow:
      return d.inflow;
    case BoundaryKind::kSymmetry: {
      const Vec2& n = el.face_normal[f][k];
      const double mn = in[kMomX] * n[0] + in[kMomY] * n[1];
      State g = in;
      g[kMomX] -= 2.0 * mn * n[0];
      g[kMomY] -= 2.0 * mn * n[1];
      return g;
    }
    case BoundaryKind::kNonreflective:
    case BoundaryKind::kInterior:
    case BoundaryKind::kPeriodic:
      break;
  }
  return in;
}

FluctuationPair face_fluctuations(const Discretization& d, const State& um, const State& up, const Vec2& n) {
  if (d.face_flux == FaceFlux::kEc) return volume_fluctuations(um, up, n, Flavor::kEC);
  return hllc_fluctuations(um, up, n);
}

namespace {

void check_element(const Discretization& d, const Field& u, int e) {
  const int nn = d.mesh.nodes_per_element();
  for (int a = 0; a < nn; ++a) {
    const Admissibility adm = is_admissible(u[d.index(e, a)]);
    if (!adm.ok)
      throw AdmissibilityError(fmt::format("residual: element {} node {} violates the {} bound", e, a, adm.violated));
  }
}

// Flux of a state through the (not necessarily unit) vector n.
inline void physical_flux_pd(const detail::PointData& a, double nx, double ny, State& f) {
  const double vn = a.vx * nx + a.vy * ny;
  const double mass = a.rho * vn;
  f[kRho] = mass;
  f[kMomX] = mass * a.vx + a.p * nx;
  f[kMomY] = mass * a.vy + a.p * ny;
  f[kRhoE] = (a.rhoE + a.p) * vn;
  f[kGamma] = 0.0;
  f[kPi] = 0.0;
}

void element_residual(const Discretization& d, const Field& u, int e, Field& r) {
  const Mesh& m = d.mesh;
  const LobattoOperator& op = d.op;
  const Element& el = m.elements[e];
  const int n1 = m.n1();
  const int nn = m.nodes_per_element();
  const std::size_t base = d.index(e, 0);

  check_element(d, u, e);

  std::vector<detail::PointData> pd(nn);
  for (int a = 0; a < nn; ++a) pd[a] = detail::point_data(u[base + a]);
  for (int a = 0; a < nn; ++a) r[base + a] = State{};

  State h{};
  // One sweep per reference direction. Along direction dir, node (i, j) maps
  // to local index i*stride + j*other.
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
        const double wa = op.weights[i] * wline;
        // Consistent diagonal: D~(u, u, n) = 2 f(u).n.
        physical_flux_pd(pd[a], metric[a][0], metric[a][1], h);
        const double cdiag = 2.0 * wa * op.D(i, i);
        for (int v = 0; v < 4; ++v) r[base + a][v] += cdiag * h[v];
        for (int k = i + 1; k < n1; ++k) {
          const int b = k * stride + line * other;
          const double wb = op.weights[k] * wline;
          const double nx = 0.5 * (metric[a][0] + metric[b][0]);
          const double ny = 0.5 * (metric[a][1] + metric[b][1]);
          detail::two_point_flux(pd[a], pd[b], nx, ny, d.flavor, h);
          const double ca = 2.0 * wa * op.D(i, k);
          const double cb = 2.0 * wb * op.D(k, i);
          State& ra = r[base + a];
          State& rb = r[base + b];
          for (int v = 0; v < 4; ++v) {
            ra[v] += ca * h[v];
            rb[v] += cb * h[v];
          }
          const double vna = pd[a].vx * nx + pd[a].vy * ny;
          const double vnb = pd[b].vx * nx + pd[b].vy * ny;
          const double dG = pd[b].Gamma - pd[a].Gamma;
          const double dP = pd[b].Pi - pd[a].Pi;
          ra[kGamma] += 0.5 * ca * vna * dG;
          ra[kPi] += 0.5 * ca * vna * dP;
          rb[kGamma] -= 0.5 * cb * vnb * dG;
          rb[kPi] -= 0.5 * cb * vnb * dP;
        }
      }
    }
  }

  const int nf = m.faces_per_element();
  const int nk = m.face_nodes();
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < nk; ++k) {
      const int a = m.face_node(f, k);
      const State up = exterior_trace(d, u, e, f, k);
      const FluctuationPair fl = face_fluctuations(d, u[base + a], up, el.face_normal[f][k]);
      const double c = d.face_weight(k) * el.face_jac[f][k];
      State& ra = r[base + a];
      for (int v = 0; v < kNeq; ++v) ra[v] += c * fl.dminus[v];
    }
  }
}

}  // namespace

void residual(const Discretization& d, const Field& u, Field& r) {
  r.resize(u.size());
  const int ne = static_cast<int>(d.mesh.elements.size());
  tbb::parallel_for(tbb::blocked_range<int>(0, ne), [&](const tbb::blocked_range<int>& range) {
    for (int e = range.begin(); e != range.end(); ++e) element_residual(d, u, e, r);
  });
}

Field residual(const Discretization& d, const Field& u) {
  Field r;
  residual(d, u, r);
  return r;
}

void time_derivative(const Discretization& d, const Field& u, Field& dudt) {
  residual(d, u, dudt);
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) dudt[d.index(e, a)] *= -1.0 / d.node_mass(e, a);
}

State cell_average(const Discretization& d, const Field& u, int e) {
  const int nn = d.mesh.nodes_per_element();
  State s{};
  double vol = 0.0;
  for (int a = 0; a < nn; ++a) {
    const double w = d.node_mass(e, a);
    s += w * u[d.index(e, a)];
    vol += w;
  }
  return (1.0 / vol) * s;
}

std::vector<State> cell_averages(const Discretization& d, const Field& u) {
  std::vector<State> avg(d.mesh.elements.size());
  for (std::size_t e = 0; e < avg.size(); ++e) avg[e] = cell_average(d, u, static_cast<int>(e));
  return avg;
}

State integral(const Discretization& d, const Field& u) {
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  State s{};
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) s += d.node_mass(e, a) * u[d.index(e, a)];
  return s;
}

namespace {

void require_pure_phase(const Field& u) {
  const double G = u.front()[kGamma];
  const double P = u.front()[kPi];
  for (const State& s : u) {
    if (std::abs(s[kGamma] - G) > 1e-12 * std::abs(G) || std::abs(s[kPi] - P) > 1e-12 * (1.0 + std::abs(P)))
      throw ConfigError("entropy diagnostics need a pure-phase field (uniform Gamma and Pi)");
  }
}

}  // namespace

EntropyBalance entropy_balance(const Discretization& d, const Field& u, double cv) {
  require_pure_phase(u);
  const Mesh& m = d.mesh;
  const int ne = static_cast<int>(m.elements.size());
  const int nn = m.nodes_per_element();
  const Field r = residual(d, u);
  EntropyBalance out;
  out.rate.assign(ne, 0.0);
  out.face_flux.assign(ne, 0.0);
  out.max_production = -std::numeric_limits<double>::infinity();
  for (int e = 0; e < ne; ++e) {
    const Element& el = m.elements[e];
    double rate = 0.0;
    for (int a = 0; a < nn; ++a) rate -= dot(entropy_variables(u[d.index(e, a)], cv).theta, r[d.index(e, a)]);
    double flux = 0.0;
    for (int f = 0; f < m.faces_per_element(); ++f) {
      for (int k = 0; k < m.face_nodes(); ++k) {
        const State& um = u[d.index(e, m.face_node(f, k))];
        const State up = exterior_trace(d, u, e, f, k);
        const Vec2& n = el.face_normal[f][k];
        const FluctuationPair fl = face_fluctuations(d, um, up, n);
        const EntropyEval em = entropy_variables(um, cv);
        const EntropyEval ep = entropy_variables(up, cv);
        const double Q = 0.5 * (dot(em.q, n) + dot(ep.q, n)) + 0.5 * dot(em.theta, fl.dminus) -
                         0.5 * dot(ep.theta, fl.dplus);
        const double c = d.face_weight(k) * el.face_jac[f][k];
        flux += c * Q;
        if (el.link[f].elem < 0) out.boundary_flux += c * Q;
      }
    }
    out.rate[e] = rate;
    out.face_flux[e] = flux;
    out.total_rate += rate;
    out.max_production = std::max(out.max_production, rate + flux);
  }
  return out;
}

double total_entropy(const Discretization& d, const Field& u, double cv) {
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  double s = 0.0;
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) s += d.node_mass(e, a) * entropy_variables(u[d.index(e, a)], cv).eta;
  return s;
}

}  // namespace sgdg
