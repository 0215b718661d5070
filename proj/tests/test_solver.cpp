#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sgdg/cases.hpp"
#include "sgdg/errors.hpp"
#include "sgdg/fluctuations.hpp"
#include "sgdg/riemann.hpp"
#include "sgdg/solver.hpp"
#include "sgdg/thermo.hpp"
#include "test_util.hpp"

using namespace sgdg;

namespace {

constexpr double kPi2 = 2.0 * std::numbers::pi;

State gas(double rho, double u, double v, double p, double Gamma, double Pi) {
  Primitive w;
  w.rho = rho;
  w.vel = {u, v};
  w.p = p;
  w.Gamma = Gamma;
  w.Pi = Pi;
  return to_conserved(w);
}

Discretization warped_periodic(int p, int n, double warp, Flavor f) {
  const LobattoOperator op = lobatto_operator(p);
  StructuredSpec spec;
  spec.nx = spec.ny = n;
  spec.warp = warp;
  return Discretization(structured_mesh(spec, op), op, f);
}

template <class F>
Field sample(const Discretization& d, F&& fn) {
  Field u(d.mesh.n_dofs());
  for (std::size_t e = 0; e < d.mesh.elements.size(); ++e)
    for (int a = 0; a < d.mesh.nodes_per_element(); ++a) u[d.index(e, a)] = fn(d.mesh.elements[e].x[a]);
  return u;
}

}  // namespace

TEST_CASE("uniform states give a zero residual") {
  for (Flavor f : {Flavor::kCP, Flavor::kEC}) {
    const Discretization d = warped_periodic(3, 4, 0.05, f);
    const State w = gas(1.3, 0.7, -0.4, 2.1, 1.7, 0.9);
    const Field r = residual(d, Field(d.mesh.n_dofs(), w));
    double m = 0.0;
    for (const State& s : r) m = std::max(m, max_abs(s));
    CHECK(m <= 1e-11 * (1.0 + max_abs(w)));
  }
}

TEST_CASE("single degree-one element assembled by hand") {
  const LobattoOperator op = lobatto_operator(1);
  Discretization d(interval_mesh(1, 0.0, 2.0, op, BoundaryKind::kPeriodic, BoundaryKind::kPeriodic), op, Flavor::kCP);
  const State u0 = gas(1.0, 0.2, 0.0, 1.0, 2.5, 0.0);
  const State u1 = gas(1.4, 0.5, 0.0, 1.3, 2.5, 0.0);
  const Field u{u0, u1};
  const Field r = residual(d, u);
  // w = (1, 1), D = [[-1/2, 1/2], [-1/2, 1/2]], n = J grad(xi) = 1
  const Vec2 n{1.0, 0.0};
  const State r0 = -0.5 * volume_tilde(u0, u0, n, Flavor::kCP) + 0.5 * volume_tilde(u0, u1, n, Flavor::kCP) +
                   hllc_fluctuations(u0, u1, {-1.0, 0.0}).dminus;
  const State r1 = -0.5 * volume_tilde(u1, u0, n, Flavor::kCP) + 0.5 * volume_tilde(u1, u1, n, Flavor::kCP) +
                   hllc_fluctuations(u1, u0, {1.0, 0.0}).dminus;
  for (int v = 0; v < kNeq; ++v) {
    CHECK(r[0][v] == doctest::Approx(r0[v]).epsilon(1e-13).scale(1.0));
    CHECK(r[1][v] == doctest::Approx(r1[v]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("material interfaces keep pressure and velocity") {
  // smooth circular interface: rho, Gamma, Pi vary while p and v are uniform
  const SpeciesTable sp({Species{1.4, 0.0, 1.0}, Species{4.4, 6.0, 1.0}});
  const Vec2 v{0.8, -0.3};
  const double p = 1.0;
  for (double width : {0.08, 0.0}) {
    const Discretization d = warped_periodic(3, 6, 0.04, Flavor::kCP);
    const Field u = sample(d, [&](const Vec2& x) {
      const double r = std::hypot(x[0] - 0.5, x[1] - 0.5);
      const double a = width > 0.0 ? 0.5 * (1.0 + std::tanh((r - 0.25) / width)) : (r < 0.25 ? 0.0 : 1.0);
      return mixture_state(sp, a, 0.2 + 0.8 * a, v, p);
    });
    Field dudt;
    time_derivative(d, u, dudt);
    double dp = 0.0, dv = 0.0;
    for (std::size_t q = 0; q < u.size(); ++q) {
      const State& s = u[q];
      const State& t = dudt[q];
      const double rho = s[kRho];
      const Vec2 vel = velocity(s);
      const Vec2 dvel{(t[kMomX] - vel[0] * t[kRho]) / rho, (t[kMomY] - vel[1] * t[kRho]) / rho};
      // Gamma dp = d(rho E) - |v|^2/2 d(rho) - rho v.dv - p dGamma - dPi
      const double dpress =
          (t[kRhoE] - 0.5 * dot(vel, vel) * t[kRho] - rho * dot(vel, dvel) - p * t[kGamma] - t[kPi]) / s[kGamma];
      const double scale = 1.0 + max_abs(t);
      dp = std::max(dp, std::abs(dpress) / scale);
      dv = std::max(dv, std::max(std::abs(dvel[0]), std::abs(dvel[1])) / scale);
    }
    CHECK(dp <= 1e-11);
    CHECK(dv <= 1e-11);
  }
}

TEST_CASE("global conservation on a periodic mesh") {
  for (Flavor f : {Flavor::kCP, Flavor::kEC}) {
    const Discretization d = warped_periodic(3, 4, 0.05, f);
    const Field u = sample(d, [](const Vec2& x) {
      return gas(1.0 + 0.3 * std::sin(kPi2 * x[0]) * std::cos(kPi2 * x[1]), 0.5 + 0.2 * std::cos(kPi2 * x[1]),
                 -0.3 + 0.1 * std::sin(kPi2 * x[0]), 1.0 + 0.2 * std::cos(kPi2 * (x[0] + x[1])),
                 2.0 + 0.5 * std::sin(kPi2 * x[0]), 0.3 + 0.2 * std::cos(kPi2 * x[1]));
    });
    const Field r = residual(d, u);
    State total{}, scale{};
    for (const State& s : r)
      for (int v = 0; v < kNeq; ++v) {
        total[v] += s[v];
        scale[v] += std::abs(s[v]);
      }
    for (int v = 0; v < 4; ++v) CHECK(std::abs(total[v]) <= 1e-11 * (1.0 + scale[v]));
  }
}

TEST_CASE("residual is independent of element orientation") {
  const LobattoOperator op = lobatto_operator(2);
  const Mesh rotated = read_mesh(testutil::write_rotated_pair_mesh(op), op);
  StructuredSpec spec;
  spec.nx = 2;
  spec.ny = 1;
  spec.x1 = 2.0;
  spec.left = spec.right = spec.bottom = spec.top = BoundaryKind::kNonreflective;
  const Mesh plain = structured_mesh(spec, op);
  auto field = [](const Vec2& x) {
    return gas(1.0 + 0.3 * x[0] * x[1], 0.4 - 0.1 * x[1], 0.2 * x[0], 1.0 + 0.1 * x[0], 2.5 - 0.3 * x[0], 0.1 * x[1]);
  };
  for (Flavor f : {Flavor::kCP, Flavor::kEC}) {
    const Discretization a(rotated, op, f), b(plain, op, f);
    const Field ua = sample(a, field), ub = sample(b, field);
    const Field ra = residual(a, ua), rb = residual(b, ub);
    int matched = 0;
    for (std::size_t e = 0; e < 2; ++e)
      for (int q = 0; q < 9; ++q) {
        const Vec2& x = a.mesh.elements[e].x[q];
        for (std::size_t e2 = 0; e2 < 2; ++e2)
          for (int q2 = 0; q2 < 9; ++q2) {
            const Vec2& y = b.mesh.elements[e2].x[q2];
            if (std::hypot(x[0] - y[0], x[1] - y[1]) > 1e-12 || e != e2) continue;
            ++matched;
            for (int v = 0; v < kNeq; ++v)
              CHECK(ra[a.index(e, q)][v] == doctest::Approx(rb[b.index(e2, q2)][v]).epsilon(1e-12).scale(1.0));
          }
      }
    CHECK(matched == 18);
  }
}

TEST_CASE("inadmissible DOFs are reported with their location") {
  const Discretization d = warped_periodic(2, 2, 0.0, Flavor::kCP);
  Field u(d.mesh.n_dofs(), gas(1.0, 0.0, 0.0, 1.0, 2.5, 0.0));
  u[d.index(3, 4)][kRho] = -1.0;
  try {
    residual(d, u);
    FAIL("no error raised");
  } catch (const AdmissibilityError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("element 3") != std::string::npos);
    CHECK(msg.find("node 4") != std::string::npos);
  }
}

TEST_CASE("cell averages") {
  const Discretization flat = warped_periodic(3, 2, 0.0, Flavor::kCP);
  const Field lin = sample(flat, [](const Vec2& x) { return State{1.0 + 2.0 * x[0] - x[1], 0, 0, 0, 0, 0}; });
  // element 1 covers [0.5, 1] x [0, 0.5], centroid (0.75, 0.25)
  CHECK(cell_average(flat, lin, 1)[kRho] == doctest::Approx(1.0 + 1.5 - 0.25).epsilon(1e-14));
  const Discretization curved = warped_periodic(4, 3, 0.05, Flavor::kCP);
  const State w = gas(1.3, 0.1, 0.2, 1.0, 2.5, 0.0);
  const Field c(curved.mesh.n_dofs(), w);
  for (std::size_t e = 0; e < curved.mesh.elements.size(); ++e) {
    const State avg = cell_average(curved, c, static_cast<int>(e));
    for (int v = 0; v < kNeq; ++v) CHECK(std::abs(avg[v] - w[v]) <= 1e-13 * (1.0 + std::abs(w[v])));
  }
  const State total = integral(curved, Field(curved.mesh.n_dofs(), State{1, 1, 1, 1, 1, 1}));
  CHECK(total[kRho] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("boundary ghost states") {
  const LobattoOperator op = lobatto_operator(2);
  StructuredSpec spec;
  spec.nx = spec.ny = 2;
  spec.left = BoundaryKind::kSupersonicInflow;
  spec.right = BoundaryKind::kNonreflective;
  spec.bottom = spec.top = BoundaryKind::kSymmetry;
  Discretization d(structured_mesh(spec, op), op, Flavor::kCP);
  d.inflow = gas(2.0, 3.0, 0.0, 4.0, 2.5, 0.0);
  const State w = gas(1.0, 0.3, 0.4, 1.0, 2.5, 0.0);
  const Field u(d.mesh.n_dofs(), w);
  CHECK(exterior_trace(d, u, 0, 2, 1) == d.inflow);
  CHECK(exterior_trace(d, u, 1, 0, 1) == w);
  const State top = exterior_trace(d, u, 3, 1, 0);
  CHECK(top[kMomX] == doctest::Approx(w[kMomX]));
  CHECK(top[kMomY] == doctest::Approx(-w[kMomY]));
  CHECK(top[kRhoE] == w[kRhoE]);
  // symmetry faces carry no mass flux
  const FluctuationPair f = face_fluctuations(d, w, top, {0.0, 1.0});
  const State flux_in = physical_flux(w, {0.0, 1.0});
  CHECK(std::abs(f.dminus[kRho] + flux_in[kRho]) <= 1e-14);
}

TEST_CASE("semi-discrete entropy budget") {
  const LobattoOperator op = lobatto_operator(3);
  Discretization d(interval_mesh(8, 0.0, 1.0, op, BoundaryKind::kPeriodic, BoundaryKind::kPeriodic), op, Flavor::kEC);
  Field u(d.mesh.n_dofs());
  for (std::size_t e = 0; e < d.mesh.elements.size(); ++e)
    for (int a = 0; a < op.n(); ++a) {
      const double x = d.mesh.elements[e].x[a][0];
      u[d.index(e, a)] = gas(1.0 + 0.4 * std::sin(kPi2 * x), 0.5 + 0.3 * std::cos(kPi2 * x), 0.0,
                             1.0 + 0.3 * std::sin(kPi2 * x + 1.0), 2.5, 0.0);
    }
  SUBCASE("uniform state") {
    const Field c(d.mesh.n_dofs(), gas(1.0, 0.5, 0.0, 1.0, 2.5, 0.0));
    const EntropyBalance b = entropy_balance(d, c, 1.0);
    CHECK(std::abs(b.total_rate) <= 1e-12);
    for (std::size_t e = 0; e < b.rate.size(); ++e) CHECK(std::abs(b.rate[e] + b.face_flux[e]) <= 1e-12);
  }
  SUBCASE("entropy conservative faces") {
    d.face_flux = FaceFlux::kEc;
    const EntropyBalance b = entropy_balance(d, u, 1.0);
    CHECK(std::abs(b.total_rate) <= 1e-10);
    for (std::size_t e = 0; e < b.rate.size(); ++e) CHECK(std::abs(b.rate[e] + b.face_flux[e]) <= 1e-10);
  }
  SUBCASE("HLLC faces dissipate") {
    // traces of a sampled smooth field agree, so break continuity
    for (int a = 0; a < op.n(); ++a) u[d.index(3, a)][kRho] *= 1.1;
    const EntropyBalance b = entropy_balance(d, u, 1.0);
    CHECK(b.total_rate + b.boundary_flux <= 1e-10);
    CHECK(b.max_production <= 1e-10);
    CHECK(b.total_rate < -1e-8);
  }
  SUBCASE("mixtures are rejected") {
    u[3][kGamma] = 2.4;
    CHECK_THROWS_AS(entropy_balance(d, u, 1.0), ConfigError);
  }
}
