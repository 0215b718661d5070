#include <doctest.h>

#include <cmath>
#include <random>

#include "sgdg/errors.hpp"
#include "sgdg/fluctuations.hpp"
#include "sgdg/thermo.hpp"

using namespace sgdg;

namespace {

State prim(double rho, double vx, double vy, double p, double Gamma, double Pi) {
  Primitive w;
  w.rho = rho;
  w.vel = {vx, vy};
  w.p = p;
  w.Gamma = Gamma;
  w.Pi = Pi;
  return to_conserved(w);
}

State species_state(double rho, double vx, double vy, double p, double gamma, double pinf) {
  return prim(rho, vx, vy, p, 1.0 / (gamma - 1.0), gamma * pinf / (gamma - 1.0));
}

State rotate(const State& u, double a) {
  State r = u;
  r[kMomX] = std::cos(a) * u[kMomX] - std::sin(a) * u[kMomY];
  r[kMomY] = std::sin(a) * u[kMomX] + std::cos(a) * u[kMomY];
  return r;
}

Vec2 rotate(const Vec2& n, double a) { return {std::cos(a) * n[0] - std::sin(a) * n[1], std::sin(a) * n[0] + std::cos(a) * n[1]}; }

// theta- . D- + theta+ . D+ - [[q]].n
double castro_residual(const State& um, const State& up, const Vec2& n, double cv) {
  const FluctuationPair d = ec_fluctuations(um, up, n);
  const EntropyEval a = entropy_variables(um, cv), b = entropy_variables(up, cv);
  const double jump_q = dot(b.q, n) - dot(a.q, n);
  const double scale = std::max({std::abs(dot(a.q, n)), std::abs(dot(b.q, n)), 1.0});
  return std::abs(dot(a.theta, d.dminus) + dot(b.theta, d.dplus) - jump_q) / scale;
}

}  // namespace

TEST_CASE("physical flux") {
  const State rest = prim(1.3, 0.0, 0.0, 0.7, 2.5, 0.0);
  const Vec2 n{0.6, 0.8};
  const State f = physical_flux(rest, n);
  CHECK(f[kRho] == 0.0);
  CHECK(f[kMomX] == doctest::Approx(0.7 * 0.6));
  CHECK(f[kMomY] == doctest::Approx(0.7 * 0.8));
  CHECK(f[kRhoE] == 0.0);
  CHECK(f[kGamma] == 0.0);
  CHECK(f[kPi] == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int s = 0; s < 10; ++s) {
    const State u = prim(0.5 + U(rng), U(rng) - 0.5, U(rng) - 0.5, 0.5 + U(rng), 1.0 + U(rng), 3.0 * U(rng));
    const double a = 6.28 * U(rng);
    const Vec2 m{1.0, 0.0};
    const State lhs = physical_flux(rotate(u, a), rotate(m, a));
    const State rhs = rotate(physical_flux(u, m), a);
    for (int v = 0; v < kNeq; ++v) CHECK(std::abs(lhs[v] - rhs[v]) <= 1e-12);
    CHECK(lhs[kGamma] == 0.0);
    CHECK(lhs[kPi] == 0.0);
  }
  State bad = rest;
  bad[kRho] = -1.0;
  CHECK_THROWS_AS(physical_flux(bad, n), AdmissibilityError);
}

TEST_CASE("means, jumps and Leibniz identities") {
  const auto [m, j] = mean_jump(3.0, 3.0);
  CHECK(m == 3.0);
  CHECK(j == 0.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-10.0, 10.0);
  for (int s = 0; s < 1000; ++s) {
    const double a0 = U(rng), a1 = U(rng), b0 = U(rng), b1 = U(rng), c0 = U(rng), c1 = U(rng);
    const auto [ma, ja] = mean_jump(a0, a1);
    const auto [mb, jb] = mean_jump(b0, b1);
    const auto [mc, jc] = mean_jump(c0, c1);
    const auto [mab, jab] = mean_jump(a0 * b0, a1 * b1);
    CHECK(std::abs(jab - (ma * jb + mb * ja)) <= 1e-13 * 100.0);
    // [[abc]] = mean(ab)[[c]] + mean(c)(mean(a)[[b]] + mean(b)[[a]])
    const double jabc = a1 * b1 * c1 - a0 * b0 * c0;
    CHECK(std::abs(jabc - (mab * jc + mc * (ma * jb + mb * ja))) <= 1e-13 * 1000.0);
    const auto [m2, j2] = mean_jump(a1, a0);
    CHECK(m2 == ma);
    CHECK(j2 == -ja);
  }
}

TEST_CASE("logarithmic mean") {
  CHECK(log_mean(2.0, 2.0) == 2.0);
  CHECK(log_mean(1.0, std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  const double a = 1.7, b = 1.7 * (1.0 + 1e-9);
  CHECK(std::abs(log_mean(a, b) - 0.5 * (a + b)) <= 1e-14 * a);
  for (double r : {1.0 + 1e-6, 1.0 + 9e-5, 1.0 + 1.1e-4, 1.5, 10.0, 1e6}) {
    const double l = log_mean(0.3, 0.3 * r);
    CHECK(l >= 0.3);
    CHECK(l <= 0.3 * r);
    // both branches agree with the exact expression away from r = 1
    if (r > 1.0 + 1e-5) CHECK(l == doctest::Approx(0.3 * (r - 1.0) / std::log(r)).epsilon(1e-11));
    CHECK(log_mean(0.3 * r, 0.3) == doctest::Approx(l).epsilon(1e-15));
  }
  CHECK_THROWS_AS(log_mean(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(log_mean(1.0, -2.0), DomainError);
}

TEST_CASE("consistency of the volume fluctuations") {
  const State u = prim(1.3, 0.4, -0.2, 0.7, 2.5, 0.3);
  const Vec2 n{0.6, 0.8};
  for (Flavor f : {Flavor::kCP, Flavor::kEC}) {
    const FluctuationPair d = volume_fluctuations(u, u, n, f);
    const State h = f == Flavor::kCP ? cp_flux(u, u, n) : ec_flux(u, u, n);
    const State fu = physical_flux(u, n);
    for (int v = 0; v < kNeq; ++v) {
      CHECK(std::abs(d.dminus[v]) <= 1e-15);
      CHECK(std::abs(d.dplus[v]) <= 1e-15);
      CHECK(std::abs(h[v] - fu[v]) <= 1e-14);
    }
    const State t = volume_tilde(u, u, n, f);
    for (int v = 0; v < kNeq; ++v) CHECK(std::abs(t[v] - 2.0 * fu[v]) <= 1e-14);
  }
}

TEST_CASE("contact-preserving conditions on a material interface") {
  // shared v = (1, 0) and p = 1; rho 2 -> 1, Gamma 2.5 -> 2, Pi 0 -> 3
  const State um = prim(2.0, 1.0, 0.0, 1.0, 2.5, 0.0);
  const State up = prim(1.0, 1.0, 0.0, 1.0, 2.0, 3.0);
  for (const Vec2& n : {Vec2{1.0, 0.0}, Vec2{0.6, 0.8}}) {
    const State h = cp_flux(um, up, n);
    const double vn = n[0];
    // h^{rho v} = v h^rho + p n
    CHECK(std::abs(h[kMomX] - (1.0 * h[kRho] + 1.0 * n[0])) <= 1e-13);
    CHECK(std::abs(h[kMomY] - (0.0 * h[kRho] + 1.0 * n[1])) <= 1e-13);
    const State dm = volume_fluctuations(um, up, n, Flavor::kCP).dminus;
    const State dp_swapped = volume_fluctuations(up, um, n, Flavor::kCP).dplus;
    const double lhs = h[kRhoE] - (um[kRhoE] + 1.0) * vn;
    const double rhs = 0.5 * 1.0 * (h[kRho] - um[kRho] * vn) + 0.5 * 1.0 * (dm[kGamma] - dp_swapped[kGamma]) +
                       0.5 * (dm[kPi] - dp_swapped[kPi]);
    CHECK(std::abs(lhs - rhs) <= 1e-13);
  }
}

TEST_CASE("pure-phase CP flux equals the Euler formula") {
  const State um = prim(2.0, 0.3, -0.1, 1.4, 2.5, 0.0);
  const State up = prim(0.7, -0.2, 0.5, 0.6, 2.5, 0.0);
  const Vec2 n{0.8, -0.6};
  const FluctuationPair d = cp_fluctuations(um, up, n);
  CHECK(d.dminus[kGamma] == 0.0);
  CHECK(d.dplus[kPi] == 0.0);
  const State h = cp_flux(um, up, n);
  const double rho = 1.35, vx = 0.05, vy = 0.2, p = 1.0, rhoE = 0.5 * (um[kRhoE] + up[kRhoE]);
  const double vn = vx * n[0] + vy * n[1];
  CHECK(h[kRho] == doctest::Approx(rho * vn));
  CHECK(h[kMomX] == doctest::Approx(rho * vx * vn + p * n[0]));
  CHECK(h[kMomY] == doctest::Approx(rho * vy * vn + p * n[1]));
  CHECK(h[kRhoE] == doctest::Approx((rhoE + p) * vn));
  CHECK(d.dminus[kRho] == doctest::Approx(h[kRho] - physical_flux(um, n)[kRho]));
}

TEST_CASE("entropy conservation of the EC fluctuations") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  SUBCASE("air") {
    for (int s = 0; s < 500; ++s) {
      const State a = species_state(0.1 + 3 * U(rng), 2 * U(rng) - 1, 2 * U(rng) - 1, 0.1 + 3 * U(rng), 1.4, 0.0);
      const State b = species_state(0.1 + 3 * U(rng), 2 * U(rng) - 1, 2 * U(rng) - 1, 0.1 + 3 * U(rng), 1.4, 0.0);
      const double ang = 6.28 * U(rng);
      CHECK(castro_residual(a, b, {std::cos(ang), std::sin(ang)}, 1.0) <= 1e-12);
    }
  }
  SUBCASE("stiffened water") {
    for (int s = 0; s < 500; ++s) {
      const State a = species_state(0.5 + U(rng), U(rng) - 0.5, U(rng) - 0.5, -1.0 + 3 * U(rng), 5.5, 1.505);
      const State b = species_state(0.5 + U(rng), U(rng) - 0.5, U(rng) - 0.5, -1.0 + 3 * U(rng), 5.5, 1.505);
      CHECK(castro_residual(a, b, {0.6, 0.8}, 0.073037) <= 1e-12);
    }
  }
  SUBCASE("nearly equal states go through the series branch") {
    const State a = species_state(1.0, 0.1, 0.0, 1.0, 1.4, 0.0);
    const State b = species_state(1.0 + 1e-7, 0.1, 0.0, 1.0 + 2e-7, 1.4, 0.0);
    CHECK(castro_residual(a, b, {1.0, 0.0}, 1.0) <= 1e-12);
  }
}

TEST_CASE("symmetrized volume fluctuation") {
  const State um = prim(2.0, 0.3, -0.1, 1.4, 2.5, 0.0);
  const State up = prim(0.7, -0.2, 0.5, 0.6, 2.0, 3.0);
  const Vec2 n{0.6, 0.8};
  for (Flavor f : {Flavor::kCP, Flavor::kEC}) {
    const State t = volume_tilde(um, up, n, f);
    const State h = f == Flavor::kCP ? cp_flux(um, up, n) : ec_flux(um, up, n);
    for (int v = 0; v < 4; ++v) CHECK(std::abs(t[v] - 2.0 * h[v]) <= 1e-14);
    // d-(u-, u+) - d+(u+, u-) expanded by hand
    const double vnm = 0.3 * 0.6 - 0.1 * 0.8;
    CHECK(t[kGamma] == doctest::Approx(vnm * (2.0 - 2.5)));
    CHECK(t[kPi] == doctest::Approx(vnm * 3.0));
    const State ts = volume_tilde(up, um, n, f);
    for (int v = 0; v < 4; ++v) CHECK(std::abs(ts[v] - t[v]) <= 1e-14);
  }
}
