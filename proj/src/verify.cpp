#include "sgdg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sgdg/cases.hpp"
#include "sgdg/errors.hpp"
#include "sgdg/fluctuations.hpp"
#include "sgdg/mesh.hpp"
#include "sgdg/riemann.hpp"
#include "sgdg/solver.hpp"

namespace sgdg {

double sbp_residual(const LobattoOperator& op) {
  const int n = op.n();
  double r = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double b = 0.0;
      if (k == l && k == 0) b = -1.0;
      if (k == l && k == n - 1) b = 1.0;
      r = std::max(r, std::abs(op.weights[k] * op.D(k, l) + op.weights[l] * op.D(l, k) - b));
    }
  return r;
}

double row_sum_residual(const LobattoOperator& op) {
  double r = 0.0;
  for (int k = 0; k < op.n(); ++k) {
    double s = 0.0;
    for (int l = 0; l < op.n(); ++l) s += op.D(k, l);
    r = std::max(r, std::abs(s));
  }
  return r;
}

namespace {

CheckResult check(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value <= tol};
}

State random_state(std::mt19937_64& rng, const SpeciesTable& sp) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double alpha = U(rng) < 0.3 ? std::round(U(rng)) : U(rng);
  const double rho = std::exp(std::log(1e-3) + U(rng) * std::log(1e6));
  const double pmin = -0.5 * stiffness(mixture_state(sp, 1.0 - alpha, 1.0, {0.0, 0.0}, 1.0));
  const double p = pmin + std::exp(std::log(1e-3) + U(rng) * std::log(1e6));
  const Vec2 v{(U(rng) - 0.5) * 20.0, (U(rng) - 0.5) * 20.0};
  return mixture_state(sp, 1.0 - alpha, rho, v, p);
}

}  // namespace

std::vector<CheckResult> verify_suite(int hllc_samples, unsigned seed) {
  std::vector<CheckResult> out;
  double sbp = 0.0, rows = 0.0;
  for (int p = 1; p <= 6; ++p) {
    const LobattoOperator op = lobatto_operator(p);
    sbp = std::max(sbp, sbp_residual(op));
    rows = std::max(rows, row_sum_residual(op));
  }
  out.push_back(check("SBP property, p = 1..6", sbp, 1e-13));
  out.push_back(check("derivative row sums, p = 1..6", rows, 1e-13));

  const LobattoOperator op4 = lobatto_operator(4);
  StructuredSpec spec;
  spec.warp = 0.05;
  const Mesh warped = structured_mesh(spec, op4);
  double metric = 0.0, averaged = 0.0;
  for (const Element& e : warped.elements) {
    metric = std::max(metric, metric_identity_residual(e, op4));
    averaged = std::max(averaged, averaged_normal_identity_residual(e, op4));
  }
  out.push_back(check("metric identities, warped 4x4 mesh, p = 4", metric, 1e-12));
  out.push_back(check("averaged normal identities, warped 4x4 mesh", averaged, 1e-12));
  bool connected = true;
  try {
    validate_connectivity(warped);
  } catch (const MeshError&) {
    connected = false;
  }
  out.push_back(check("face connectivity of the warped mesh", connected ? 0.0 : 1.0, 0.0));

  const SpeciesTable sp({Species{1.4, 0.0, 1.0}, Species{4.4, 6.0, 1.0}});
  const State uniform = mixture_state(sp, 0.3, 1.3, {0.7, -0.4}, 2.1);
  for (Flavor f : {Flavor::kCP, Flavor::kEC}) {
    Discretization d(warped, op4, f);
    Field u(d.mesh.n_dofs(), uniform);
    const Field r = residual(d, u);
    double m = 0.0;
    for (const State& s : r) m = std::max(m, max_abs(s));
    out.push_back(check(std::string("free-stream residual, ") + to_string(f), m / (1.0 + max_abs(uniform)), 1e-11));
  }

  std::mt19937_64 rng(seed);
  double consistency = 0.0, symmetry = 0.0, path = 0.0;
  int interlace_fail = 0, star_fail = 0;
  const Vec2 n{0.6, 0.8};
  for (int s = 0; s < hllc_samples; ++s) {
    const State a = random_state(rng, sp);
    const State b = random_state(rng, sp);
    for (Flavor f : {Flavor::kCP, Flavor::kEC}) {
      const State h = f == Flavor::kCP ? cp_flux(a, a, n) : ec_flux(a, a, n);
      const State fa = physical_flux(a, n);
      consistency = std::max(consistency, max_abs(h - fa) / (1.0 + max_abs(fa)));
      const State hab = f == Flavor::kCP ? cp_flux(a, b, n) : ec_flux(a, b, n);
      const State hba = f == Flavor::kCP ? cp_flux(b, a, n) : ec_flux(b, a, n);
      symmetry = std::max(symmetry, max_abs(hab - hba) / (1.0 + max_abs(hab)));
    }
    try {
      HllcBreakdown br;
      const FluctuationPair fl = hllc_fluctuations(a, b, n, br);
      State total = physical_flux(b, n) - physical_flux(a, n);
      total[kGamma] = br.sStar * (b[kGamma] - a[kGamma]);
      total[kPi] = br.sStar * (b[kPi] - a[kPi]);
      const State sum = fl.dminus + fl.dplus;
      path = std::max(path, max_abs(sum - total) / (1.0 + max_abs(physical_flux(a, n)) + max_abs(physical_flux(b, n))));
      if (!is_admissible(br.starL) || !is_admissible(br.starR)) ++star_fail;
    } catch (const InterlacingError&) {
      ++interlace_fail;
    }
  }
  out.push_back(check("two-point flux consistency (CP, EC)", consistency, 1e-13));
  out.push_back(check("two-point flux symmetry (CP, EC)", symmetry, 1e-13));
  out.push_back(check("HLLC interlacing failures", interlace_fail, 0.0));
  out.push_back(check("HLLC inadmissible star states", star_fail, 0.0));
  out.push_back(check("HLLC path conservation", path, 1e-13));
  return out;
}

}  // namespace sgdg
