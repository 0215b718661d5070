#include "sgdg/cases.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sgdg/errors.hpp"
#include "sgdg/riemann.hpp"

namespace sgdg {

namespace {

constexpr double kPi = std::numbers::pi;

struct NormalShock {
  double rho, u, p;
};

// Post-shock state behind a shock of Mach M running into gas at rest
// (rho1, p1); direction = +1 for a right-running shock.
NormalShock post_shock(double gamma, double rho1, double p1, double M, double direction) {
  const double c1 = std::sqrt(gamma * p1 / rho1);
  const double p2 = p1 * (1.0 + 2.0 * gamma / (gamma + 1.0) * (M * M - 1.0));
  const double rho2 = rho1 * (gamma + 1.0) * M * M / ((gamma - 1.0) * M * M + 2.0);
  const double u2 = direction * M * c1 * (1.0 - rho1 / rho2);
  return {rho2, u2, p2};
}

State region_state(const SpeciesTable& sp, const RegionState& r) {
  return mixture_state(sp, r.alpha1, r.rho, {r.u, 0.0}, r.p);
}

ReferenceSampler riemann_reference(const SpeciesTable& sp, const RiemannData& d) {
  const Vec2 n{1.0, 0.0};
  if (d.states.size() == 2) {
    auto rp = std::make_shared<ExactRiemannSolution>(exact_riemann(region_state(sp, d.states[0]), region_state(sp, d.states[1]), n));
    const double xb = d.breaks[0];
    const State uL = rp->uL, uR = rp->uR;
    return [rp, xb, uL, uR](const Vec2& x, double t) {
      if (t <= 0.0) return x[0] < xb ? uL : uR;
      return rp->sample((x[0] - xb) / t);
    };
  }
  if (d.states.size() != 3) return {};
  // Wave from the first break catching up with a material interface at the
  // second one. Only handled when the right pair is a pure contact.
  const RegionState& M = d.states[1];
  const RegionState& R = d.states[2];
  if (M.u != R.u || M.p != R.p) return {};
  const State sL = region_state(sp, d.states[0]);
  const State sM = region_state(sp, M);
  const State sR = region_state(sp, R);
  auto rp1 = std::make_shared<ExactRiemannSolution>(exact_riemann(sL, sM, n));
  const double b0 = d.breaks[0], b1 = d.breaks[1];
  const double shock = (rp1->rhoStarR * rp1->uStar - sM[kRho] * M.u) / (rp1->rhoStarR - sM[kRho]);
  if (!(rp1->pStar > M.p) || !(shock > M.u)) return {};
  const double t0 = (b1 - b0) / (shock - M.u);
  const double xm = b0 + shock * t0;
  const State behind = rp1->sample(0.5 * (rp1->uStar + shock));
  auto rp2 = std::make_shared<ExactRiemannSolution>(exact_riemann(behind, sR, n));
  const double u_contact = M.u;
  return [=](const Vec2& x, double t) {
    if (t <= 0.0) return x[0] < b0 ? sL : (x[0] < b1 ? sM : sR);
    if (t < t0) {
      if (x[0] >= b1 + u_contact * t) return sR;
      return rp1->sample((x[0] - b0) / t);
    }
    if (t == t0) return x[0] < xm ? rp1->sample((x[0] - b0) / t) : sR;
    const State s2 = rp2->sample((x[0] - xm) / (t - t0));
    if (s2 == rp2->uL) return rp1->sample((x[0] - b0) / t);
    return s2;
  };
}

SpeciesTable two_species(double g1, double pinf1, double cv1, double g2, double pinf2, double cv2) {
  return SpeciesTable({Species{g1, pinf1, cv1}, Species{g2, pinf2, cv2}});
}

CaseConfig density_wave() {
  CaseConfig c;
  c.name = "density-wave";
  c.dim = 2;
  c.grid.nx = c.grid.ny = 8;
  c.p = 3;
  c.t_end = 2.0;
  c.species = two_species(1.4, 0.0, 1.0, 3.0, 2.0, 1.0);
  const SpeciesTable sp = c.species;
  auto field = [sp](const Vec2& x, double t) {
    const double s = x[0] + x[1] - 2.0 * t;
    const double a = 0.5 + 0.25 * std::sin(4.0 * kPi * s);
    const double rho = 1.0 + 0.5 * std::sin(2.0 * kPi * s);
    return mixture_state(sp, a, rho, {1.0, 1.0}, 1.0);
  };
  c.initial = [field](const Vec2& x) { return field(x, 0.0); };
  c.exact = field;
  return c;
}

CaseConfig one_d(const std::string& name, double x0, double x1, double t_end, SpeciesTable sp) {
  CaseConfig c;
  c.name = name;
  c.dim = 1;
  c.elements = 100;
  c.x0 = x0;
  c.x1 = x1;
  c.p = 3;
  c.t_end = t_end;
  c.species = std::move(sp);
  return c;
}

CaseConfig isolated_contact() {
  CaseConfig c = one_d("isolated-contact", -0.5, 0.5, 0.2, two_species(1.4, 0.0, 1.0, 1.5, 0.0, 2.0));
  set_riemann_data(c, {{0.0}, {{0.375, 2.0, 1.0, 1.0}, {0.146342, 1.0, 1.0, 1.0}}});
  return c;
}

CaseConfig shock_interface() {
  CaseConfig c = one_d("shock-interface", -1.0, 1.0, 0.07, two_species(1.4, 0.0, 1.0, 5.0 / 3.0, 0.0, 2.5));
  set_riemann_data(c, {{-0.8, -0.2}, {{0.0, 0.386, 26.59, 100.0}, {0.0, 0.1, -0.5, 1.0}, {1.0, 1.0, -0.5, 1.0}}});
  return c;
}

CaseConfig gas_water() {
  CaseConfig c = one_d("gas-water", -5.0, 5.0, 1.0, two_species(1.4, 0.0, 1.2, 5.5, 1.505, 0.073037));
  set_riemann_data(c, {{0.0}, {{1.0, 1.241, 0.0, 2.753}, {0.0, 0.991, 0.0, 3.059e-4}}});
  return c;
}

CaseConfig sod() {
  CaseConfig c = one_d("sod", 0.0, 1.0, 0.2, SpeciesTable({Species{1.4, 0.0, 1.0}}));
  set_riemann_data(c, {{0.5}, {{1.0, 1.0, 0.0, 1.0}, {1.0, 0.125, 0.0, 0.1}}});
  return c;
}

// Air at rest with rho = T = c = 1, helium in temperature and pressure
// equilibrium inside a bubble.
struct HeliumAir {
  SpeciesTable sp = two_species(1.648, 0.0, 6.0598, 1.4, 0.0, 1.7857);
  double p_air = 0.4 * 1.7857;  // rho (gamma-1) cv T
  double rho_he = p_air / (0.648 * 6.0598);
};

CaseConfig helium_bubble_advect() {
  CaseConfig c;
  c.name = "helium-bubble-advect";
  c.dim = 2;
  c.grid.nx = c.grid.ny = 64;
  c.p = 3;
  c.t_end = 1.0;
  const HeliumAir h;
  c.species = h.sp;
  const double radius = 0.2;
  c.initial = [h, radius](const Vec2& x) {
    const bool in = std::hypot(x[0] - 0.5, x[1] - 0.5) < radius;
    return in ? mixture_state(h.sp, 1.0, h.rho_he, {1.0, 0.0}, h.p_air)
              : mixture_state(h.sp, 0.0, 1.0, {1.0, 0.0}, h.p_air);
  };
  c.audit = {{"air_pressure", h.p_air}, {"helium_density", h.rho_he}, {"bubble_radius", radius}};
  return c;
}

CaseConfig helium_bubble() {
  CaseConfig c;
  c.name = "helium-bubble";
  c.dim = 2;
  c.grid.x0 = 0.0;
  c.grid.x1 = 6.5;
  c.grid.y0 = 0.0;
  c.grid.y1 = 1.78;
  c.grid.nx = 130;
  c.grid.ny = 36;
  c.grid.left = c.grid.right = BoundaryKind::kNonreflective;
  c.grid.bottom = c.grid.top = BoundaryKind::kPeriodic;
  c.p = 2;
  // One time unit is the transit time of a sound wave in pre-shock air over
  // one bubble diameter, 76.19 microseconds; 102 microseconds is 1.3388.
  c.t_end = 102.0 / 76.19;
  const HeliumAir h;
  c.species = h.sp;
  const NormalShock s = post_shock(1.4, 1.0, h.p_air, 1.22, -1.0);
  c.initial = [h, s](const Vec2& x) {
    if (x[0] > 4.0) return mixture_state(h.sp, 0.0, s.rho, {s.u, 0.0}, s.p);
    const bool in = std::hypot(x[0] - 3.5, x[1] - 0.89) < 0.5;
    return in ? mixture_state(h.sp, 1.0, h.rho_he, {0.0, 0.0}, h.p_air)
              : mixture_state(h.sp, 0.0, 1.0, {0.0, 0.0}, h.p_air);
  };
  c.audit = {{"air_pressure", h.p_air}, {"helium_density", h.rho_he}, {"post_shock_density", s.rho},
             {"post_shock_velocity", s.u}, {"post_shock_pressure", s.p}, {"time_unit_us", 76.19}};
  return c;
}

CaseConfig hydrogen_bubble() {
  CaseConfig c;
  c.name = "hydrogen-bubble";
  c.dim = 2;
  c.grid.x0 = 0.0;
  c.grid.x1 = 22.5;
  c.grid.y0 = 0.0;
  c.grid.y1 = 7.5;
  c.grid.nx = 150;
  c.grid.ny = 50;
  c.grid.left = BoundaryKind::kSupersonicInflow;
  c.grid.right = BoundaryKind::kNonreflective;
  c.grid.bottom = c.grid.top = BoundaryKind::kSymmetry;
  c.p = 2;
  c.t_end = 10.0;
  c.species = two_species(1.41, 0.0, 7.424, 1.353, 0.0, 0.523);
  const SpeciesTable sp = c.species;
  const double p_air = 0.353 * 0.523;  // rho = T = 1
  const double rho_h2 = p_air / (0.41 * 7.424);
  const NormalShock s = post_shock(1.353, 1.0, p_air, 2.0, 1.0);
  // The right-running shock starts left of the bubble so that it hits it.
  const double x_shock = 4.0, x_bubble = 7.0, radius = 2.0;
  c.inflow = mixture_state(sp, 0.0, s.rho, {s.u, 0.0}, s.p);
  const State post = c.inflow;
  c.initial = [=](const Vec2& x) {
    if (x[0] < x_shock) return post;
    const bool in = std::hypot(x[0] - x_bubble, x[1]) < radius;
    return in ? mixture_state(sp, 1.0, rho_h2, {0.0, 0.0}, p_air) : mixture_state(sp, 0.0, 1.0, {0.0, 0.0}, p_air);
  };
  c.audit = {{"air_pressure", p_air},          {"hydrogen_density", rho_h2}, {"post_shock_density", s.rho},
             {"post_shock_velocity", s.u},     {"post_shock_pressure", s.p}, {"shock_x", x_shock},
             {"bubble_x", x_bubble},           {"bubble_radius", radius}};
  return c;
}

}  // namespace

State mixture_state(const SpeciesTable& species, double alpha1, double rho, const Vec2& v, double p) {
  std::vector<double> alphas;
  if (species.size() == 1) {
    alphas = {1.0};
  } else if (species.size() == 2) {
    alphas = {alpha1, 1.0 - alpha1};
  } else {
    throw ConfigError("mixture_state supports one or two species");
  }
  const auto [G, P] = gamma_pi_mix(alphas, species);
  Primitive w;
  w.rho = rho;
  w.vel = v;
  w.p = p;
  w.Gamma = G;
  w.Pi = P;
  return to_conserved(w);
}

void set_riemann_data(CaseConfig& c, RiemannData data) {
  if (data.states.size() != data.breaks.size() + 1 || data.states.empty())
    throw ConfigError("piecewise data need one more state than break points");
  const SpeciesTable sp = c.species;
  std::vector<State> states;
  for (const RegionState& r : data.states) {
    const State s = region_state(sp, r);
    if (!is_admissible(s)) throw ConfigError(fmt::format("piecewise data: inadmissible state (rho={}, p={})", r.rho, r.p));
    states.push_back(s);
  }
  const std::vector<double> breaks = data.breaks;
  c.initial = [states, breaks](const Vec2& x) {
    std::size_t i = 0;
    while (i < breaks.size() && x[0] >= breaks[i]) ++i;
    return states[i];
  };
  c.exact = riemann_reference(sp, data);
  c.riemann = std::move(data);
}

const std::vector<std::string>& builtin_case_names() {
  static const std::vector<std::string> names = {"density-wave",         "isolated-contact", "shock-interface",
                                                 "gas-water",            "helium-bubble-advect", "helium-bubble",
                                                 "hydrogen-bubble",      "sod"};
  return names;
}

CaseConfig builtin_case(const std::string& name) {
  if (name == "density-wave") return density_wave();
  if (name == "isolated-contact") return isolated_contact();
  if (name == "shock-interface") return shock_interface();
  if (name == "gas-water") return gas_water();
  if (name == "helium-bubble-advect") return helium_bubble_advect();
  if (name == "helium-bubble") return helium_bubble();
  if (name == "hydrogen-bubble") return hydrogen_bubble();
  if (name == "sod") return sod();
  throw ConfigError(fmt::format("unknown case '{}'; known cases: {}", name, fmt::join(builtin_case_names(), ", ")));
}

}  // namespace sgdg
