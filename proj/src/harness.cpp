#include "sgdg/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sgdg/errors.hpp"
#include "sgdg/output.hpp"

namespace sgdg {

using nlohmann::json;

Discretization build_discretization(const CaseConfig& c) {
  if (c.p < 1) throw ConfigError(fmt::format("degree p must be at least 1, got {}", c.p));
  const LobattoOperator op = lobatto_operator(c.p);
  Mesh mesh;
  if (c.dim == 1) {
    if (c.elements < 1) throw ConfigError("1D case needs at least one element");
    mesh = interval_mesh(c.elements, c.x0, c.x1, op, c.left, c.right);
  } else if (!c.mesh_file.empty()) {
    if (!std::filesystem::exists(c.mesh_file)) throw ConfigError(fmt::format("mesh file '{}' does not exist", c.mesh_file));
    mesh = read_mesh(c.mesh_file, op);
  } else {
    mesh = structured_mesh(c.grid, op);
  }
  validate_connectivity(mesh);
  Discretization d(std::move(mesh), op, c.flavor);
  d.inflow = c.inflow;
  return d;
}

Field initial_field(const Discretization& d, const CaseConfig& c) {
  if (!c.initial) throw ConfigError(fmt::format("case '{}' has no initial condition", c.name));
  Field u(d.mesh.n_dofs());
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) {
      State s = c.initial(d.mesh.elements[e].x[a]);
      require_admissible(s, "initial condition");
      u[d.index(e, a)] = s;
    }
  return u;
}

StepOptions step_options(const CaseConfig& c) {
  StepOptions o;
  o.safety = c.safety;
  o.lambda_factor = c.lambda_factor;
  o.fixed_dt = c.fixed_dt;
  o.limit = c.limiter;
  o.bounds = LimiterBounds::from_species(c.species, c.eps, c.limiter_componentwise);
  return o;
}

namespace {

State global_drift(const State& a, const State& b) {
  State d{};
  for (int v = 0; v < kNeq; ++v) d[v] = std::abs(b[v] - a[v]) / std::max(1.0, std::abs(a[v]));
  return d;
}

std::vector<std::string> write_outputs(const std::string& dir, const std::string& tag, const Discretization& d,
                                       const Field& u, const SpeciesTable& species) {
  std::vector<std::string> files;
  if (dir.empty()) return files;
  if (d.mesh.dim == 1) {
    const std::string path = (std::filesystem::path(dir) / (tag + ".csv")).string();
    write_csv(path, csv_rows(d, u, species));
    files.push_back(path);
  } else {
    const std::string path = (std::filesystem::path(dir) / (tag + ".vtk")).string();
    write_vtk(path, d, u, species);
    files.push_back(path);
  }
  return files;
}

json summary_json(const RunSummary& s) {
  json j;
  j["case"] = s.name;
  j["steps"] = s.steps;
  j["steps_bound_by_velocity_condition"] = s.steps_bound_b;
  j["t_final"] = s.t_final;
  j["wall_seconds"] = s.wall_seconds;
  j["aborted"] = s.aborted;
  if (!s.error.empty()) j["error"] = s.error;
  const char* names[kNeq] = {"rho", "rho_u", "rho_v", "rho_E", "Gamma", "Pi"};
  for (int v = 0; v < kNeq; ++v) {
    j["integral_initial"][names[v]] = s.initial_integral[v];
    j["integral_final"][names[v]] = s.final_integral[v];
    j["drift"][names[v]] = s.drift[v];
  }
  j["limiter"] = {{"density", s.limiter_totals.n_rho},
                  {"Gamma", s.limiter_totals.n_gamma},
                  {"Pi", s.limiter_totals.n_pi},
                  {"internal_energy", s.limiter_totals.n_rhoe},
                  {"elements", s.limiter_totals.n_elements}};
  for (const auto& [k, v] : s.audit) j["derived"][k] = v;
  j["files"] = s.files;
  return j;
}

}  // namespace

RunResult run_case(const CaseConfig& c, const RunOptions& opt) {
  if (!(c.t_end > 0.0)) throw ConfigError(fmt::format("end time must be positive, got {}", c.t_end));
  const auto start = std::chrono::steady_clock::now();
  RunResult res{build_discretization(c), {}, {}};
  const Discretization& d = res.disc;
  Field& u = res.u;
  u = initial_field(d, c);
  const StepOptions so = step_options(c);
  RunSummary& sum = res.summary;
  sum.name = c.name;
  sum.audit = c.audit;
  sum.initial_integral = integral(d, u);

  if (!opt.out_dir.empty()) {
    auto f = write_outputs(opt.out_dir, fmt::format("{}_0000", c.name), d, u, c.species);
    sum.files.insert(sum.files.end(), f.begin(), f.end());
  }

  double t = 0.0;
  int frame = 1;
  double next_output = c.output_every > 0.0 ? c.output_every : c.t_end;
  Field last;
  constexpr int log_every = 200;
  try {
    while (t < c.t_end) {
      if (opt.max_steps >= 0 && sum.steps >= opt.max_steps) break;
      StepReport rep = compute_dt(d, u, so);
      double target = std::min(next_output, c.t_end);
      double dt = rep.dt;
      bool hit = false;
      if (t + dt >= target * (1.0 - 1e-14)) {
        dt = target - t;
        hit = true;
      }
      if (!(dt > 0.0)) break;
      last = u;
      ssprk3_step(d, u, dt, so, rep);
      rep.dt = dt;
      t = hit ? target : t + dt;
      ++sum.steps;
      if (rep.bound == 'B') ++sum.steps_bound_b;
      for (const LimiterReport& lr : rep.stage_limiter) sum.limiter_totals.merge(lr);
      if (opt.on_step) opt.on_step(d, u, t, rep);
      if (opt.log_progress && sum.steps % log_every == 0)
        spdlog::info("{}: step {} t={:.6g} dt={:.3e} ({})", c.name, sum.steps, t, dt, rep.bound);
      if (hit && t < c.t_end) {
        auto f = write_outputs(opt.out_dir, fmt::format("{}_{:04d}", c.name, frame++), d, u, c.species);
        sum.files.insert(sum.files.end(), f.begin(), f.end());
        next_output += c.output_every;
      }
    }
  } catch (const NumericalError& err) {
    sum.aborted = true;
    sum.error = err.what();
    sum.t_final = t;
    if (!opt.out_dir.empty()) {
      const std::string path = (std::filesystem::path(opt.out_dir) / (c.name + "_checkpoint.dat")).string();
      write_checkpoint(path, d, last.empty() ? u : last, t);
      spdlog::error("{}: {} (last good state written to {})", c.name, err.what(), path);
    }
    throw;
  }
  sum.t_final = t;
  sum.final_integral = integral(d, u);
  sum.drift = global_drift(sum.initial_integral, sum.final_integral);
  if (!opt.out_dir.empty()) {
    auto f = write_outputs(opt.out_dir, fmt::format("{}_final", c.name), d, u, c.species);
    sum.files.insert(sum.files.end(), f.begin(), f.end());
  }
  sum.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!opt.out_dir.empty()) {
    const std::string path = (std::filesystem::path(opt.out_dir) / (c.name + "_summary.json")).string();
    std::ofstream(path) << summary_json(sum).dump(2) << "\n";
  }
  return res;
}

ErrorReport error_norms(const Discretization& d, const Field& u, const std::function<double(const Vec2&)>& reference,
                        const std::function<double(const State&)>& value) {
  ErrorReport r;
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  double l2 = 0.0;
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) {
      const double err = std::abs(value(u[d.index(e, a)]) - reference(d.mesh.elements[e].x[a]));
      const double w = d.node_mass(e, a);
      r.l1 += w * err;
      l2 += w * err * err;
      r.linf = std::max(r.linf, err);
    }
  r.l2 = std::sqrt(l2);
  return r;
}

ErrorReport density_error(const Discretization& d, const Field& u, const ReferenceSampler& exact, double t) {
  return error_norms(
      d, u, [&](const Vec2& x) { return exact(x, t)[kRho]; }, [](const State& s) { return s[kRho]; });
}

std::vector<ConvergenceRow> convergence_study(const std::string& case_name, const ConvergenceOptions& opt) {
  std::vector<ConvergenceRow> rows;
  for (int n : opt.meshes) {
    CaseConfig c = builtin_case(case_name);
    if (!c.exact) throw ConfigError(fmt::format("case '{}' has no reference solution", case_name));
    c.p = opt.p;
    c.flavor = opt.flavor;
    c.safety = opt.safety;
    if (opt.lambda_factor > 0.0) c.lambda_factor = opt.lambda_factor;
    if (opt.t_end > 0.0) c.t_end = opt.t_end;
    if (c.dim == 1) {
      c.elements = n;
    } else {
      c.grid.nx = c.grid.ny = n;
    }
    RunOptions ro;
    ro.log_progress = false;
    const RunResult res = run_case(c, ro);
    ConvergenceRow row;
    row.n = n;
    row.h = (c.dim == 1 ? (c.x1 - c.x0) : (c.grid.x1 - c.grid.x0)) / n;
    row.err = density_error(res.disc, res.u, c.exact, res.summary.t_final);
    row.seconds = res.summary.wall_seconds;
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      const double lh = std::log(prev.h / row.h);
      row.order_l1 = std::log(prev.err.l1 / row.err.l1) / lh;
      row.order_l2 = std::log(prev.err.l2 / row.err.l2) / lh;
      row.order_linf = std::log(prev.err.linf / row.err.linf) / lh;
    }
    rows.push_back(row);
  }
  return rows;
}

Fv1dGrid fv1d_initial(const CaseConfig& c, int cells) {
  if (c.dim != 1) throw ConfigError(fmt::format("case '{}' is not one-dimensional", c.name));
  if (cells < 1) throw ConfigError("the three-point scheme needs at least one cell");
  Fv1dGrid g;
  g.x0 = c.x0;
  g.h = (c.x1 - c.x0) / cells;
  g.cells.resize(cells);
  for (int j = 0; j < cells; ++j) g.cells[j] = c.initial({g.center(j), 0.0});
  return g;
}

Fv1dResult run_fv1d(const CaseConfig& c, int cells, double cfl,
                    const std::function<void(const Fv1dGrid&, const Fv1dGrid&)>& on_step) {
  Fv1dResult r;
  r.grid = fv1d_initial(c, cells);
  while (r.grid.t < c.t_end) {
    double dt = fv1d_max_dt(r.grid, cfl);
    if (r.grid.t + dt >= c.t_end) dt = c.t_end - r.grid.t;
    Fv1dGrid next = step_3pt(r.grid, dt);
    if (next.t >= c.t_end * (1.0 - 1e-15)) next.t = c.t_end;
    if (on_step) on_step(r.grid, next);
    r.grid = std::move(next);
    ++r.steps;
  }
  if (c.exact) {
    double l1 = 0.0;
    for (std::size_t j = 0; j < r.grid.cells.size(); ++j)
      l1 += r.grid.h * std::abs(r.grid.cells[j][kRho] - c.exact({r.grid.center(j), 0.0}, r.grid.t)[kRho]);
    r.l1_density = l1;
  }
  return r;
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(fmt::format("{}: unknown key '{}'", where, it.key()));
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: bad value for '{}': {}", where, key, e.what()));
  }
}

RegionState region_from_json(const json& j) {
  check_keys(j, {"alpha1", "rho", "u", "p"}, "riemann state");
  RegionState r;
  r.alpha1 = j.value("alpha1", 1.0);
  r.rho = get<double>(j, "rho", "riemann state");
  r.u = j.value("u", 0.0);
  r.p = get<double>(j, "p", "riemann state");
  return r;
}

}  // namespace

CaseConfig case_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("case configuration must be a JSON object");
  check_keys(j,
             {"case", "name", "p", "flavor", "t_end", "cfl", "lambda_factor", "fixed_dt", "limiter", "limiter_scaling", "eps",
              "output_every", "mesh", "species", "riemann"},
             "config");
  CaseConfig c;
  if (j.contains("case")) {
    c = builtin_case(get<std::string>(j, "case", "config"));
    if (j.contains("species")) throw ConfigError("config: 'species' can only be set for explicit 'riemann' data");
  } else if (j.contains("riemann")) {
    c.name = "custom";
    c.dim = 1;
    c.p = 3;
    if (!j.contains("species")) throw ConfigError("config: explicit 'riemann' data need a 'species' list");
  } else {
    throw ConfigError("config: give either 'case' or 'riemann'");
  }
  try {
    if (j.contains("species")) {
      std::vector<Species> sp;
      for (const json& s : j.at("species")) {
        check_keys(s, {"gamma", "pinf", "cv"}, "species");
        sp.push_back({s.at("gamma").get<double>(), s.value("pinf", 0.0), s.value("cv", 1.0)});
      }
      c.species = SpeciesTable(sp);
    }
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (j.contains("p")) c.p = j.at("p").get<int>();
    if (j.contains("flavor")) c.flavor = flavor_from_string(j.at("flavor").get<std::string>());
    if (j.contains("t_end")) c.t_end = j.at("t_end").get<double>();
    if (j.contains("cfl")) c.safety = j.at("cfl").get<double>();
    if (j.contains("lambda_factor")) c.lambda_factor = j.at("lambda_factor").get<double>();
    if (j.contains("fixed_dt")) c.fixed_dt = j.at("fixed_dt").get<double>();
    if (j.contains("limiter")) c.limiter = j.at("limiter").get<bool>();
    if (j.contains("limiter_scaling")) {
      const std::string m = j.at("limiter_scaling").get<std::string>();
      if (m != "state" && m != "component")
        throw ConfigError(fmt::format("config: limiter_scaling must be 'state' or 'component', got '{}'", m));
      c.limiter_componentwise = m == "component";
    }
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("output_every")) c.output_every = j.at("output_every").get<double>();
    if (j.contains("mesh")) {
      const json& m = j.at("mesh");
      check_keys(m, {"elements", "x0", "x1", "nx", "ny", "warp", "file", "left", "right", "bottom", "top"}, "mesh");
      if (m.contains("elements")) c.elements = m.at("elements").get<int>();
      if (m.contains("x0")) c.x0 = c.grid.x0 = m.at("x0").get<double>();
      if (m.contains("x1")) c.x1 = c.grid.x1 = m.at("x1").get<double>();
      if (m.contains("nx")) c.grid.nx = m.at("nx").get<int>();
      if (m.contains("ny")) c.grid.ny = m.at("ny").get<int>();
      if (m.contains("warp")) c.grid.warp = m.at("warp").get<double>();
      if (m.contains("file")) {
        const std::filesystem::path p = m.at("file").get<std::string>();
        c.mesh_file = (p.is_absolute() ? p : std::filesystem::path(base_dir) / p).string();
        if (!std::filesystem::exists(c.mesh_file))
          throw ConfigError(fmt::format("mesh file '{}' does not exist", c.mesh_file));
      }
      auto side = [&](const char* key, BoundaryKind& dst1d, BoundaryKind* dst2d) {
        if (!m.contains(key)) return;
        const BoundaryKind k = boundary_kind_from_string(m.at(key).get<std::string>());
        dst1d = k;
        if (dst2d) *dst2d = k;
      };
      side("left", c.left, &c.grid.left);
      side("right", c.right, &c.grid.right);
      BoundaryKind unused = BoundaryKind::kNonreflective;
      side("bottom", unused, &c.grid.bottom);
      side("top", unused, &c.grid.top);
    }
    if (j.contains("riemann")) {
      if (c.dim != 1) throw ConfigError("config: 'riemann' data apply to 1D cases only");
      const json& r = j.at("riemann");
      check_keys(r, {"breaks", "states"}, "riemann");
      RiemannData data;
      data.breaks = r.at("breaks").get<std::vector<double>>();
      for (const json& s : r.at("states")) data.states.push_back(region_from_json(s));
      set_riemann_data(c, std::move(data));
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  if (c.p < 1 || c.p > kMaxDegree) throw ConfigError(fmt::format("config: degree p = {} outside [1, {}]", c.p, kMaxDegree));
  if (!(c.t_end > 0.0)) throw ConfigError("config: t_end must be positive");
  return c;
}

CaseConfig case_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
  return case_from_json(j, std::filesystem::path(path).parent_path().string());
}

}  // namespace sgdg
