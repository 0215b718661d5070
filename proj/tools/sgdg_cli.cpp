#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include <tbb/global_control.h>

#include "sgdg/errors.hpp"
#include "sgdg/harness.hpp"
#include "sgdg/output.hpp"
#include "sgdg/verify.hpp"

using namespace sgdg;

namespace {

int cmd_run(const std::string& config, const std::string& out, std::optional<int> p, std::optional<std::string> flavor,
            std::optional<double> t_end, std::optional<double> cfl) {
  CaseConfig c = case_from_file(config);
  if (p) c.p = *p;
  if (flavor) c.flavor = flavor_from_string(*flavor);
  if (t_end) c.t_end = *t_end;
  if (cfl) c.safety = *cfl;
  RunOptions ro;
  ro.out_dir = out;
  const RunResult r = run_case(c, ro);
  const RunSummary& s = r.summary;
  fmt::print("case {}: {} steps to t = {:.6g} in {:.2f} s\n", s.name, s.steps, s.t_final, s.wall_seconds);
  fmt::print("  drift rho {:.3e}  rho_u {:.3e}  rho_v {:.3e}  rho_E {:.3e}\n", s.drift[kRho], s.drift[kMomX],
             s.drift[kMomY], s.drift[kRhoE]);
  fmt::print("  limiter activations: density {}, Gamma {}, Pi {}, internal energy {}\n", s.limiter_totals.n_rho,
             s.limiter_totals.n_gamma, s.limiter_totals.n_pi, s.limiter_totals.n_rhoe);
  for (const auto& [k, v] : s.audit) fmt::print("  {} = {:.10g}\n", k, v);
  if (c.exact) {
    const ErrorReport e = density_error(r.disc, r.u, c.exact, s.t_final);
    fmt::print("  density error: L1 {:.4e}  L2 {:.4e}  Linf {:.4e}\n", e.l1, e.l2, e.linf);
  }
  for (const std::string& f : s.files) fmt::print("  wrote {}\n", f);
  return 0;
}

int cmd_convergence(const std::string& name, const ConvergenceOptions& opt) {
  const auto rows = convergence_study(name, opt);
  fmt::print("{} p={} flavor={}\n", name, opt.p, to_string(opt.flavor));
  fmt::print("{:>6} {:>12} {:>6} {:>12} {:>6} {:>12} {:>6} {:>8}\n", "n", "L1", "O1", "L2", "O2", "Linf", "Oinf", "sec");
  for (const ConvergenceRow& r : rows) {
    auto order = [&](double o) { return r.n == rows.front().n ? std::string("--") : fmt::format("{:.2f}", o); };
    fmt::print("{:>6} {:>12.4e} {:>6} {:>12.4e} {:>6} {:>12.4e} {:>6} {:>8.1f}\n", r.n, r.err.l1, order(r.order_l1),
               r.err.l2, order(r.order_l2), r.err.linf, order(r.order_linf), r.seconds);
  }
  return 0;
}

int cmd_riemann(const std::string& name, int cells, double cfl, const std::string& out) {
  const CaseConfig c = builtin_case(name);
  const Fv1dResult r = run_fv1d(c, cells, cfl);
  fmt::print("{}: {} cells, {} steps to t = {:.6g}\n", name, cells, r.steps, r.grid.t);
  if (r.l1_density >= 0.0) fmt::print("  L1 density error vs exact solution: {:.4e}\n", r.l1_density);
  if (!out.empty()) {
    const std::string path = (std::filesystem::path(out) / fmt::format("{}_fv{}.csv", name, cells)).string();
    write_csv(path, csv_rows(r.grid, c.species));
    fmt::print("  wrote {}\n", path);
  }
  return 0;
}

int cmd_verify() {
  const auto checks = verify_suite();
  bool ok = true;
  for (const CheckResult& c : checks) {
    fmt::print("{:<4} {:<48} {:>12.3e} (tol {:.1e})\n", c.pass ? "PASS" : "FAIL", c.name, c.value, c.tol);
    ok = ok && c.pass;
  }
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DGSEM solver for the multicomponent stiffened-gas model"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0: all cores, 1: serial)")->check(CLI::NonNegativeNumber);
  std::string log_level = "info";
  app.add_option("--log", log_level, "log level (debug, info, warn, error)");

  std::string config, out;
  std::optional<int> p_override;
  std::optional<std::string> flavor_override;
  std::optional<double> t_end_override, cfl_override;
  auto* run = app.add_subcommand("run", "run a case from a JSON configuration");
  run->add_option("config", config, "configuration file")->required();
  run->add_option("--out", out, "output directory");
  run->add_option("--p", p_override, "polynomial degree");
  run->add_option("--flavor", flavor_override, "volume fluctuations: cp or ec");
  run->add_option("--t-end", t_end_override, "final time");
  run->add_option("--cfl", cfl_override, "safety factor of the time step");

  std::string case_name;
  ConvergenceOptions conv;
  std::string conv_flavor = "cp";
  auto* convergence = app.add_subcommand("convergence", "h-refinement study on a case with a reference solution");
  convergence->add_option("case", case_name, "case name")->required();
  convergence->add_option("--p", conv.p, "polynomial degree");
  convergence->add_option("--meshes", conv.meshes, "mesh sizes")->delimiter(',');
  convergence->add_option("--flavor", conv_flavor, "volume fluctuations: cp or ec");
  convergence->add_option("--t-end", conv.t_end, "final time (default: case value)");
  convergence->add_option("--lambda-factor", conv.lambda_factor, "element wave-speed bound factor");

  int cells = 100;
  double cfl = 0.45;
  auto* riemann = app.add_subcommand("riemann", "three-point finite-volume scheme on a 1D case");
  riemann->add_option("case", case_name, "case name")->required();
  riemann->add_option("--cells", cells, "number of cells");
  riemann->add_option("--cfl", cfl, "CFL number (at most 0.5)");
  riemann->add_option("--out", out, "output directory");

  auto* verify = app.add_subcommand("verify", "operator, mesh and flux property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));
  std::unique_ptr<tbb::global_control> gc;
  if (threads > 0) gc = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism, threads);

  try {
    if (*run) return cmd_run(config, out, p_override, flavor_override, t_end_override, cfl_override);
    if (*convergence) {
      conv.flavor = flavor_from_string(conv_flavor);
      return cmd_convergence(case_name, conv);
    }
    if (*riemann) return cmd_riemann(case_name, cells, cfl, out);
    if (*verify) return cmd_verify();
  } catch (const ConfigError& e) {
    spdlog::error("configuration error: {}", e.what());
    return 2;
  } catch (const MeshError& e) {
    spdlog::error("mesh error: {}", e.what());
    return 2;
  } catch (const NumericalError& e) {
    spdlog::error("numerical failure: {}", e.what());
    return 3;
  }
  return 0;
}
