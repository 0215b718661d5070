#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgdg/cases.hpp"
#include "sgdg/fv1d.hpp"
#include "sgdg/solver.hpp"
#include "sgdg/timestep.hpp"

namespace sgdg {

// Builds mesh, operator and discretization of a case (mesh file, structured
// grid or interval) and checks the mesh connectivity.
Discretization build_discretization(const CaseConfig& c);
Field initial_field(const Discretization& d, const CaseConfig& c);
StepOptions step_options(const CaseConfig& c);

// Reads a JSON case description: either {"case": name, ...overrides} or an
// explicit piecewise 1D problem. See README for the schema.
CaseConfig case_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
CaseConfig case_from_file(const std::string& path);

struct RunOptions {
  std::string out_dir;  // empty: no files written
  // Called after every accepted step with the new state.
  std::function<void(const Discretization&, const Field&, double t, const StepReport&)> on_step;
  int max_steps = -1;
  bool log_progress = true;
};

struct RunSummary {
  std::string name;
  int steps = 0;
  int steps_bound_b = 0;
  double t_final = 0.0;
  double wall_seconds = 0.0;
  State initial_integral{}, final_integral{};
  State drift{};  // |final - initial| / max(1, |initial|) per variable
  LimiterReport limiter_totals;
  std::vector<std::pair<std::string, double>> audit;
  bool aborted = false;
  std::string error;
  std::vector<std::string> files;
};

struct RunResult {
  Discretization disc;
  Field u;
  RunSummary summary;
};

// Time loop to c.t_end hitting the final time exactly. Numerical failures
// are rethrown after writing the last good state as a checkpoint.
RunResult run_case(const CaseConfig& c, const RunOptions& opt = {});

struct ErrorReport {
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

// Broken quadrature norms of value(u) - value(reference) over the mesh.
ErrorReport error_norms(const Discretization& d, const Field& u, const std::function<double(const Vec2&)>& reference,
                        const std::function<double(const State&)>& value);
ErrorReport density_error(const Discretization& d, const Field& u, const ReferenceSampler& exact, double t);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  ErrorReport err;
  double order_l1 = 0.0, order_l2 = 0.0, order_linf = 0.0;  // 0 on the first row
  double seconds = 0.0;
};

struct ConvergenceOptions {
  int p = 3;
  Flavor flavor = Flavor::kCP;
  std::vector<int> meshes{8, 16, 32, 64};
  double t_end = -1.0;  // < 0: case default
  double safety = 0.9;
  double lambda_factor = -1.0;  // < 0: case default
};

std::vector<ConvergenceRow> convergence_study(const std::string& case_name, const ConvergenceOptions& opt);

struct Fv1dResult {
  Fv1dGrid grid;
  int steps = 0;
  double l1_density = -1.0;  // < 0 when no reference exists
};

Fv1dGrid fv1d_initial(const CaseConfig& c, int cells);
// Three-point scheme on c's domain to c.t_end at the given CFL number. The
// callback sees the grid before and after every step.
Fv1dResult run_fv1d(const CaseConfig& c, int cells, double cfl,
                    const std::function<void(const Fv1dGrid&, const Fv1dGrid&)>& on_step = {});

}  // namespace sgdg
