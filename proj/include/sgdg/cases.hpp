#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgdg/fluctuations.hpp"
#include "sgdg/mesh.hpp"
#include "sgdg/state.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

using InitialSampler = std::function<State(const Vec2& x)>;
using ReferenceSampler = std::function<State(const Vec2& x, double t)>;

// Constant state of one 1D region: alpha1 is the volume fraction of the
// first species of a two-species table.
struct RegionState {
  double alpha1 = 1.0;
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

// Piecewise-constant 1D data: state i holds on [breaks[i-1], breaks[i]].
struct RiemannData {
  std::vector<double> breaks;
  std::vector<RegionState> states;
};

struct CaseConfig {
  std::string name;
  int dim = 1;

  // 1D mesh
  int elements = 100;
  double x0 = -0.5, x1 = 0.5;
  BoundaryKind left = BoundaryKind::kNonreflective;
  BoundaryKind right = BoundaryKind::kNonreflective;
  // 2D mesh: structured parameters, or a mesh file when mesh_file is set
  StructuredSpec grid;
  std::string mesh_file;

  int p = 3;
  Flavor flavor = Flavor::kCP;
  double safety = 0.9;
  double lambda_factor = 1.5;
  std::optional<double> fixed_dt;
  double t_end = 1.0;
  double output_every = 0.0;  // 0: final state only
  SpeciesTable species;
  double eps = 1e-8;
  bool limiter = true;
  bool limiter_componentwise = false;
  State inflow{};

  InitialSampler initial;
  ReferenceSampler exact;  // empty when no reference is known
  std::optional<RiemannData> riemann;
  // Derived constants (shock states, densities) reported in run summaries.
  std::vector<std::pair<std::string, double>> audit;
};

const std::vector<std::string>& builtin_case_names();
CaseConfig builtin_case(const std::string& name);

// Conserved state of a two-species mixture from (alpha1, rho, v, p).
State mixture_state(const SpeciesTable& species, double alpha1, double rho, const Vec2& v, double p);

// Installs initial and reference samplers for piecewise data (two or three
// states) on a 1D case.
void set_riemann_data(CaseConfig& c, RiemannData data);

}  // namespace sgdg
