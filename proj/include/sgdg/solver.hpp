#pragma once

#include <vector>

#include "sgdg/fluctuations.hpp"
#include "sgdg/mesh.hpp"
#include "sgdg/ops1d.hpp"
#include "sgdg/riemann.hpp"
#include "sgdg/state.hpp"

namespace sgdg {

// Nodal values, element-major: index e * nodes_per_element + node.
using Field = std::vector<State>;

// Interface fluctuations. kEc replaces HLLC by the entropy conservative
// two-point fluctuations; only meant for entropy diagnostics.
enum class FaceFlux { kHllc, kEc };

struct Discretization {
  Mesh mesh;
  LobattoOperator op;
  Flavor flavor = Flavor::kCP;
  FaceFlux face_flux = FaceFlux::kHllc;
  State inflow{};  // far-field state of supersonic-inflow faces

  Discretization() = default;
  Discretization(Mesh m, LobattoOperator o, Flavor f) : mesh(std::move(m)), op(std::move(o)), flavor(f) {}

  std::size_t index(int e, int node) const {
    return static_cast<std::size_t>(e) * mesh.nodes_per_element() + node;
  }
  // Quadrature mass omega_i omega_j J of a node (omega_i J in 1D).
  double node_mass(int e, int node) const;
  // Quadrature weight of face node k (1 in 1D).
  double face_weight(int k) const { return mesh.dim == 1 ? 1.0 : op.weights[k]; }
};

// Trace seen from outside face f of element e at face node k: neighbour
// value or boundary ghost state.
State exterior_trace(const Discretization& d, const Field& u, int e, int f, int k);

// Interface fluctuations between interior trace um and exterior trace up.
FluctuationPair face_fluctuations(const Discretization& d, const State& um, const State& up, const Vec2& n);

// R such that omega_i omega_j J dU/dt = -R. Element-parallel.
void residual(const Discretization& d, const Field& u, Field& r);
Field residual(const Discretization& d, const Field& u);

// dU/dt = -R / (omega omega J).
void time_derivative(const Discretization& d, const Field& u, Field& dudt);

State cell_average(const Discretization& d, const Field& u, int e);
std::vector<State> cell_averages(const Discretization& d, const Field& u);

// Sum over the mesh of the quadrature integral of each variable.
State integral(const Discretization& d, const Field& u);

struct EntropyBalance {
  std::vector<double> rate;       // |kappa| d<eta>/dt per element
  std::vector<double> face_flux;  // sum over faces of omega_k J_e Q per element
  double total_rate = 0.0;
  double boundary_flux = 0.0;  // entropy flux through physical boundary faces
  // rate + face_flux per element; non-positive for entropy stable faces.
  double max_production = 0.0;
};

// Entropy budget of a pure-phase field (Gamma, Pi uniform) with heat capacity cv.
EntropyBalance entropy_balance(const Discretization& d, const Field& u, double cv);

// Quadrature integral of eta = -rho s over the mesh.
double total_entropy(const Discretization& d, const Field& u, double cv);

}  // namespace sgdg
