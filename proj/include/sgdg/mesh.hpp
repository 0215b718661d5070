#pragma once

#include <array>
#include <string>
#include <vector>

#include "sgdg/ops1d.hpp"
#include "sgdg/state.hpp"

namespace sgdg {

enum class BoundaryKind { kInterior, kPeriodic, kSupersonicInflow, kNonreflective, kSymmetry };

const char* to_string(BoundaryKind kind);
BoundaryKind boundary_kind_from_string(const std::string& tag);

// Connection of one element face. elem < 0 marks a physical boundary.
struct FaceLink {
  int elem = -1;
  int face = -1;
  bool reversed = false;
  BoundaryKind kind = BoundaryKind::kNonreflective;
};

// Curved quadrilateral (or segment) with collocated geometry and metric terms.
// Nodes are indexed i + (p+1) j. Faces are numbered counterclockwise from
// xi = +1: 0 (xi=+1), 1 (eta=+1), 2 (xi=-1), 3 (eta=-1); in 1D face 0 is the
// right end and face 1 the left end. Face node k runs along increasing
// reference coordinate of the face.
struct Element {
  std::vector<Vec2> x;
  std::vector<double> jac;
  std::vector<Vec2> jxi;   // J grad(xi)
  std::vector<Vec2> jeta;  // J grad(eta), zero in 1D
  std::array<FaceLink, 4> link{};
  std::array<std::vector<double>, 4> face_jac{};
  std::array<std::vector<Vec2>, 4> face_normal{};
  double volume = 0.0;
};

struct Mesh {
  int dim = 2;
  int p = 1;
  std::vector<Element> elements;

  int n1() const { return p + 1; }
  int nodes_per_element() const { return dim == 1 ? p + 1 : (p + 1) * (p + 1); }
  int faces_per_element() const { return dim == 1 ? 2 : 4; }
  int face_nodes() const { return dim == 1 ? 1 : p + 1; }
  std::size_t n_dofs() const { return elements.size() * static_cast<std::size_t>(nodes_per_element()); }

  // Local node of face node k.
  int face_node(int face, int k) const;
  // Face node of the neighbour matching face node k of this face.
  int neighbour_face_node(const FaceLink& link, int k) const { return link.reversed ? p - k : k; }
};

Element build_metrics(std::vector<Vec2> geometry, const LobattoOperator& op, int elem_id = -1);
Element build_segment(double a, double b, const LobattoOperator& op);

enum class RefDir { kXi, kEta };

// Averaged contravariant vector between nodes (i,j) and (k,j) for kXi, or
// (i,j) and (i,k) for kEta.
Vec2 normal_average(const Element& e, int p, RefDir dir, int i, int j, int k);

// Largest |sum_k D_ik Jxi^kj + D_jk Jeta^ik| over the element's nodes.
double metric_identity_residual(const Element& e, const LobattoOperator& op);
// Same, using the averaged normals.
double averaged_normal_identity_residual(const Element& e, const LobattoOperator& op);

struct StructuredSpec {
  int nx = 4;
  int ny = 4;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  double warp = 0.0;
  // Boundary kinds of the left, right, bottom and top sides. Periodic must
  // be set on both sides of a pair.
  BoundaryKind left = BoundaryKind::kPeriodic;
  BoundaryKind right = BoundaryKind::kPeriodic;
  BoundaryKind bottom = BoundaryKind::kPeriodic;
  BoundaryKind top = BoundaryKind::kPeriodic;
};

Mesh structured_mesh(const StructuredSpec& spec, const LobattoOperator& op);
Mesh interval_mesh(int n, double a, double b, const LobattoOperator& op,
                   BoundaryKind left = BoundaryKind::kNonreflective,
                   BoundaryKind right = BoundaryKind::kNonreflective);

Mesh read_mesh(const std::string& path, const LobattoOperator& op);
void write_mesh(const Mesh& mesh, const std::string& path);

// Checks face links: symmetric pairing, coincident (or translated, for
// periodic pairs) face points within tol and opposite normals.
void validate_connectivity(const Mesh& mesh, double tol = 1e-10);

}  // namespace sgdg
