#include "sgdg/mesh.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "sgdg/errors.hpp"

namespace sgdg {

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::kInterior: return "interior";
    case BoundaryKind::kPeriodic: return "periodic";
    case BoundaryKind::kSupersonicInflow: return "supersonic-inflow";
    case BoundaryKind::kNonreflective: return "nonreflective";
    case BoundaryKind::kSymmetry: return "symmetry";
  }
  return "unknown";
}

BoundaryKind boundary_kind_from_string(const std::string& tag) {
  if (tag == "periodic") return BoundaryKind::kPeriodic;
  if (tag == "supersonic-inflow") return BoundaryKind::kSupersonicInflow;
  if (tag == "nonreflective") return BoundaryKind::kNonreflective;
  if (tag == "symmetry") return BoundaryKind::kSymmetry;
  throw ConfigError(fmt::format("unknown boundary tag '{}' (expected periodic, supersonic-inflow, nonreflective, symmetry)", tag));
}

int Mesh::face_node(int face, int k) const {
  if (dim == 1) return face == 0 ? p : 0;
  const int n = p + 1;
  switch (face) {
    case 0: return p + n * k;
    case 1: return k + n * p;
    case 2: return n * k;
    default: return k;
  }
}

Element build_metrics(std::vector<Vec2> geometry, const LobattoOperator& op, int elem_id) {
  const int n = op.n();
  const int p = op.p;
  if (static_cast<int>(geometry.size()) != n * n)
    throw MeshError(fmt::format("element {}: {} geometry nodes given, expected {}", elem_id, geometry.size(), n * n));
  Element e;
  e.x = std::move(geometry);
  const std::size_t np = e.x.size();
  e.jac.resize(np);
  e.jxi.resize(np);
  e.jeta.resize(np);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Vec2 dxi{0.0, 0.0}, deta{0.0, 0.0};
      for (int k = 0; k < n; ++k) {
        const Vec2& a = e.x[k + n * j];
        const Vec2& b = e.x[i + n * k];
        dxi[0] += op.D(i, k) * a[0];
        dxi[1] += op.D(i, k) * a[1];
        deta[0] += op.D(j, k) * b[0];
        deta[1] += op.D(j, k) * b[1];
      }
      const int q = i + n * j;
      const double J = dxi[0] * deta[1] - deta[0] * dxi[1];
      if (!(J > 0.0))
        throw MeshError(fmt::format("element {}: non-positive Jacobian {} at node ({}, {})", elem_id, J, i, j));
      e.jac[q] = J;
      e.jxi[q] = {deta[1], -deta[0]};
      e.jeta[q] = {-dxi[1], dxi[0]};
    }
  }
  e.volume = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) e.volume += op.weights[i] * op.weights[j] * e.jac[i + n * j];

  for (int f = 0; f < 4; ++f) {
    e.face_jac[f].resize(n);
    e.face_normal[f].resize(n);
    for (int k = 0; k < n; ++k) {
      Vec2 m;
      switch (f) {
        case 0: m = e.jxi[p + n * k]; break;
        case 1: m = e.jeta[k + n * p]; break;
        case 2: m = -1.0 * e.jxi[n * k]; break;
        default: m = -1.0 * e.jeta[k]; break;
      }
      const double len = norm(m);
      e.face_jac[f][k] = len;
      e.face_normal[f][k] = (1.0 / len) * m;
    }
  }
  return e;
}

Element build_segment(double a, double b, const LobattoOperator& op) {
  if (!(b > a)) throw MeshError(fmt::format("segment [{}, {}] has non-positive length", a, b));
  const int n = op.n();
  Element e;
  e.x.resize(n);
  e.jac.assign(n, 0.5 * (b - a));
  e.jxi.assign(n, Vec2{1.0, 0.0});
  e.jeta.assign(n, Vec2{0.0, 0.0});
  for (int i = 0; i < n; ++i) e.x[i] = {a + 0.5 * (op.nodes[i] + 1.0) * (b - a), 0.0};
  e.volume = b - a;
  e.face_jac[0] = {1.0};
  e.face_normal[0] = {Vec2{1.0, 0.0}};
  e.face_jac[1] = {1.0};
  e.face_normal[1] = {Vec2{-1.0, 0.0}};
  return e;
}

Vec2 normal_average(const Element& e, int p, RefDir dir, int i, int j, int k) {
  const int n = p + 1;
  if (dir == RefDir::kXi) return 0.5 * (e.jxi[i + n * j] + e.jxi[k + n * j]);
  return 0.5 * (e.jeta[i + n * j] + e.jeta[i + n * k]);
}

double metric_identity_residual(const Element& e, const LobattoOperator& op) {
  const int n = op.n();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Vec2 s{0.0, 0.0};
      for (int k = 0; k < n; ++k) {
        s = s + op.D(i, k) * e.jxi[k + n * j];
        s = s + op.D(j, k) * e.jeta[i + n * k];
      }
      worst = std::max({worst, std::abs(s[0]), std::abs(s[1])});
    }
  }
  return worst;
}

double averaged_normal_identity_residual(const Element& e, const LobattoOperator& op) {
  const int n = op.n();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Vec2 s{0.0, 0.0};
      for (int k = 0; k < n; ++k) {
        s = s + op.D(i, k) * normal_average(e, op.p, RefDir::kXi, i, j, k);
        s = s + op.D(j, k) * normal_average(e, op.p, RefDir::kEta, i, j, k);
      }
      worst = std::max({worst, std::abs(s[0]), std::abs(s[1])});
    }
  }
  return worst;
}

Mesh structured_mesh(const StructuredSpec& spec, const LobattoOperator& op) {
  if (spec.nx < 1 || spec.ny < 1) throw ConfigError(fmt::format("structured mesh needs nx, ny >= 1 (got {}x{})", spec.nx, spec.ny));
  if (!(spec.x1 > spec.x0) || !(spec.y1 > spec.y0)) throw ConfigError("structured mesh has an empty domain");
  if ((spec.left == BoundaryKind::kPeriodic) != (spec.right == BoundaryKind::kPeriodic) ||
      (spec.bottom == BoundaryKind::kPeriodic) != (spec.top == BoundaryKind::kPeriodic))
    throw ConfigError("periodic boundaries must be set on both sides of a pair");
  Mesh mesh;
  mesh.dim = 2;
  mesh.p = op.p;
  const int n = op.n();
  const double lx = spec.x1 - spec.x0, ly = spec.y1 - spec.y0;
  const double two_pi = 2.0 * std::numbers::pi;
  mesh.elements.reserve(static_cast<std::size_t>(spec.nx) * spec.ny);
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      std::vector<Vec2> geo(static_cast<std::size_t>(n) * n);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          const double s = (ix + 0.5 * (op.nodes[i] + 1.0)) / spec.nx;
          const double t = (iy + 0.5 * (op.nodes[j] + 1.0)) / spec.ny;
          const double bump = spec.warp * std::sin(two_pi * s) * std::sin(two_pi * t);
          geo[i + n * j] = {spec.x0 + lx * (s + bump), spec.y0 + ly * (t + bump)};
        }
      }
      const int id = ix + spec.nx * iy;
      Element e = build_metrics(std::move(geo), op, id);
      auto link_to = [&](int jx, int jy, int face, BoundaryKind side, bool wraps) {
        FaceLink l;
        if (!wraps) {
          l.elem = jx + spec.nx * jy;
          l.face = face;
          l.kind = BoundaryKind::kInterior;
        } else if (side == BoundaryKind::kPeriodic) {
          l.elem = ((jx + spec.nx) % spec.nx) + spec.nx * ((jy + spec.ny) % spec.ny);
          l.face = face;
          l.kind = BoundaryKind::kPeriodic;
        } else {
          l.kind = side;
        }
        return l;
      };
      e.link[0] = link_to(ix + 1, iy, 2, spec.right, ix == spec.nx - 1);
      e.link[1] = link_to(ix, iy + 1, 3, spec.top, iy == spec.ny - 1);
      e.link[2] = link_to(ix - 1, iy, 0, spec.left, ix == 0);
      e.link[3] = link_to(ix, iy - 1, 1, spec.bottom, iy == 0);
      mesh.elements.push_back(std::move(e));
    }
  }
  return mesh;
}

Mesh interval_mesh(int n, double a, double b, const LobattoOperator& op, BoundaryKind left, BoundaryKind right) {
  if (n < 1) throw ConfigError(fmt::format("interval mesh needs at least one element (got {})", n));
  if ((left == BoundaryKind::kPeriodic) != (right == BoundaryKind::kPeriodic))
    throw ConfigError("periodic boundaries must be set on both ends");
  Mesh mesh;
  mesh.dim = 1;
  mesh.p = op.p;
  mesh.elements.reserve(n);
  const double h = (b - a) / n;
  for (int e = 0; e < n; ++e) {
    const double xa = a + e * h;
    const double xb = (e == n - 1) ? b : a + (e + 1) * h;
    Element el = build_segment(xa, xb, op);
    FaceLink r, l;
    if (e < n - 1) {
      r = {e + 1, 1, false, BoundaryKind::kInterior};
    } else if (right == BoundaryKind::kPeriodic) {
      r = {0, 1, false, BoundaryKind::kPeriodic};
    } else {
      r.kind = right;
    }
    if (e > 0) {
      l = {e - 1, 0, false, BoundaryKind::kInterior};
    } else if (left == BoundaryKind::kPeriodic) {
      l = {n - 1, 0, false, BoundaryKind::kPeriodic};
    } else {
      l.kind = left;
    }
    el.link[0] = r;
    el.link[1] = l;
    mesh.elements.push_back(std::move(el));
  }
  return mesh;
}

namespace {

Vec2 face_point(const Mesh& mesh, int e, int f, int k) { return mesh.elements[e].x[mesh.face_node(f, k)]; }

}  // namespace

void validate_connectivity(const Mesh& mesh, double tol) {
  const int ne = static_cast<int>(mesh.elements.size());
  for (int e = 0; e < ne; ++e) {
    const Element& el = mesh.elements[e];
    for (int f = 0; f < mesh.faces_per_element(); ++f) {
      const FaceLink& l = el.link[f];
      if (l.elem < 0) {
        if (l.kind == BoundaryKind::kInterior || l.kind == BoundaryKind::kPeriodic)
          throw MeshError(fmt::format("element {} face {}: boundary face without a boundary tag", e, f));
        continue;
      }
      if (l.elem >= ne || l.face < 0 || l.face >= mesh.faces_per_element())
        throw MeshError(fmt::format("element {} face {}: link to invalid element/face", e, f));
      const FaceLink& back = mesh.elements[l.elem].link[l.face];
      if (back.elem != e || back.face != f || back.reversed != l.reversed)
        throw MeshError(fmt::format("element {} face {}: face link is not symmetric", e, f));
      const Element& nb = mesh.elements[l.elem];
      Vec2 shift{0.0, 0.0};
      for (int k = 0; k < mesh.face_nodes(); ++k) {
        const int kn = mesh.neighbour_face_node(l, k);
        const Vec2 d = face_point(mesh, l.elem, l.face, kn) - face_point(mesh, e, f, k);
        if (k == 0) shift = d;
        const Vec2 off = (l.kind == BoundaryKind::kPeriodic) ? d - shift : d;
        if (norm(off) > tol)
          throw MeshError(fmt::format("element {} face {} node {}: face points do not match neighbour {} (gap {})",
                                      e, f, k, l.elem, norm(off)));
        const Vec2 nsum = el.face_normal[f][k] + nb.face_normal[l.face][kn];
        if (norm(nsum) > tol)
          throw MeshError(fmt::format("element {} face {} node {}: normals are not opposite", e, f, k));
      }
    }
  }
}

Mesh read_mesh(const std::string& path, const LobattoOperator& op) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open mesh file '{}'", path));
  std::string magic;
  int dim = 0, p = 0;
  in >> magic >> dim >> p;
  if (!in || magic != "dgmesh" || dim != 2)
    throw MeshError(fmt::format("{}: expected header 'dgmesh 2 <p>'", path));
  if (p != op.p)
    throw MeshError(fmt::format("{}: geometry degree {} differs from solution degree {}", path, p, op.p));
  long ne = 0;
  in >> ne;
  if (!in || ne < 1) throw MeshError(fmt::format("{}: bad element count", path));
  const int n = op.n();
  Mesh mesh;
  mesh.dim = 2;
  mesh.p = p;
  mesh.elements.reserve(ne);
  for (long e = 0; e < ne; ++e) {
    std::vector<Vec2> geo(static_cast<std::size_t>(n) * n);
    for (auto& x : geo) {
      in >> x[0] >> x[1];
      if (!in) throw MeshError(fmt::format("{}: truncated node list in element {}", path, e));
    }
    mesh.elements.push_back(build_metrics(std::move(geo), op, static_cast<int>(e)));
    for (auto& l : mesh.elements.back().link) l = FaceLink{-1, -1, false, BoundaryKind::kInterior};
  }
  long nf = 0;
  in >> nf;
  if (!in || nf < 0) throw MeshError(fmt::format("{}: bad face count", path));
  std::string line;
  std::getline(in, line);
  for (long f = 0; f < nf; ++f) {
    if (!std::getline(in, line)) throw MeshError(fmt::format("{}: truncated face list", path));
    std::istringstream ls(line);
    long el = 0, fl = 0, er = 0;
    ls >> el >> fl >> er;
    if (!ls || el < 0 || el >= ne || fl < 0 || fl > 3)
      throw MeshError(fmt::format("{}: malformed face line '{}'", path, line));
    FaceLink& a = mesh.elements[el].link[fl];
    if (er < 0) {
      std::string tag;
      ls >> tag;
      const BoundaryKind kind = boundary_kind_from_string(tag);
      if (kind == BoundaryKind::kPeriodic) throw MeshError(fmt::format("{}: periodic faces must name their partner", path));
      a = FaceLink{-1, -1, false, kind};
      continue;
    }
    long fr = 0, orient = 0;
    ls >> fr >> orient;
    if (!ls || er >= ne || fr < 0 || fr > 3 || (orient != 0 && orient != 1))
      throw MeshError(fmt::format("{}: malformed face line '{}'", path, line));
    std::string tag;
    ls >> tag;
    const BoundaryKind kind = (tag == "periodic") ? BoundaryKind::kPeriodic : BoundaryKind::kInterior;
    a = FaceLink{static_cast<int>(er), static_cast<int>(fr), orient == 1, kind};
    mesh.elements[er].link[fr] = FaceLink{static_cast<int>(el), static_cast<int>(fl), orient == 1, kind};
  }
  for (std::size_t e = 0; e < mesh.elements.size(); ++e)
    for (int f = 0; f < 4; ++f)
      if (mesh.elements[e].link[f].elem < 0 && mesh.elements[e].link[f].kind == BoundaryKind::kInterior)
        throw MeshError(fmt::format("{}: element {} face {} is not listed", path, e, f));
  validate_connectivity(mesh);
  return mesh;
}

void write_mesh(const Mesh& mesh, const std::string& path) {
  if (mesh.dim != 2) throw ConfigError("only two-dimensional meshes can be written");
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write mesh file '{}'", path));
  out << "dgmesh 2 " << mesh.p << '\n' << mesh.elements.size() << '\n';
  out.precision(17);
  for (const Element& e : mesh.elements)
    for (const Vec2& x : e.x) out << x[0] << ' ' << x[1] << '\n';
  std::vector<std::string> lines;
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    for (int f = 0; f < 4; ++f) {
      const FaceLink& l = mesh.elements[e].link[f];
      if (l.elem < 0) {
        lines.push_back(fmt::format("{} {} -1 {}", e, f, to_string(l.kind)));
      } else if (static_cast<std::size_t>(l.elem) > e || (static_cast<std::size_t>(l.elem) == e && l.face > f)) {
        lines.push_back(fmt::format("{} {} {} {} {}{}", e, f, l.elem, l.face, l.reversed ? 1 : 0,
                                    l.kind == BoundaryKind::kPeriodic ? " periodic" : ""));
      }
    }
  }
  out << lines.size() << '\n';
  for (const auto& s : lines) out << s << '\n';
}

}  // namespace sgdg
