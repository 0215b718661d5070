#include "sgdg/output.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/os.h>

#include "sgdg/errors.hpp"

namespace sgdg {

namespace {

double nearest_cv(double Gamma, const SpeciesTable& species) {
  double best = species[0].cv, dist = HUGE_VAL;
  for (const Species& s : species.species()) {
    const double d = std::abs(1.0 / (s.gamma - 1.0) - Gamma);
    if (d < dist) {
      dist = d;
      best = s.cv;
    }
  }
  return best;
}

CsvRow row_of(double x, const State& s, const SpeciesTable& species) {
  const Primitive w = to_primitive(s);
  return {x, w.rho, w.vel[0], w.p, w.Gamma, w.Pi, specific_entropy(s, nearest_cv(w.Gamma, species))};
}

void ensure_parent(const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

std::vector<CsvRow> csv_rows(const Discretization& d, const Field& u, const SpeciesTable& species) {
  std::vector<CsvRow> rows;
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  rows.reserve(u.size());
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) rows.push_back(row_of(d.mesh.elements[e].x[a][0], u[d.index(e, a)], species));
  return rows;
}

std::vector<CsvRow> csv_rows(const Fv1dGrid& g, const SpeciesTable& species) {
  std::vector<CsvRow> rows;
  rows.reserve(g.cells.size());
  for (std::size_t j = 0; j < g.cells.size(); ++j) rows.push_back(row_of(g.center(j), g.cells[j], species));
  return rows;
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  ensure_parent(path);
  auto out = fmt::output_file(path);
  out.print("x,rho,u,p,Gamma,Pi,s\n");
  for (const CsvRow& r : rows)
    out.print("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.x, r.rho, r.u, r.p, r.Gamma, r.Pi, r.s);
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open {}", path));
  std::string line;
  std::getline(in, line);
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    CsvRow r{};
    if (!(ss >> r.x >> r.rho >> r.u >> r.p >> r.Gamma >> r.Pi >> r.s))
      throw ConfigError(fmt::format("{}: malformed row '{}'", path, line));
    rows.push_back(r);
  }
  return rows;
}

void write_vtk(const std::string& path, const Discretization& d, const Field& u, const SpeciesTable& species) {
  const Mesh& m = d.mesh;
  if (m.dim != 2) throw ConfigError("VTK output is only written for 2D meshes");
  const int ne = static_cast<int>(m.elements.size());
  const int n1 = m.n1();
  const int nn = m.nodes_per_element();
  const LobattoOperator& op = d.op;

  std::vector<double> grad(u.size());
  for (int e = 0; e < ne; ++e) {
    const Element& el = m.elements[e];
    for (int j = 0; j < n1; ++j) {
      for (int i = 0; i < n1; ++i) {
        double dxi = 0.0, deta = 0.0;
        for (int k = 0; k < n1; ++k) {
          dxi += op.D(i, k) * u[d.index(e, k + n1 * j)][kRho];
          deta += op.D(j, k) * u[d.index(e, i + n1 * k)][kRho];
        }
        const int a = i + n1 * j;
        const Vec2 g = (1.0 / el.jac[a]) * (dxi * el.jxi[a] + deta * el.jeta[a]);
        grad[d.index(e, a)] = norm(g);
      }
    }
  }
  const double gmax = std::max(*std::max_element(grad.begin(), grad.end()), 1e-300);

  ensure_parent(path);
  auto out = fmt::output_file(path);
  out.print("# vtk DataFile Version 3.0\nsgdg solution\nASCII\nDATASET UNSTRUCTURED_GRID\n");
  out.print("POINTS {} double\n", u.size());
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) out.print("{:.12g} {:.12g} 0\n", m.elements[e].x[a][0], m.elements[e].x[a][1]);
  const std::size_t ncells = static_cast<std::size_t>(ne) * m.p * m.p;
  out.print("CELLS {} {}\n", ncells, 5 * ncells);
  for (int e = 0; e < ne; ++e)
    for (int j = 0; j < m.p; ++j)
      for (int i = 0; i < m.p; ++i) {
        const std::size_t b = d.index(e, i + n1 * j);
        out.print("4 {} {} {} {}\n", b, b + 1, b + 1 + n1, b + n1);
      }
  out.print("CELL_TYPES {}\n", ncells);
  for (std::size_t c = 0; c < ncells; ++c) out.print("9\n");

  out.print("POINT_DATA {}\n", u.size());
  auto scalar = [&](const char* name, auto&& f) {
    out.print("SCALARS {} double 1\nLOOKUP_TABLE default\n", name);
    for (std::size_t i = 0; i < u.size(); ++i) out.print("{:.12g}\n", f(i));
  };
  scalar("rho", [&](std::size_t i) { return u[i][kRho]; });
  scalar("p", [&](std::size_t i) { return pressure_unchecked(u[i]); });
  scalar("Gamma", [&](std::size_t i) { return u[i][kGamma]; });
  scalar("Pi", [&](std::size_t i) { return u[i][kPi]; });
  scalar("alpha1", [&](std::size_t i) { return first_fraction_from_gamma(u[i][kGamma], species); });
  scalar("schlieren", [&](std::size_t i) { return std::exp(grad[i] / gmax); });
  out.print("VECTORS velocity double\n");
  for (const State& s : u) {
    const Vec2 v = velocity(s);
    out.print("{:.12g} {:.12g} 0\n", v[0], v[1]);
  }
}

void write_checkpoint(const std::string& path, const Discretization& d, const Field& u, double t) {
  ensure_parent(path);
  auto out = fmt::output_file(path);
  out.print("# t = {:.17g}, {} elements, {} nodes per element\n", t, d.mesh.elements.size(), d.mesh.nodes_per_element());
  out.print("# x y rho rho_u rho_v rho_E Gamma Pi\n");
  const int ne = static_cast<int>(d.mesh.elements.size());
  const int nn = d.mesh.nodes_per_element();
  for (int e = 0; e < ne; ++e)
    for (int a = 0; a < nn; ++a) {
      const State& s = u[d.index(e, a)];
      const Vec2& x = d.mesh.elements[e].x[a];
      out.print("{:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n", x[0], x[1], s[0], s[1], s[2], s[3],
                s[4], s[5]);
    }
}

}  // namespace sgdg
