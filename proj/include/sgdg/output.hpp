#pragma once

#include <string>
#include <vector>

#include "sgdg/fv1d.hpp"
#include "sgdg/solver.hpp"
#include "sgdg/thermo.hpp"

namespace sgdg {

// One row per node (or cell): x, rho, u, p, Gamma, Pi, s. The entropy column
// uses the cv of the species whose Gamma is nearest to the node's.
struct CsvRow {
  double x, rho, u, p, Gamma, Pi, s;
};

std::vector<CsvRow> csv_rows(const Discretization& d, const Field& u, const SpeciesTable& species);
std::vector<CsvRow> csv_rows(const Fv1dGrid& g, const SpeciesTable& species);
void write_csv(const std::string& path, const std::vector<CsvRow>& rows);
std::vector<CsvRow> read_csv(const std::string& path);

// Legacy ASCII VTK unstructured grid of quadrilateral sub-cells with point
// data rho, velocity, p, Gamma, Pi, alpha1 and the numerical Schlieren
// exp(|grad rho| / max |grad rho|).
void write_vtk(const std::string& path, const Discretization& d, const Field& u, const SpeciesTable& species);

// Raw conserved DOFs, one line per node, full precision.
void write_checkpoint(const std::string& path, const Discretization& d, const Field& u, double t);

}  // namespace sgdg
