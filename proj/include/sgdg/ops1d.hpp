#pragma once

#include <span>
#include <utility>
#include <vector>

namespace sgdg {

// Gauss-Lobatto collocation operator on [-1, 1].
struct LobattoOperator {
  int p = 1;
  std::vector<double> nodes;    // p+1, ascending
  std::vector<double> weights;  // p+1
  std::vector<double> dmat;     // (p+1)^2 row-major, dmat[k*(p+1)+l] = l_l'(xi_k)

  int n() const { return p + 1; }
  double D(int k, int l) const { return dmat[k * (p + 1) + l]; }
};

inline constexpr int kMaxDegree = 10;

// Legendre polynomial L_p and its derivative at x.
std::pair<double, double> legendre(int p, double x);

LobattoOperator lobatto_operator(int p);

// Lagrange interpolation of nodal values at xi in [-1, 1].
double interpolate(const LobattoOperator& op, std::span<const double> values, double xi);

// Values of the p+1 Lagrange basis functions at xi.
std::vector<double> lagrange_basis(const LobattoOperator& op, double xi);

}  // namespace sgdg
