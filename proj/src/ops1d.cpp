#include "sgdg/ops1d.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sgdg/errors.hpp"

namespace sgdg {

std::pair<double, double> legendre(int p, double x) {
  if (p == 0) return {1.0, 0.0};
  double l0 = 1.0, l1 = x;
  for (int k = 2; k <= p; ++k) {
    const double l2 = ((2.0 * k - 1.0) * x * l1 - (k - 1.0) * l0) / k;
    l0 = l1;
    l1 = l2;
  }
  // Derivative from p (L_{p-1} - x L_p) / (1 - x^2), with the endpoint limit.
  double dl;
  if (std::abs(x) == 1.0)
    dl = std::pow(x, p + 1) * 0.5 * p * (p + 1.0);
  else
    dl = p * (l0 - x * l1) / (1.0 - x * x);
  return {l1, dl};
}

namespace {

std::vector<double> barycentric_weights(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      if (m != l) w[l] /= (x[l] - x[m]);
  return w;
}

}  // namespace

LobattoOperator lobatto_operator(int p) {
  if (p < 1 || p > kMaxDegree)
    throw ConfigError(fmt::format("polynomial degree {} outside supported range 1..{}", p, kMaxDegree));
  LobattoOperator op;
  op.p = p;
  const int n = p + 1;
  op.nodes.assign(n, 0.0);
  op.nodes[0] = -1.0;
  op.nodes[p] = 1.0;
  // Interior nodes are the roots of (1-x^2) L_p'(x); its derivative is -p(p+1) L_p.
  for (int k = 1; k < p; ++k) {
    double x = -std::cos(std::numbers::pi * k / p);
    for (int it = 0; it < 100; ++it) {
      const auto [l, dl] = legendre(p, x);
      const double dx = (1.0 - x * x) * dl / (p * (p + 1.0) * l);
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    op.nodes[k] = x;
  }
  std::vector<double> sym(op.nodes);
  for (int k = 0; k < n; ++k) sym[k] = 0.5 * (op.nodes[k] - op.nodes[p - k]);
  op.nodes = sym;

  op.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double l = legendre(p, op.nodes[k]).first;
    op.weights[k] = 2.0 / (p * (p + 1.0) * l * l);
  }

  const std::vector<double> bw = barycentric_weights(op.nodes);
  op.dmat.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    double diag = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      const double d = bw[l] / bw[k] / (op.nodes[k] - op.nodes[l]);
      op.dmat[k * n + l] = d;
      diag -= d;
    }
    op.dmat[k * n + k] = diag;
  }
  return op;
}

std::vector<double> lagrange_basis(const LobattoOperator& op, double xi) {
  const int n = op.n();
  std::vector<double> phi(n, 0.0);
  for (int k = 0; k < n; ++k) {
    if (xi == op.nodes[k]) {
      phi[k] = 1.0;
      return phi;
    }
  }
  for (int k = 0; k < n; ++k) {
    double v = 1.0;
    for (int m = 0; m < n; ++m)
      if (m != k) v *= (xi - op.nodes[m]) / (op.nodes[k] - op.nodes[m]);
    phi[k] = v;
  }
  return phi;
}

double interpolate(const LobattoOperator& op, std::span<const double> values, double xi) {
  const std::vector<double> phi = lagrange_basis(op, xi);
  double r = 0.0;
  for (int k = 0; k < op.n(); ++k) r += phi[k] * values[k];
  return r;
}

}  // namespace sgdg
