#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace sgdg {

// Conserved variables at one collocation point. Storage is always the
// two-dimensional layout; one-dimensional runs keep the y momentum at zero.
inline constexpr int kNeq = 6;
inline constexpr int kRho = 0;
inline constexpr int kMomX = 1;
inline constexpr int kMomY = 2;
inline constexpr int kRhoE = 3;
inline constexpr int kGamma = 4;
inline constexpr int kPi = 5;

using State = std::array<double, kNeq>;
using Vec2 = std::array<double, 2>;

inline State& operator+=(State& a, const State& b) {
  for (int v = 0; v < kNeq; ++v) a[v] += b[v];
  return a;
}
inline State& operator-=(State& a, const State& b) {
  for (int v = 0; v < kNeq; ++v) a[v] -= b[v];
  return a;
}
inline State& operator*=(State& a, double s) {
  for (int v = 0; v < kNeq; ++v) a[v] *= s;
  return a;
}
inline State operator+(State a, const State& b) { return a += b; }
inline State operator-(State a, const State& b) { return a -= b; }
inline State operator*(double s, State a) { return a *= s; }
inline State operator*(State a, double s) { return a *= s; }

inline double dot(const State& a, const State& b) {
  double r = 0.0;
  for (int v = 0; v < kNeq; ++v) r += a[v] * b[v];
  return r;
}

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }

inline double max_abs(const State& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace sgdg
