#pragma once

// Test-only generators and independent oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "courant/geometry.hpp"
#include "courant/raster.hpp"

namespace testsupport {

using courant::RasterDomain;

/// Unit-spaced raster from a 0/1 picture given as rows from y = 0 upward,
/// with a border of outside cells added.
inline RasterDomain picture(const std::vector<std::vector<int>>& rows, double h = 1.0) {
  const int ny = static_cast<int>(rows.size()) + 2;
  const int nx = static_cast<int>(rows.front().size()) + 2;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(nx) * ny, 0);
  for (int j = 0; j < ny - 2; ++j)
    for (int i = 0; i < nx - 2; ++i) mask[(j + 1) * nx + (i + 1)] = rows[j][i] ? 1 : 0;
  return RasterDomain(2, h, {-h, -h, 0.0}, {nx, ny, 1}, std::move(mask));
}

/// Connected polyomino of `cells` cells grown from the centre of a side x side
/// box by random face-adjacent accretion.
inline RasterDomain random_polyomino(std::mt19937_64& rng, int side, int cells, double h) {
  const int n = side + 2;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::pair<int, int>> grown{{n / 2, n / 2}};
  mask[(n / 2) * n + n / 2] = 1;
  const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
  while (static_cast<int>(grown.size()) < cells) {
    const auto [i, j] = grown[std::uniform_int_distribution<std::size_t>(0, grown.size() - 1)(rng)];
    const int t = std::uniform_int_distribution<int>(0, 3)(rng);
    const int a = i + di[t], b = j + dj[t];
    if (a < 1 || b < 1 || a > n - 2 || b > n - 2 || mask[b * n + a]) continue;
    mask[b * n + a] = 1;
    grown.emplace_back(a, b);
  }
  return RasterDomain(2, h, {0.0, 0.0, 0.0}, {n, n, 1}, std::move(mask));
}

/// Random 3-D raster of independent cells (interior only).
inline RasterDomain random_voxels(std::mt19937_64& rng, int n, double fill) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n * n, 0);
  std::bernoulli_distribution in(fill);
  for (int k = 1; k < n - 1; ++k)
    for (int j = 1; j < n - 1; ++j)
      for (int i = 1; i < n - 1; ++i) mask[(k * n + j) * n + i] = in(rng) ? 1 : 0;
  mask[((n / 2) * n + n / 2) * n + n / 2] = 1;
  return RasterDomain(3, 1.0, {0.0, 0.0, 0.0}, {n, n, n}, std::move(mask));
}

/// Convex polygon: vertices at sorted random angles on an ellipse.
inline courant::ConvexPolygon random_convex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = 3 + static_cast<int>(u(rng) * 8);
  std::vector<double> angle(k);
  for (double& a : angle) a = 2.0 * std::numbers::pi * u(rng);
  std::sort(angle.begin(), angle.end());
  const double ax = 0.5 + u(rng), ay = 0.5 + u(rng), cx = u(rng), cy = u(rng);
  std::vector<courant::Point2> pts;
  for (int i = 0; i < k; ++i) {
    if (i > 0 && angle[i] - angle[i - 1] < 0.05) continue;
    pts.push_back({cx + ax * std::cos(angle[i]), cy + ay * std::sin(angle[i])});
  }
  if (pts.size() < 3 || angle.front() + 2.0 * std::numbers::pi - angle.back() < 0.05) return random_convex(rng);
  return courant::ConvexPolygon(pts);
}

/// #{k in N^m : |k|^2 < r2} by nested loops; no shared code with the library.
inline std::uint64_t brute_lattice(int m, double r2, int depth = 0, double used = 0.0) {
  if (depth == m) return used < r2 ? 1 : 0;
  std::uint64_t total = 0;
  for (int k = 1; used + double(k) * k < r2; ++k) total += brute_lattice(m, r2, depth + 1, used + double(k) * k);
  return total;
}

/// Continuum square eigenvalues pi^2 (p^2 + q^2) for p, q >= 1, sorted.
inline std::vector<double> square_spectrum(double a, double b, int count) {
  std::vector<double> v;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (int p = 1; p <= 60; ++p)
    for (int q = 1; q <= 60; ++q) v.push_back(pi2 * (p * p / (a * a) + q * q / (b * b)));
  std::sort(v.begin(), v.end());
  v.resize(count);
  return v;
}

/// Ascending series for J_nu(x) in long double.
inline long double bessel_series(long double nu, long double x) {
  long double term = std::pow(x / 2, nu) / std::tgamma(nu + 1), sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -(x / 2) * (x / 2) / (k * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-30L) break;
  }
  return sum;
}

}  // namespace testsupport
