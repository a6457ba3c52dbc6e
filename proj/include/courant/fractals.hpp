#pragma once

// The square snowflake K (ratio 1/3, measure 2) and the cube fractal D_s,
// as exact lists of squares/cubes plus the closed-form bounds on mu,
// the critical width and the Courant-sharp count that they admit.

#include <array>
#include <cstdint>
#include <vector>

#include "courant/raster.hpp"

namespace courant {

inline constexpr int kMaxSnowflakeGenerations = 8;
inline constexpr int kMaxCubeGenerations = 4;

struct FractalSquare {
  std::array<double, 2> center{};
  double side = 0.0;
  int generation = 0;
  // Integer box in units of 3^-J (J = generations of the owning spec).
  std::array<std::int64_t, 2> lo{};
  std::array<std::int64_t, 2> hi{};
};

struct SnowflakeSpec {
  int generations = 0;
  std::vector<FractalSquare> squares;

  /// 1 + sum_{j<=J} 4 5^{j-1} 9^{-j} = 2 - (5/9)^J.
  double measure() const;
  /// Sum of the square perimeters.
  double total_edge_length() const;
};

/// Unit square at [0,1]^2 plus 4 5^{j-1} squares of side 3^-j per generation,
/// each centred on the middle third of a boundary segment of the previous
/// stage and pointing outward. Throws for generations outside [0, 8].
SnowflakeSpec build_snowflake(int generations);

/// Exact raster at h = 3^-J / cells_per_side. Every square is cell-exact.
RasterDomain rasterize(const SnowflakeSpec& spec, int cells_per_side = 1);

/// Closed-form upper bound on mu_K(eps), valid for 0 < eps < 1/18.
double snowflake_mu_upper(double eps);
/// Root of snowflake_mu_upper(eps) = 1 - gamma_2, a lower bound on eps(K).
double snowflake_epsilon_lower();
/// 64 pi j0^4 / (j0^2 - 4)^2, the m = 2, |K| = 2 count prefactor.
double snowflake_count_prefactor();
/// Count bound for K evaluated at snowflake_epsilon_lower().
double snowflake_count_bound();

/// Upper limit sqrt(2) - 1 of the cube-fractal scale.
double cube_fractal_max_scale();

struct FractalCube {
  Vec3 center{};
  double side = 0.0;
  int generation = 0;
  int attached_face = -1;  // 2*axis + (normal > 0), face glued to the parent
};

struct CubeFractalSpec {
  double s = 0.0;
  int generations = 0;
  std::vector<FractalCube> cubes;

  Box bounds() const;
};

/// Unit cube [0,1]^3 with cubes of side s^j glued to the centres of the free
/// faces of the previous generation. Pairwise disjointness is verified;
/// throws ErrorKind::domain for s outside (0, sqrt(2)-1] or generations
/// outside [0, 4].
CubeFractalSpec build_cube_fractal(double s, int generations);

/// Cell-centre raster at spacing h (exact when h divides s^J).
RasterDomain rasterize(const CubeFractalSpec& spec, double h);

struct CubeFractalStats {
  double measure = 0.0;   // (1 + s^3) / (1 - 5 s^3)
  double surface = 0.0;   // 6 (1 - s^2) / (1 - 5 s^2)
  double mu_slope = 0.0;  // 6 (1 + s^2) / (1 - 5 s^2), so mu(eps) <= mu_slope eps
};

CubeFractalStats cube_fractal_stats(double s);
double cube_fractal_epsilon_lower(double s);
/// s-specific count bound 36 15^{3/2} pi (1 - gamma_3)^{-3} |D_s| / eps^3.
double cube_fractal_count_bound(double s);
/// Bound uniform in s: 6 12^4 15^{3/2} (140 + 99 sqrt 2) pi (1 - gamma_3)^{-6}.
double cube_fractal_uniform_count_bound();

struct BoxDimension {
  double dimension = 0.0;
  std::vector<double> box_sizes;
  std::vector<std::uint64_t> box_counts;
};

/// Least-squares slope of log(#boxes meeting boundary cells) against
/// log(1 / box size) over dyadic box sizes of 2^k cells, up to 1/16 of the
/// raster. Throws ErrorKind::scale when fewer than 4 scales fit.
BoxDimension box_dimension_estimate(const RasterDomain& domain, int min_level = 1);

}  // namespace courant
