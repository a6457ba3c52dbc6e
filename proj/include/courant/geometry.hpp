#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "courant/constants.hpp"
#include "courant/raster.hpp"

namespace courant {

using Point2 = std::array<double, 2>;

/// Strictly convex polygon, vertices counterclockwise.
class ConvexPolygon {
 public:
  /// Clockwise input is reversed; throws ErrorKind::validation when the
  /// vertex list is not strictly convex.
  explicit ConvexPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  double area() const;
  double perimeter() const;
  Box bounds() const;
  bool contains(const Point2& p) const;  // open set
  /// Axis-aligned rectangle side lengths, when the polygon is one.
  std::optional<std::array<double, 2>> rectangle_sides() const;

 private:
  std::vector<Point2> vertices_;
};

struct Disk {
  Point2 center{0.0, 0.0};
  double radius = 1.0;

  double area() const;
  double perimeter() const;
  Box bounds() const;
  bool contains(const Point2& p) const { return (p[0] - center[0]) * (p[0] - center[0]) + (p[1] - center[1]) * (p[1] - center[1]) < radius * radius; }
};

double perimeter(const ConvexPolygon& body);

RasterDomain rasterize(const ConvexPolygon& body, double h);
RasterDomain rasterize(const Disk& disk, double h);

/// How whole cells enter the raster estimate of mu.
enum class MuRule {
  /// Each cell spreads its centre distance uniformly over [d - h/2, d + h/2];
  /// continuous in eps and exact for slabs along flat grid-aligned faces.
  interpolated,
  /// h^m #{inside cells with d < eps}; a step function.
  cell_count,
};

/// Euclidean distance from every inside cell centre to the boundary, i.e.
/// to the closed union of outside cells. Outside cells hold zero.
class DistanceField {
 public:
  explicit DistanceField(const RasterDomain& domain);

  int dim() const { return m_; }
  double spacing() const { return h_; }
  double measure() const { return measure_; }
  double diagonal() const { return diagonal_; }
  const std::vector<double>& values() const { return dist_; }
  double at(std::size_t idx) const { return dist_[idx]; }
  double max_distance() const { return sorted_.empty() ? 0.0 : sorted_.back(); }

  /// Measure of {x in set : d(x, boundary) < eps}.
  double mu(double eps, MuRule rule = MuRule::interpolated) const;

 private:
  int m_;
  double h_;
  double cell_volume_;
  double measure_;
  double diagonal_;
  std::vector<double> dist_;
  std::vector<double> sorted_;  // inside cells only, ascending
  std::vector<double> prefix_;  // prefix_[i] = sum of sorted_[0..i)
};

DistanceField distance_field(const RasterDomain& domain);

double measure(const RasterDomain& domain);

double mu(const DistanceField& field, double eps, MuRule rule = MuRule::interpolated);
double mu(const ConvexPolygon& body, double eps);
double mu(const Disk& disk, double eps);

struct MuCurve {
  std::vector<double> eps_samples;
  std::vector<double> mu_values;
  double total_measure = 0.0;
};

/// Samples mu at eps_max * i / steps for i = 0..steps.
MuCurve mu_curve(const std::function<double(double)>& mu_of, double total_measure, double eps_max, int steps);

struct EpsilonOmega {
  double value = 0.0;
  double threshold = 0.0;
  double residual = 0.0;
  std::optional<double> resolution_h;  // unset for exact geometry
  std::string provenance;
};

/// Leftmost eps with mu(eps) >= threshold by bisection on [0, upper],
/// absolute tolerance tol. Returns the upper end of the final bracket.
double bisect_critical_width(const std::function<double(double)>& mu_of, double threshold, double upper,
                             double tol);

/// Critical width inf{eps : mu(eps) >= (1 - gamma_m) |set| / 2}.
EpsilonOmega epsilon_omega(const DistanceField& field, const PleijelConstants& constants,
                           MuRule rule = MuRule::interpolated);
EpsilonOmega epsilon_omega(const ConvexPolygon& body, const PleijelConstants& constants);
EpsilonOmega epsilon_omega(const Disk& disk, const PleijelConstants& constants);

struct CubeCount {
  double eps = 0.0;
  std::uint64_t count = 0;
  double covered_measure = 0.0;
  double residual = 0.0;          // |set| - count eps^m, never negative
  bool anchored_at_origin = false;  // lattice anchored at the raster origin instead of 0
};

/// Open cubes of side eps with vertices on the eps-lattice that lie inside
/// the set. eps must be an integer multiple of h (ErrorKind::alignment).
CubeCount lattice_cube_count(const RasterDomain& domain, double eps);

}  // namespace courant
