#include "courant/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "courant/error.hpp"
#include "courant/kernels.hpp"

namespace courant {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    s += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * s;
}

// Keeps the part of a convex polygon with n . x >= c.
std::vector<Point2> clip(const std::vector<Point2>& poly, const Point2& n, double c) {
  std::vector<Point2> out;
  const std::size_t k = poly.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % k];
    const double fa = n[0] * a[0] + n[1] * a[1] - c;
    const double fb = n[0] * b[0] + n[1] * b[1] - c;
    if (fa >= 0.0) out.push_back(a);
    if ((fa >= 0.0) != (fb >= 0.0)) {
      const double t = fa / (fa - fb);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  return out;
}

void check_eps(double eps) {
  if (!(eps >= 0.0)) fail(ErrorKind::domain, "mu: eps must be nonnegative");
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) fail(ErrorKind::validation, "polygon: need at least 3 vertices");
  if (signed_area(vertices_) < 0.0) std::reverse(vertices_.begin(), vertices_.end());
  const std::size_t k = vertices_.size();
  double turning = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % k];
    const Point2& c = vertices_[(i + 2) % k];
    if (!(cross(a, b, c) > 0.0)) fail(ErrorKind::validation, "polygon: vertex list is not strictly convex");
    const double t1 = std::atan2(b[1] - a[1], b[0] - a[0]);
    const double t2 = std::atan2(c[1] - b[1], c[0] - b[0]);
    double turn = t2 - t1;
    while (turn <= -std::numbers::pi) turn += 2.0 * std::numbers::pi;
    while (turn > std::numbers::pi) turn -= 2.0 * std::numbers::pi;
    turning += turn;
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    fail(ErrorKind::validation, "polygon: vertex list winds more than once");
  }
}

double ConvexPolygon::area() const { return signed_area(vertices_); }

double ConvexPolygon::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % vertices_.size()];
    s += std::hypot(b[0] - a[0], b[1] - a[1]);
  }
  return s;
}

Box ConvexPolygon::bounds() const {
  Box b{{vertices_[0][0], vertices_[0][1], 0.0}, {vertices_[0][0], vertices_[0][1], 0.0}};
  for (const Point2& v : vertices_) {
    for (int a = 0; a < 2; ++a) {
      b.lo[a] = std::min(b.lo[a], v[a]);
      b.hi[a] = std::max(b.hi[a], v[a]);
    }
  }
  return b;
}

bool ConvexPolygon::contains(const Point2& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!(cross(vertices_[i], vertices_[(i + 1) % vertices_.size()], p) > 0.0)) return false;
  }
  return true;
}

std::optional<std::array<double, 2>> ConvexPolygon::rectangle_sides() const {
  if (vertices_.size() != 4) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % 4];
    if (a[0] != b[0] && a[1] != b[1]) return std::nullopt;
  }
  const Box b = bounds();
  return std::array<double, 2>{b.hi[0] - b.lo[0], b.hi[1] - b.lo[1]};
}

double Disk::area() const { return std::numbers::pi * radius * radius; }
double Disk::perimeter() const { return 2.0 * std::numbers::pi * radius; }
Box Disk::bounds() const {
  return {{center[0] - radius, center[1] - radius, 0.0}, {center[0] + radius, center[1] + radius, 0.0}};
}

double perimeter(const ConvexPolygon& body) { return body.perimeter(); }

RasterDomain rasterize(const ConvexPolygon& body, double h) {
  const Box b = body.bounds();
  const GridFrame frame = frame_for_bounds(2, h, b.lo, b.hi);
  return rasterize_predicate(frame, [&](const Vec3& c) { return body.contains({c[0], c[1]}); });
}

RasterDomain rasterize(const Disk& disk, double h) {
  if (!(disk.radius > 0.0)) fail(ErrorKind::validation, "disk: radius must be positive");
  const Box b = disk.bounds();
  const GridFrame frame = frame_for_bounds(2, h, b.lo, b.hi);
  return rasterize_predicate(frame, [&](const Vec3& c) { return disk.contains({c[0], c[1]}); });
}

DistanceField::DistanceField(const RasterDomain& domain)
    : m_(domain.dim()),
      h_(domain.spacing()),
      cell_volume_(std::pow(domain.spacing(), domain.dim())),
      measure_(domain.measure()),
      diagonal_(domain.diagonal()) {
  dist_ = kernels::boundary_distance_sq(domain);
  sorted_.reserve(domain.inside_count());
  for (std::size_t i = 0; i < dist_.size(); ++i) {
    dist_[i] = h_ * std::sqrt(dist_[i]);
    if (domain.inside(i)) sorted_.push_back(dist_[i]);
  }
  std::sort(sorted_.begin(), sorted_.end());
  prefix_.resize(sorted_.size() + 1, 0.0);
  for (std::size_t i = 0; i < sorted_.size(); ++i) prefix_[i + 1] = prefix_[i] + sorted_[i];
}

double DistanceField::mu(double eps, MuRule rule) const {
  check_eps(eps);
  if (rule == MuRule::cell_count) {
    const auto below = std::lower_bound(sorted_.begin(), sorted_.end(), eps) - sorted_.begin();
    return static_cast<double>(below) * cell_volume_;
  }
  const double half = 0.5 * h_;
  const auto full = std::upper_bound(sorted_.begin(), sorted_.end(), eps - half) - sorted_.begin();
  const auto partial_end = std::lower_bound(sorted_.begin() + full, sorted_.end(), eps + half) - sorted_.begin();
  const auto n_partial = static_cast<double>(partial_end - full);
  const double sum_partial = prefix_[partial_end] - prefix_[full];
  const double partial = n_partial * (eps / h_ + 0.5) - sum_partial / h_;
  return (static_cast<double>(full) + partial) * cell_volume_;
}

DistanceField distance_field(const RasterDomain& domain) { return DistanceField(domain); }

double measure(const RasterDomain& domain) { return domain.measure(); }

double mu(const DistanceField& field, double eps, MuRule rule) { return field.mu(eps, rule); }

double mu(const ConvexPolygon& body, double eps) {
  check_eps(eps);
  if (eps == 0.0) return 0.0;
  std::vector<Point2> core = body.vertices();
  const auto& v = body.vertices();
  for (std::size_t i = 0; i < v.size() && !core.empty(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    const Point2 n{-(b[1] - a[1]) / len, (b[0] - a[0]) / len};  // inward for CCW
    core = clip(core, n, n[0] * a[0] + n[1] * a[1] + eps);
  }
  const double inner = core.size() >= 3 ? signed_area(core) : 0.0;
  return std::clamp(body.area() - inner, 0.0, body.area());
}

double mu(const Disk& disk, double eps) {
  check_eps(eps);
  const double r = std::max(disk.radius - eps, 0.0);
  return std::numbers::pi * (disk.radius * disk.radius - r * r);
}

MuCurve mu_curve(const std::function<double(double)>& mu_of, double total_measure, double eps_max, int steps) {
  if (!(eps_max > 0.0)) fail(ErrorKind::validation, "mu curve: eps-max must be positive");
  if (steps < 1) fail(ErrorKind::validation, "mu curve: steps must be positive");
  MuCurve curve;
  curve.total_measure = total_measure;
  for (int i = 0; i <= steps; ++i) {
    const double eps = eps_max * static_cast<double>(i) / steps;
    curve.eps_samples.push_back(eps);
    curve.mu_values.push_back(mu_of(eps));
  }
  return curve;
}

double bisect_critical_width(const std::function<double(double)>& mu_of, double threshold, double upper,
                             double tol) {
  double lo = 0.0, hi = upper;
  if (mu_of(hi) < threshold) fail(ErrorKind::numeric, "epsilon: mu never reaches the threshold");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mu_of(mid) >= threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

EpsilonOmega solve(const std::function<double(double)>& mu_of, double measure, double diagonal,
                   const PleijelConstants& constants) {
  EpsilonOmega e;
  e.threshold = 0.5 * constants.one_minus_gamma() * measure;
  e.value = bisect_critical_width(mu_of, e.threshold, diagonal, 1e-9 * diagonal);
  e.residual = std::abs(mu_of(e.value) - e.threshold);
  return e;
}

void require_dim(int have, const PleijelConstants& c) {
  if (have != c.m) fail(ErrorKind::validation, "epsilon: domain dimension does not match the constants");
}

}  // namespace

EpsilonOmega epsilon_omega(const DistanceField& field, const PleijelConstants& constants, MuRule rule) {
  require_dim(field.dim(), constants);
  EpsilonOmega e = solve([&](double eps) { return field.mu(eps, rule); }, field.measure(), field.diagonal(),
                         constants);
  e.resolution_h = field.spacing();
  e.provenance = rule == MuRule::interpolated ? "raster" : "raster_cell_count";
  return e;
}

EpsilonOmega epsilon_omega(const ConvexPolygon& body, const PleijelConstants& constants) {
  require_dim(2, constants);
  const Box b = body.bounds();
  EpsilonOmega e = solve([&](double eps) { return mu(body, eps); }, body.area(),
                         std::hypot(b.hi[0] - b.lo[0], b.hi[1] - b.lo[1]), constants);
  e.provenance = "exact_mu";
  return e;
}

EpsilonOmega epsilon_omega(const Disk& disk, const PleijelConstants& constants) {
  require_dim(2, constants);
  EpsilonOmega e = solve([&](double eps) { return mu(disk, eps); }, disk.area(), 2.0 * std::sqrt(2.0) * disk.radius,
                         constants);
  e.provenance = "exact_mu";
  return e;
}

CubeCount lattice_cube_count(const RasterDomain& domain, double eps) {
  const double h = domain.spacing();
  if (!(eps > 0.0)) fail(ErrorKind::domain, "cube count: eps must be positive");
  const double ratio = eps / h;
  const double p_real = std::round(ratio);
  if (p_real < 1.0 || std::abs(ratio - p_real) > 1e-9 * std::max(1.0, ratio)) {
    fail(ErrorKind::alignment, "cube count: eps is not an integer multiple of the raster spacing h");
  }
  const auto p = static_cast<int>(p_real);
  const int m = domain.dim();
  const Index3& d = domain.dims();

  CubeCount out;
  out.eps = eps;
  // Cell i has lower corner at (origin/h + i) h; cubes start where that
  // lattice index is a multiple of p.
  Index3 offset{0, 0, 0};
  for (int a = 0; a < m; ++a) {
    const double g = domain.origin()[a] / h;
    if (std::abs(g - std::round(g)) > 1e-9 * std::max(1.0, std::abs(g))) {
      out.anchored_at_origin = true;
      break;
    }
    const auto gi = static_cast<long long>(std::round(g));
    offset[a] = static_cast<int>(((-gi) % p + p) % p);
  }
  if (out.anchored_at_origin) offset = {0, 0, 0};

  const int pz = m == 3 ? p : 1;
  std::uint64_t count = 0;
  for (int k0 = (m == 3 ? offset[2] : 0); k0 + pz <= d[2]; k0 += pz)
    for (int j0 = offset[1]; j0 + p <= d[1]; j0 += p)
      for (int i0 = offset[0]; i0 + p <= d[0]; i0 += p) {
        bool full = true;
        for (int k = k0; k < k0 + pz && full; ++k)
          for (int j = j0; j < j0 + p && full; ++j)
            for (int i = i0; i < i0 + p; ++i) {
              if (!domain.inside(domain.index(i, j, k))) {
                full = false;
                break;
              }
            }
        if (full) ++count;
      }
  out.count = count;
  out.covered_measure = static_cast<double>(count) * std::pow(eps, m);
  out.residual = std::max(0.0, domain.measure() - out.covered_measure);
  return out;
}

}  // namespace courant
