#include "courant/fractals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "courant/constants.hpp"
#include "courant/error.hpp"
#include "courant/kernels.hpp"

namespace courant {

namespace {

using I2 = std::array<std::int64_t, 2>;

struct Segment {
  I2 start;
  I2 dir;     // unit axis direction
  I2 normal;  // outward unit normal
  std::int64_t length;
};

std::int64_t pow_int(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

I2 add(const I2& a, const I2& b, std::int64_t t) { return {a[0] + t * b[0], a[1] + t * b[1]}; }
I2 neg(const I2& a) { return {-a[0], -a[1]}; }

double minkowski_exponent() { return std::log(5.0) / std::log(3.0); }

void check_scale(double s) {
  if (!(s > 0.0) || s > cube_fractal_max_scale() + 1e-15) {
    fail(ErrorKind::domain, "cube fractal: s must lie in (0, sqrt(2)-1]");
  }
}

bool boxes_overlap(const Vec3& lo_a, const Vec3& hi_a, const Vec3& lo_b, const Vec3& hi_b, int m, double tol) {
  for (int a = 0; a < m; ++a) {
    if (std::min(hi_a[a], hi_b[a]) - std::max(lo_a[a], lo_b[a]) <= tol) return false;
  }
  return true;
}

// Sweep on x, then test y, over integer boxes.
void check_squares_disjoint(const std::vector<FractalSquare>& squares) {
  std::vector<std::size_t> order(squares.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return squares[a].lo[0] < squares[b].lo[0]; });
  for (std::size_t ii = 0; ii < order.size(); ++ii) {
    const FractalSquare& a = squares[order[ii]];
    for (std::size_t jj = ii + 1; jj < order.size(); ++jj) {
      const FractalSquare& b = squares[order[jj]];
      if (b.lo[0] >= a.hi[0]) break;
      if (std::min(a.hi[1], b.hi[1]) > std::max(a.lo[1], b.lo[1])) {
        fail(ErrorKind::invariant, "snowflake: squares overlap");
      }
    }
  }
}

}  // namespace

double SnowflakeSpec::measure() const { return 2.0 - std::pow(5.0 / 9.0, generations); }

double SnowflakeSpec::total_edge_length() const {
  double s = 0.0;
  for (const auto& q : squares) s += 4.0 * q.side;
  return s;
}

SnowflakeSpec build_snowflake(int generations) {
  if (generations < 0 || generations > kMaxSnowflakeGenerations) {
    fail(ErrorKind::domain, "snowflake: generations must lie in [0, 8]");
  }
  const std::int64_t unit = pow_int(3, generations);
  SnowflakeSpec spec;
  spec.generations = generations;
  auto push = [&](const I2& lo, const I2& hi, int gen) {
    FractalSquare q;
    q.lo = lo;
    q.hi = hi;
    q.generation = gen;
    q.side = static_cast<double>(hi[0] - lo[0]) / static_cast<double>(unit);
    q.center = {0.5 * static_cast<double>(lo[0] + hi[0]) / static_cast<double>(unit),
                0.5 * static_cast<double>(lo[1] + hi[1]) / static_cast<double>(unit)};
    spec.squares.push_back(q);
  };
  push({0, 0}, {unit, unit}, 0);

  // boundary of the current stage, counterclockwise, normal on the right
  std::vector<Segment> boundary = {
      {{0, 0}, {1, 0}, {0, -1}, unit},
      {{unit, 0}, {0, 1}, {1, 0}, unit},
      {{unit, unit}, {-1, 0}, {0, 1}, unit},
      {{0, unit}, {0, -1}, {-1, 0}, unit},
  };
  for (int gen = 1; gen <= generations; ++gen) {
    std::vector<Segment> next;
    next.reserve(boundary.size() * 5);
    for (const Segment& seg : boundary) {
      const std::int64_t t = seg.length / 3;
      const I2 a = add(seg.start, seg.dir, t);
      const I2 b = add(seg.start, seg.dir, 2 * t);
      const I2 a_top = add(a, seg.normal, t);
      const I2 b_top = add(b, seg.normal, t);
      push({std::min({a[0], b[0], a_top[0], b_top[0]}), std::min({a[1], b[1], a_top[1], b_top[1]})},
           {std::max({a[0], b[0], a_top[0], b_top[0]}), std::max({a[1], b[1], a_top[1], b_top[1]})}, gen);
      next.push_back({seg.start, seg.dir, seg.normal, t});
      next.push_back({a, seg.normal, neg(seg.dir), t});
      next.push_back({a_top, seg.dir, seg.normal, t});
      next.push_back({b_top, neg(seg.normal), seg.dir, t});
      next.push_back({b, seg.dir, seg.normal, t});
    }
    boundary = std::move(next);
  }
  check_squares_disjoint(spec.squares);
  return spec;
}

RasterDomain rasterize(const SnowflakeSpec& spec, int cells_per_side) {
  if (cells_per_side < 1) fail(ErrorKind::validation, "snowflake raster: cells per finest side must be >= 1");
  const std::int64_t unit = pow_int(3, spec.generations);
  const std::int64_t reach = (unit - 1) / 2;  // 1/3 + 1/9 + ... in units
  const std::int64_t amin = -reach;
  const std::int64_t amax = unit + reach;
  const std::int64_t q = cells_per_side;
  const std::int64_t n = (amax - amin) * q + 2;
  if (static_cast<double>(n) * static_cast<double>(n) > 4.0e8) {
    fail(ErrorKind::scale, "snowflake raster: grid exceeds the desk-scale cell budget");
  }
  // Paint in cell coordinates, where every box edge is an integer.
  GridFrame cells;
  cells.m = 2;
  cells.h = 1.0;
  cells.origin = {0.0, 0.0, 0.0};
  cells.dims = {static_cast<int>(n), static_cast<int>(n), 1};
  std::vector<Box> boxes;
  boxes.reserve(spec.squares.size());
  for (const auto& sq : spec.squares) {
    Box b;
    for (int a = 0; a < 2; ++a) {
      b.lo[a] = static_cast<double>((sq.lo[a] - amin) * q + 1);
      b.hi[a] = static_cast<double>((sq.hi[a] - amin) * q + 1);
    }
    boxes.push_back(b);
  }
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  if (kernels::paint_boxes(cells, boxes, mask) != 0) fail(ErrorKind::invariant, "snowflake raster: squares overlap");

  const double h = 1.0 / (static_cast<double>(unit) * static_cast<double>(q));
  const double corner = static_cast<double>(amin * q - 1) * h;
  return RasterDomain(2, h, {corner, corner, 0.0}, cells.dims, std::move(mask));
}

double snowflake_mu_upper(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0 / 18.0)) {
    fail(ErrorKind::domain, "snowflake mu bound: valid only for 0 < eps < 1/18");
  }
  const double d = minkowski_exponent();
  return 84.0 / 5.0 * std::pow(2.0, -d) * std::pow(eps, 2.0 - d);
}

double snowflake_epsilon_lower() {
  const double d = minkowski_exponent();
  const double target = pleijel_constants(2).one_minus_gamma();
  return std::pow(target / (84.0 / 5.0 * std::pow(2.0, -d)), 1.0 / (2.0 - d));
}

double snowflake_count_prefactor() {
  const double j0 = bessel_zero(0.0, 1).value;
  const double j2 = j0 * j0;
  return 64.0 * std::numbers::pi * j2 * j2 / ((j2 - 4.0) * (j2 - 4.0));
}

double snowflake_count_bound() {
  const double eps = snowflake_epsilon_lower();
  return snowflake_count_prefactor() / (eps * eps);
}

double cube_fractal_max_scale() { return std::numbers::sqrt2 - 1.0; }

Box CubeFractalSpec::bounds() const {
  Box b{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
  for (const auto& c : cubes) {
    for (int a = 0; a < 3; ++a) {
      b.lo[a] = std::min(b.lo[a], c.center[a] - 0.5 * c.side);
      b.hi[a] = std::max(b.hi[a], c.center[a] + 0.5 * c.side);
    }
  }
  return b;
}

CubeFractalSpec build_cube_fractal(double s, int generations) {
  check_scale(s);
  if (generations < 0 || generations > kMaxCubeGenerations) {
    fail(ErrorKind::domain, "cube fractal: generations must lie in [0, 4]");
  }
  CubeFractalSpec spec;
  spec.s = s;
  spec.generations = generations;
  spec.cubes.push_back({{0.5, 0.5, 0.5}, 1.0, 0, -1});
  std::size_t first = 0;
  for (int gen = 1; gen <= generations; ++gen) {
    const std::size_t last = spec.cubes.size();
    for (std::size_t p = first; p < last; ++p) {
      const FractalCube parent = spec.cubes[p];
      for (int face = 0; face < 6; ++face) {
        const int axis = face / 2;
        const double sign = (face % 2) ? 1.0 : -1.0;
        // the face glued to the parent has the opposite outward normal
        if (parent.attached_face >= 0 && parent.attached_face == (face ^ 1)) continue;
        FractalCube child;
        child.side = s * parent.side;
        child.generation = gen;
        child.attached_face = face;
        child.center = parent.center;
        child.center[axis] += sign * 0.5 * (parent.side + child.side);
        spec.cubes.push_back(child);
      }
    }
    first = last;
  }
  const double tol = 1e-12;
  for (std::size_t a = 0; a < spec.cubes.size(); ++a) {
    const auto& ca = spec.cubes[a];
    Vec3 lo_a, hi_a;
    for (int k = 0; k < 3; ++k) {
      lo_a[k] = ca.center[k] - 0.5 * ca.side;
      hi_a[k] = ca.center[k] + 0.5 * ca.side;
    }
    for (std::size_t b = a + 1; b < spec.cubes.size(); ++b) {
      const auto& cb = spec.cubes[b];
      Vec3 lo_b, hi_b;
      for (int k = 0; k < 3; ++k) {
        lo_b[k] = cb.center[k] - 0.5 * cb.side;
        hi_b[k] = cb.center[k] + 0.5 * cb.side;
      }
      if (boxes_overlap(lo_a, hi_a, lo_b, hi_b, 3, tol)) {
        fail(ErrorKind::invariant, "cube fractal: cubes " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
      }
    }
  }
  return spec;
}

RasterDomain rasterize(const CubeFractalSpec& spec, double h) {
  const Box b = spec.bounds();
  const GridFrame frame = frame_for_bounds(3, h, b.lo, b.hi);
  std::vector<Box> boxes;
  boxes.reserve(spec.cubes.size());
  for (const auto& c : spec.cubes) {
    Box box;
    for (int a = 0; a < 3; ++a) {
      box.lo[a] = c.center[a] - 0.5 * c.side;
      box.hi[a] = c.center[a] + 0.5 * c.side;
    }
    boxes.push_back(box);
  }
  return rasterize_boxes(frame, boxes);
}

CubeFractalStats cube_fractal_stats(double s) {
  check_scale(s);
  const double s2 = s * s, s3 = s2 * s;
  return {(1.0 + s3) / (1.0 - 5.0 * s3), 6.0 * (1.0 - s2) / (1.0 - 5.0 * s2), 6.0 * (1.0 + s2) / (1.0 - 5.0 * s2)};
}

double cube_fractal_epsilon_lower(double s) {
  const CubeFractalStats st = cube_fractal_stats(s);
  const double s2 = s * s;
  return pleijel_constants(3).one_minus_gamma() / 12.0 * (1.0 - 5.0 * s2) / (1.0 + s2) * st.measure;
}

double cube_fractal_count_bound(double s) {
  const CubeFractalStats st = cube_fractal_stats(s);
  const double eps = cube_fractal_epsilon_lower(s);
  const double c = pleijel_constants(3).one_minus_gamma();
  return 36.0 * std::pow(15.0, 1.5) * std::numbers::pi / (c * c * c) * st.measure / (eps * eps * eps);
}

double cube_fractal_uniform_count_bound() {
  const double c = pleijel_constants(3).one_minus_gamma();
  return 6.0 * std::pow(12.0, 4) * std::pow(15.0, 1.5) * (140.0 + 99.0 * std::numbers::sqrt2) * std::numbers::pi /
         std::pow(c, 6);
}

BoxDimension box_dimension_estimate(const RasterDomain& domain, int min_level) {
  const int m = domain.dim();
  const Index3& d = domain.dims();
  std::vector<Index3> boundary;
  for (std::size_t idx = 0; idx < domain.size(); ++idx) {
    if (!domain.inside(idx)) continue;
    const Index3 c = domain.coords(idx);
    bool edge = false;
    for (int a = 0; a < m && !edge; ++a) {
      for (int sgn : {-1, 1}) {
        Index3 n = c;
        n[a] += sgn;
        if (!domain.inside(domain.index(n[0], n[1], n[2]))) edge = true;
      }
    }
    if (edge) boundary.push_back(c);
  }
  int min_dim = d[0];
  for (int a = 1; a < m; ++a) min_dim = std::min(min_dim, d[a]);

  BoxDimension out;
  std::vector<double> xs, ys;
  // Boxes wider than 1/16 of the raster mostly see the smooth body of the domain.
  for (int level = std::max(min_level, 0); (1 << level) * 16 <= min_dim; ++level) {
    const int size = 1 << level;
    Index3 nb{1, 1, 1};
    for (int a = 0; a < m; ++a) nb[a] = (d[a] + size - 1) / size;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(nb[0]) * nb[1] * nb[2], 0);
    std::uint64_t count = 0;
    for (const Index3& c : boundary) {
      const std::size_t key = static_cast<std::size_t>(c[0] >> level) +
                              static_cast<std::size_t>(nb[0]) * (static_cast<std::size_t>(c[1] >> level) +
                                                                 static_cast<std::size_t>(nb[1]) * (c[2] >> level));
      if (!hit[key]) {
        hit[key] = 1;
        ++count;
      }
    }
    const double box = size * domain.spacing();
    out.box_sizes.push_back(box);
    out.box_counts.push_back(count);
    xs.push_back(std::log(1.0 / box));
    ys.push_back(std::log(static_cast<double>(count)));
  }
  if (xs.size() < 4) fail(ErrorKind::scale, "box dimension: fewer than 4 usable dyadic scales");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  out.dimension = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace courant
