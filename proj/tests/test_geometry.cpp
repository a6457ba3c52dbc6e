#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "courant/error.hpp"
#include "courant/geometry.hpp"
#include "support.hpp"

using namespace courant;
using std::numbers::pi;

namespace {

const ConvexPolygon unit_square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
const PleijelConstants c2 = pleijel_constants(2);

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invariant;
}

}  // namespace

TEST_CASE("raster measures") {
  CHECK(std::abs(measure(rasterize(unit_square, 1.0 / 100)) - 1.0) <= 1.0 / 100);
  // Cell-centre count of the disk against an independent Gauss circle count.
  const double h = 1.0 / 200;
  long inside = 0;
  for (int i = -250; i < 250; ++i)
    for (int j = -250; j < 250; ++j) {
      const double x = (i + 0.5) * h, y = (j + 0.5) * h;
      if (x * x + y * y < 1.0) ++inside;
    }
  const double disk_area = measure(rasterize(Disk{{0, 0}, 1.0}, h));
  CHECK(disk_area == doctest::Approx(inside * h * h).epsilon(1e-12));
  CHECK(std::abs(disk_area - pi) < 0.02);
}

TEST_CASE("raster validation") {
  CHECK(kind_of([] { RasterDomain(2, 1.0, {}, {3, 3, 1}, std::vector<std::uint8_t>(9, 0)); }) == ErrorKind::validation);
  CHECK(kind_of([] { RasterDomain(2, -1.0, {}, {3, 3, 1}, {0, 0, 0, 0, 1, 0, 0, 0, 0}); }) == ErrorKind::validation);
  CHECK(kind_of([] { RasterDomain(2, 1.0, {}, {3, 3, 1}, {1, 0, 0, 0, 1, 0, 0, 0, 0}); }) == ErrorKind::validation);
}

TEST_CASE("distance field on the square and the disk") {
  const RasterDomain sq = rasterize(unit_square, 1.0 / 8);
  const DistanceField f(sq);
  double centre = 0.0;
  for (std::size_t i = 0; i < sq.size(); ++i) {
    if (!sq.inside(i)) continue;
    const Vec3 c = sq.center(i);
    const double exact = std::min({c[0], 1.0 - c[0], c[1], 1.0 - c[1]});
    CHECK(std::abs(f.at(i) - exact) <= 1.0 / 8);
    if (std::abs(c[0] - 0.4375) < 1e-12 && std::abs(c[1] - 0.4375) < 1e-12) centre = f.at(i);
  }
  CHECK(std::abs(centre - 0.5) <= 1.0 / 8);

  const double h = 1.0 / 100;
  const RasterDomain disk = rasterize(Disk{{0, 0}, 1.0}, h);
  const DistanceField g(disk);
  for (std::size_t i = 0; i < disk.size(); ++i) {
    if (!disk.inside(i)) continue;
    const Vec3 c = disk.center(i);
    CHECK(std::abs(g.at(i) - (1.0 - std::hypot(c[0], c[1]))) <= 0.02);
  }
  CHECK(std::abs(g.max_distance() - 1.0) <= 0.02);
}

TEST_CASE("boundary cells sit half a cell from the faces") {
  const RasterDomain sq = rasterize(unit_square, 1.0 / 16);
  const DistanceField f(sq);
  CHECK(f.at(sq.index(1, 5)) == doctest::Approx(1.0 / 32));
}

TEST_CASE("distance field is 1-Lipschitz and bounded") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const RasterDomain r = testsupport::random_polyomino(rng, 30, 200, 1.0 / 30);
    const DistanceField f(r);
    const Index3 d = r.dims();
    for (int j = 0; j + 1 < d[1]; ++j)
      for (int i = 0; i + 1 < d[0]; ++i) {
        CHECK(std::abs(f.at(r.index(i, j)) - f.at(r.index(i + 1, j))) <= r.spacing() + 1e-12);
        CHECK(std::abs(f.at(r.index(i, j)) - f.at(r.index(i, j + 1))) <= r.spacing() + 1e-12);
      }
    CHECK(f.max_distance() <= 0.5 * r.diagonal());
  }
}

TEST_CASE("exact mu for polygons and disks") {
  CHECK(mu(unit_square, 0.1) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(mu(unit_square, 0.6) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mu(Disk{{0, 0}, 1.0}, 0.5) == doctest::Approx(2.356194490192345).epsilon(1e-12));
  CHECK(mu(Disk{{0, 0}, 1.0}, 2.0) == doctest::Approx(pi).epsilon(1e-12));
  const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
  // Inner parallel triangle of the right isosceles triangle has legs 1 - (2 + sqrt 2) eps.
  const double e = 0.05, leg = 1.0 - (2.0 + std::sqrt(2.0)) * e;
  CHECK(mu(tri, e) == doctest::Approx(0.5 - 0.5 * leg * leg).epsilon(1e-12));
  CHECK_THROWS_AS(mu(unit_square, -0.1), Error);
}

TEST_CASE("raster mu is exact for grid-aligned squares") {
  const RasterDomain sq = rasterize(unit_square, 1.0 / 64);
  const DistanceField f(sq);
  for (double e : {0.05, 0.1, 0.2, 0.3}) CHECK(f.mu(e) == doctest::Approx(1.0 - std::pow(1.0 - 2.0 * e, 2)).epsilon(1e-3));
  CHECK(f.mu(0.0) == 0.0);
  // Cell counting is a step function: cells with centre distance < eps.
  CHECK(f.mu(1.0 / 128 + 1e-9, MuRule::cell_count) == doctest::Approx(1.0 - std::pow(62.0 / 64, 2)));
}

TEST_CASE("mu is monotone, starts at zero and saturates") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const RasterDomain r = t % 4 == 3 ? testsupport::random_voxels(rng, 12, 0.8)
                                      : testsupport::random_polyomino(rng, 40, 300 + 20 * t, 1.0 / 40);
    const DistanceField f(r);
    for (MuRule rule : {MuRule::interpolated, MuRule::cell_count}) {
      CHECK(f.mu(0.0, rule) == 0.0);
      CHECK(f.mu(r.diagonal(), rule) == doctest::Approx(r.measure()));
      double prev = 0.0;
      for (int i = 1; i <= 200; ++i) {
        const double v = f.mu(r.diagonal() * i / 200.0, rule);
        CHECK(v >= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("convex bodies obey mu <= perimeter * eps") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const ConvexPolygon p = testsupport::random_convex(rng);
    const double h = 1.0 / 128;
    const DistanceField f(rasterize(p, h));
    for (int i = 1; i <= 20; ++i) {
      const double e = 0.02 * i;
      CHECK(mu(p, e) <= p.perimeter() * e + 1e-12);
      CHECK(f.mu(e) <= p.perimeter() * (e + 2 * h));
      CHECK(std::abs(f.mu(e) - mu(p, e)) <= 2 * h * p.perimeter());
    }
  }
}

TEST_CASE("critical widths against closed-form quadratics") {
  const double t = 0.5 * c2.one_minus_gamma();
  // 1 - (1 - 2e)^2 = t  ->  e = (1 - sqrt(1 - t)) / 2.
  const EpsilonOmega sq = epsilon_omega(unit_square, c2);
  CHECK(sq.value == doctest::Approx((1.0 - std::sqrt(1.0 - t)) / 2.0).epsilon(1e-8));
  CHECK(std::abs(sq.value - 0.040156) < 2e-6);
  // pi (1 - (1 - e)^2) = t pi  ->  e = 1 - sqrt(1 - t).
  const EpsilonOmega disk = epsilon_omega(Disk{{0, 0}, 1.0}, c2);
  CHECK(disk.value == doctest::Approx(1.0 - std::sqrt(1.0 - t)).epsilon(1e-8));
  CHECK(std::abs(disk.value - 0.080310) < 1e-6);
  // 2x1 rectangle: 4e^2 - 6e + 2t = 0.
  const EpsilonOmega rect = epsilon_omega(ConvexPolygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}}), c2);
  CHECK(rect.value == doctest::Approx((6.0 - std::sqrt(36.0 - 32.0 * t)) / 8.0).epsilon(1e-8));
  CHECK(std::abs(rect.value - 0.053283) < 1e-6);
  CHECK(sq.provenance == "exact_mu");
  CHECK(!sq.resolution_h);
}

TEST_CASE("raster critical width carries its resolution") {
  const double h = 1.0 / 256;
  const EpsilonOmega e = epsilon_omega(DistanceField(rasterize(unit_square, h)), c2);
  CHECK(e.resolution_h.value() == h);
  CHECK(e.value == doctest::Approx(epsilon_omega(unit_square, c2).value).epsilon(1e-3));
}

TEST_CASE("critical width is a fixed point of mu") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 15; ++t) {
    const RasterDomain r = testsupport::random_polyomino(rng, 50, 400 + 40 * t, 1.0 / 50);
    const DistanceField f(r);
    const EpsilonOmega e = epsilon_omega(f, c2);
    const double tol = 1e-9 * r.diagonal();
    CHECK(f.mu(e.value) >= e.threshold - 1e-12);
    CHECK(f.mu(e.value - 2 * tol) < e.threshold);
    CHECK(e.residual <= 1e-6 * r.measure());
  }
}

TEST_CASE("lattice cube counts") {
  const CubeCount sq = lattice_cube_count(rasterize(unit_square, 1.0 / 64), 0.25);
  CHECK(sq.count == 16);
  CHECK(sq.residual == doctest::Approx(0.0).scale(1.0));
  CHECK_FALSE(sq.anchored_at_origin);

  const RasterDomain disk = rasterize(Disk{{0, 0}, 1.0}, 1.0 / 64);
  CHECK(lattice_cube_count(disk, 1.0).count == 0);

  const RasterDomain l = testsupport::picture({{1, 1}, {1, 0}}, 0.5);
  const CubeCount lc = lattice_cube_count(l, 0.5);
  CHECK(lc.count == 3);
  CHECK(lc.residual == doctest::Approx(0.0).scale(1.0));

  CHECK(kind_of([&] { lattice_cube_count(disk, 0.3); }) == ErrorKind::alignment);
}

TEST_CASE("cube counts sandwich the measure") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const double h = 1.0 / 48;
    const RasterDomain r = t % 5 == 4 ? testsupport::random_voxels(rng, 14, 0.9)
                                      : testsupport::random_polyomino(rng, 48, 800 + 30 * t, h);
    const DistanceField f(r);
    const int m = r.dim();
    for (int p : {1, 2, 3, 4, 6}) {
      const double eps = p * r.spacing();
      const CubeCount c = lattice_cube_count(r, eps);
      const double gap = r.measure() - c.covered_measure;
      CHECK(gap >= -1e-12);
      CHECK(gap <= f.mu(std::sqrt(double(m)) * eps + r.spacing()) + 1e-12);
    }
  }
}

TEST_CASE("polygon validation and perimeters") {
  CHECK(perimeter(unit_square) == doctest::Approx(4.0));
  CHECK(perimeter(ConvexPolygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}})) == doctest::Approx(6.0));
  std::vector<Point2> hex;
  for (int k = 0; k < 6; ++k) hex.push_back({std::cos(k * pi / 3), std::sin(k * pi / 3)});
  CHECK(perimeter(ConvexPolygon(hex)) == doctest::Approx(6.0));
  // Clockwise input is accepted.
  CHECK(ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}).area() == doctest::Approx(1.0));
  CHECK(kind_of([] { ConvexPolygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}); }) == ErrorKind::validation);
  CHECK(kind_of([] { ConvexPolygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}); }) == ErrorKind::validation);
  CHECK(kind_of([] { ConvexPolygon({{0, 0}, {1, 0}}); }) == ErrorKind::validation);
}

TEST_CASE("mu curves") {
  const MuCurve c = mu_curve([](double e) { return mu(unit_square, e); }, 1.0, 0.5, 10);
  REQUIRE(c.eps_samples.size() == 11);
  CHECK(c.mu_values.front() == 0.0);
  CHECK(c.mu_values.back() == doctest::Approx(1.0));
  CHECK(c.total_measure == 1.0);
}
