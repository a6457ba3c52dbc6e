#include "courant/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "courant/error.hpp"
#include "courant/kernels.hpp"

namespace courant {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEnumerationRadius = 1e4;

double weyl_constant(int m) { return unit_ball_volume(m) / std::pow(2.0 * kPi, m); }

void check_dim(int m) {
  if (m < kMinDimension || m > kMaxDimension) {
    fail(ErrorKind::domain, "bounds: unsupported dimension m=" + std::to_string(m));
  }
}

}  // namespace

double weyl_leading(int m, double volume, double lambda) {
  if (!(lambda >= 0.0)) fail(ErrorKind::domain, "weyl: lambda must be nonnegative");
  return weyl_constant(m) * volume * std::pow(lambda, 0.5 * m);
}

double faber_krahn_lower(int m, double subdomain_volume) {
  if (!(subdomain_volume > 0.0)) fail(ErrorKind::domain, "faber-krahn: volume must be positive");
  const PleijelConstants c = pleijel_constants(m);
  return c.lambda1_ball * std::pow(c.omega_m / subdomain_volume, 2.0 / m);
}

double li_yau_lower(int m, int n, double volume) {
  if (n < 1 || !(volume > 0.0)) fail(ErrorKind::domain, "li-yau: need n >= 1 and positive volume");
  const double omega = unit_ball_volume(m);
  return static_cast<double>(m) / (m + 2.0) * 4.0 * kPi * kPi * std::pow(omega, -2.0 / m) *
         std::pow(n / volume, 2.0 / m);
}

namespace {

// eps^2 lambda / pi^2, snapped to the nearest integer when within rounding of it so that
// the strict inequality behaves at lattice shells (lambda = 5 pi^2 must exclude (1,2)).
double snapped_radius_sq(double eps, double lambda) {
  const double r2 = eps * eps * lambda / (kPi * kPi);
  const double n = std::round(r2);
  return std::abs(r2 - n) <= 1e-12 * std::max(1.0, r2) ? n : r2;
}

}  // namespace

double gauss_cube_count(int m, double eps, double lambda, GaussMode mode) {
  if (!(eps > 0.0) || !(lambda >= 0.0)) fail(ErrorKind::domain, "gauss count: need eps > 0 and lambda >= 0");
  const double radius = eps * std::sqrt(lambda) / kPi;
  switch (mode) {
    case GaussMode::exact:
      if (radius > kEnumerationRadius) {
        fail(ErrorKind::scale, "gauss count: eps sqrt(lambda)/pi exceeds the enumeration budget 1e4");
      }
      return static_cast<double>(kernels::count_lattice_points(m, snapped_radius_sq(eps, lambda)));
    case GaussMode::lower_bound:
      return unit_ball_volume(m) / std::pow(2.0, m) * std::pow(std::max(radius - std::sqrt(m), 0.0), m);
    case GaussMode::weyl_form:
      if (radius == 0.0) return 0.0;
      return weyl_constant(m) * std::pow(eps, m) * std::pow(lambda, 0.5 * m) *
             (1.0 - kPi * std::pow(m, 1.5) / (eps * std::sqrt(lambda)));
  }
  return 0.0;
}

std::uint64_t rectangle_counting_function(double a, double b, double lambda) {
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorKind::domain, "rectangle count: sides must be positive");
  const double scaled = lambda / (kPi * kPi);  // p^2/a^2 + q^2/b^2 < scaled
  std::uint64_t n = 0;
  for (std::int64_t p = 1;; ++p) {
    const double rest = scaled - static_cast<double>(p * p) / (a * a);
    if (rest <= 0.0) break;
    const double q2 = rest * b * b;  // q^2 < q2
    auto q = static_cast<std::int64_t>(std::floor(std::sqrt(q2)));
    while (q > 0 && static_cast<double>(q * q) >= q2) --q;
    while (static_cast<double>((q + 1) * (q + 1)) < q2) ++q;
    n += static_cast<std::uint64_t>(q);
  }
  return n;
}

double bracketing_lower_bound(const RasterDomain& domain, double eps, double lambda) {
  const CubeCount cubes = lattice_cube_count(domain, eps);
  if (cubes.count == 0) return 0.0;
  return static_cast<double>(cubes.count) * gauss_cube_count(domain.dim(), eps, lambda, GaussMode::exact);
}

double balancing_eps(int m, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorKind::domain, "balancing eps: lambda must be positive");
  return 2.0 * kPi * std::pow(m, 1.5) / (pleijel_constants(m).one_minus_gamma() * std::sqrt(lambda));
}

RemainderReport remainder_upper_bound(int m, double volume, const std::function<double(double)>& mu_of,
                                      double lambda, std::optional<double> eps,
                                      std::optional<std::uint64_t> exact_count) {
  check_dim(m);
  if (!(lambda > 0.0)) fail(ErrorKind::domain, "remainder: lambda must be positive");
  RemainderReport r;
  r.lambda = lambda;
  r.eps_balanced = !eps.has_value();
  r.eps = eps ? *eps : balancing_eps(m, lambda);
  if (!(r.eps > 0.0)) fail(ErrorKind::domain, "remainder: eps must be positive");
  const double w = weyl_constant(m);
  r.weyl_leading = weyl_leading(m, volume, lambda);
  r.mu_value = std::min(mu_of(std::sqrt(static_cast<double>(m)) * r.eps), volume);
  r.upper_bound = w * r.mu_value * std::pow(lambda, 0.5 * m) +
                  kPi * std::pow(m, 1.5) * w * volume * std::pow(lambda, 0.5 * (m - 1)) / r.eps;
  if (exact_count) {
    r.exact_count = exact_count;
    r.remainder = r.weyl_leading - static_cast<double>(*exact_count);
  }
  return r;
}

double courant_sharp_lambda_bound(int m, double eps_omega) {
  if (!(eps_omega > 0.0)) fail(ErrorKind::domain, "lambda bound: eps must be positive");
  const double root = 2.0 * kPi * m * m / (pleijel_constants(m).one_minus_gamma() * eps_omega);
  return root * root;
}

CountBound courant_sharp_count_bound(int m, double volume, double eps_omega) {
  if (!(volume > 0.0) || !(eps_omega > 0.0)) fail(ErrorKind::domain, "count bound: need positive volume and eps");
  const PleijelConstants c = pleijel_constants(m);
  CountBound b;
  b.count_star = c.omega_m / std::pow(c.one_minus_gamma(), m) * std::pow(std::pow(m, 3.0) * (m + 2.0), 0.5 * m) *
                 volume / std::pow(eps_omega, m);
  b.threshold_index = static_cast<std::uint64_t>(std::floor(b.count_star)) + 1;
  return b;
}

ConvexBounds convex_bounds(int m, double volume, double perimeter) {
  if (!(volume > 0.0) || !(perimeter > 0.0)) fail(ErrorKind::domain, "convex bounds: need positive volume and perimeter");
  const PleijelConstants c = pleijel_constants(m);
  const double g = c.one_minus_gamma();
  ConvexBounds b;
  b.eps_lower = 0.5 * g * volume / perimeter;
  b.count_bound = c.omega_m / std::pow(g, 2 * m) * std::pow(4.0 * std::pow(m, 3.0) * (m + 2.0), 0.5 * m) *
                  std::pow(perimeter, m) / std::pow(volume, m - 1);
  return b;
}

BoundReport make_bound_report(int m, double volume, double eps_omega, std::string provenance,
                              std::optional<double> resolution_h) {
  BoundReport r;
  r.m = m;
  r.volume = volume;
  r.gamma = pleijel_constants(m).gamma_m;
  r.eps_omega = eps_omega;
  r.eps_provenance = std::move(provenance);
  r.resolution_h = resolution_h;
  r.lambda_star = courant_sharp_lambda_bound(m, eps_omega);
  const CountBound cb = courant_sharp_count_bound(m, volume, eps_omega);
  r.count_star = cb.count_star;
  r.threshold_index = cb.threshold_index;
  return r;
}

}  // namespace courant
