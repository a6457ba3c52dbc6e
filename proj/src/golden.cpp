#include "courant/golden.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "courant/constants.hpp"
#include "courant/fractals.hpp"

namespace courant::golden {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Check within(std::string name, double value, double target, double rel) {
  return {std::move(name), std::abs(value - target) <= rel * std::abs(target),
          fmt("%.6g vs %.6g", value, target) + fmt(" (tol %.3g)", rel)};
}

Check below(std::string name, double value, double limit) {
  return {std::move(name), value < limit, fmt("%.6g < %.6g", value, limit)};
}

}  // namespace

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool is_unit_square(const Domain& domain) {
  if (const auto* p = std::get_if<ConvexPolygon>(&domain)) {
    const auto sides = p->rectangle_sides();
    return sides && std::abs((*sides)[0] - 1.0) < 1e-12 && std::abs((*sides)[1] - 1.0) < 1e-12;
  }
  if (const auto* r = std::get_if<RasterDomain>(&domain)) {
    return r->dim() == 2 && std::abs(r->measure() - 1.0) < 1e-12 && exact_counting_function(domain, 1.0).has_value();
  }
  return false;
}

bool is_unit_disk(const Domain& domain) {
  const auto* d = std::get_if<Disk>(&domain);
  return d && std::abs(d->radius - 1.0) < 1e-12;
}

std::vector<double> distinct_levels(const std::vector<double>& eigenvalues, double tol) {
  std::vector<double> levels;
  for (double v : eigenvalues) {
    if (levels.empty() || v - levels.back() > tol * v) levels.push_back(v);
  }
  return levels;
}

std::vector<Check> check_bounds(const Domain& domain, const BoundReport& report, bool analytic) {
  std::vector<Check> out;
  const PleijelConstants c = pleijel_constants(report.m);
  const double lam = std::pow(2.0 * std::numbers::pi * report.m * report.m / (c.one_minus_gamma() * report.eps_omega), 2);
  out.push_back(within("lambda_star formula", report.lambda_star, lam, 1e-12));
  out.push_back({"threshold_index = floor(count_star) + 1",
                 report.threshold_index == static_cast<std::uint64_t>(std::floor(report.count_star)) + 1, ""});

  if (std::holds_alternative<SnowflakeSpec>(domain)) {
    out.push_back({"snowflake eps in [0.00379, 0.00380]", report.eps_omega >= 0.00379 && report.eps_omega <= 0.00380,
                   fmt("%.6g", report.eps_omega)});
    out.push_back(below("snowflake count_star < 1.5e8", report.count_star, 1.5e8));
    out.push_back(within("snowflake count_star ~ 1.472e8", report.count_star, 1.472e8, 0.01));
  } else if (const auto* cf = std::get_if<CubeFractalSpec>(&domain)) {
    for (Check& k : check_cubes(*cf)) out.push_back(std::move(k));
  } else if (is_unit_disk(domain)) {
    out.push_back(below("disk lambda_star < 1.2e6", report.lambda_star, 1.2e6));
    if (analytic) out.push_back(within("disk lambda_star ~ 1.118e6", report.lambda_star, 1.118e6, 0.005));
  } else if (is_unit_square(domain)) {
    out.push_back(below("square lambda_star < 4.5e6", report.lambda_star, 4.5e6));
    if (analytic) out.push_back(within("square lambda_star ~ 4.473e6", report.lambda_star, 4.473e6, 0.005));
  }
  return out;
}

std::vector<Check> check_snowflake(const SnowflakeSpec& spec, const std::optional<RasterDomain>& raster) {
  std::vector<Check> out;
  const double exact = 2.0 - std::pow(5.0 / 9.0, spec.generations);
  out.push_back(within("|K_J| = 2 - (5/9)^J", spec.measure(), exact, 1e-14));
  if (spec.generations == kMaxSnowflakeGenerations) {
    out.push_back({"|K_8| within 0.01 of 2", std::abs(spec.measure() - 2.0) <= 0.01, fmt("%.8g", spec.measure())});
  }
  if (raster) {
    const double tol = raster->spacing() * spec.total_edge_length();
    out.push_back({"raster measure within h * edge length", std::abs(raster->measure() - spec.measure()) <= tol,
                   fmt("|diff| = %.3g, tol %.3g", std::abs(raster->measure() - spec.measure()), tol)});
  }
  const double eps = snowflake_epsilon_lower();
  out.push_back({"snowflake eps in [0.00379, 0.00380]", eps >= 0.00379 && eps <= 0.00380, fmt("%.6g", eps)});
  out.push_back(below("snowflake count bound < 1.5e8", snowflake_count_bound(), 1.5e8));
  out.push_back(within("snowflake count bound ~ 1.472e8", snowflake_count_bound(), 1.472e8, 0.01));
  return out;
}

std::vector<Check> check_cubes(const CubeFractalSpec& spec) {
  std::vector<Check> out;
  const double uniform = cube_fractal_uniform_count_bound();
  out.push_back(below("uniform cube bound < 2.5e11", uniform, 2.5e11));
  out.push_back(within("uniform cube bound ~ 2.45e11", uniform, 2.45e11, 0.01));
  const double per_s = cube_fractal_count_bound(spec.s);
  out.push_back({"s-specific bound <= uniform bound", per_s <= uniform, fmt("%.6g <= %.6g", per_s, uniform)});
  if (std::abs(spec.s - 1.0 / 3.0) < 1e-12) out.push_back(within("s = 1/3 bound ~ 4.22e9", per_s, 4.22e9, 0.01));
  return out;
}

std::vector<Check> check_verify(const Domain& domain, const SpectrumResult& spectrum, const CourantScan& scan) {
  std::vector<Check> out;
  out.push_back({"Courant nu_n <= n", scan.courant_violations == 0, fmt("%.0f violations", scan.courant_violations)});
  out.push_back({"sharp pairs within lambda_star and count_star", scan.bounds_dominate, ""});
  const bool square = is_unit_square(domain), disk = is_unit_disk(domain);
  if ((square || disk) && spectrum.size() >= 15) {
    out.push_back({"sharp set = {1, 2, 4}", scan.sharp_set == std::vector<int>{1, 2, 4}, ""});
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  if (square && spectrum.size() >= 10) {
    const double continuum[] = {2, 5, 5, 8, 10, 10, 13, 13, 17, 17};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(spectrum.eigenvalues[i] / (continuum[i] * pi2) - 1.0));
    out.push_back({"10 lowest within 1% of pi^2 (p^2 + q^2)", worst <= 0.01, fmt("worst %.3g", worst)});
    out.push_back(within("lambda_4 ~ 8 pi^2", spectrum.eigenvalues[3], 8.0 * pi2, 0.01));
  }
  if (disk) {
    const auto levels = distinct_levels(spectrum.eigenvalues, 0.01);
    const double j02 = bessel_zero(0.0, 2).value;
    if (levels.size() >= 4) out.push_back(within("fourth distinct level ~ j_{0,2}^2", levels[3], j02 * j02, 0.02));
  }
  return out;
}

}  // namespace courant::golden
