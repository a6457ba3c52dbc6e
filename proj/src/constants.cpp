#include "courant/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "courant/error.hpp"

namespace courant {

namespace {

constexpr int kNewtonBudget = 50;
constexpr double kRootTolerance = 1e-13;

std::string zero_name(double order, int index) {
  std::ostringstream os;
  os << "j_{" << order << "," << index << "}";
  return os.str();
}

// Newton on J_order from x0. Returns NaN when the budget runs out or an
// iterate leaves (lo, hi).
double newton_root(double order, double x0, double lo, double hi) {
  double x = x0;
  for (int it = 0; it < kNewtonBudget; ++it) {
    const double f = bessel_j(order, x);
    const double df = bessel_j_prime(order, x);
    if (df == 0.0) return std::nan("");
    const double step = f / df;
    x -= step;
    if (!(x > lo && x < hi)) return std::nan("");
    if (std::abs(step) <= kRootTolerance * std::max(1.0, x)) {
      // one polishing step
      x -= bessel_j(order, x) / bessel_j_prime(order, x);
      return x;
    }
  }
  return std::nan("");
}

// Number of sign changes of J_order on (0, x). Zero spacing exceeds 2 for
// every order >= 0, so a 0.05 scan cannot step over a pair of zeros.
int zeros_below(double order, double x) {
  constexpr double step = 0.05;
  int count = 0;
  double a = std::max(order, 1e-3);  // J_v has no positive zeros below v
  double fa = bessel_j(order, a);
  while (a < x) {
    const double b = std::min(a + step, x);
    const double fb = bessel_j(order, b);
    if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) ++count;
    a = b;
    fa = fb;
  }
  return count;
}

// Fallback: bracket the index-th sign change by scanning, then safeguarded
// Newton inside the bracket.
double bracketed_root(double order, int index) {
  constexpr double step = 0.05;
  double a = std::max(order, 1e-3);
  double fa = bessel_j(order, a);
  int seen = 0;
  for (int guard = 0; guard < 1000000; ++guard) {
    const double b = a + step;
    const double fb = bessel_j(order, b);
    if ((fa < 0.0) != (fb < 0.0)) {
      if (++seen == index) {
        double lo = a, hi = b, flo = fa;
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
          const double fx = bessel_j(order, x);
          if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
          } else {
            hi = x;
          }
          double next = x - fx / bessel_j_prime(order, x);
          if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
          if (std::abs(next - x) <= kRootTolerance * x) return next;
          x = next;
        }
        return std::nan("");
      }
    }
    a = b;
    fa = fb;
  }
  return std::nan("");
}

}  // namespace

double bessel_j(double order, double x) { return std::cyl_bessel_j(order, x); }

double bessel_j_prime(double order, double x) {
  return (order / x) * std::cyl_bessel_j(order, x) - std::cyl_bessel_j(order + 1.0, x);
}

double mcmahon_estimate(double order, int index) {
  const double beta = (index + 0.5 * order - 0.25) * std::numbers::pi;
  const double mu = 4.0 * order * order;
  const double b8 = 8.0 * beta;
  const double b8_3 = b8 * b8 * b8;
  return beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8_3) -
         32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8_3 * b8 * b8);
}

BesselZero bessel_zero(double order, int index) {
  if (!(order >= 0.0) || index < 1) {
    fail(ErrorKind::domain, "bessel_zero: need order >= 0 and index >= 1, got " + zero_name(order, index));
  }
  double seed = mcmahon_estimate(order, index);
  // McMahon degrades for index small relative to order; the first zero then
  // sits just above the order.
  if (order > 1.0 && index == 1) seed = order + 1.8557571 * std::cbrt(order);
  const double lower = index == 1 ? std::max(order, 1e-3) : 0.5;
  double root = newton_root(order, seed, lower, seed + 2.0 * std::numbers::pi);
  if (std::isnan(root) || zeros_below(order, root - 0.25) != index - 1 ||
      std::abs(bessel_j(order, root)) > 1e-12) {
    root = bracketed_root(order, index);
  }
  if (std::isnan(root)) {
    fail(ErrorKind::numeric, "bessel_zero: root iteration did not converge for " + zero_name(order, index));
  }
  return {order, index, root};
}

double unit_ball_volume(int m) {
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

PleijelConstants pleijel_constants(int m) {
  if (m < kMinDimension || m > kMaxDimension) {
    fail(ErrorKind::domain, "pleijel_constants: unsupported dimension m=" + std::to_string(m) +
                                " (supported 2..10; m=1 gives gamma=1 and vacuous bounds)");
  }
  PleijelConstants c;
  c.m = m;
  c.omega_m = unit_ball_volume(m);
  const double j = bessel_zero(0.5 * m - 1.0, 1).value;
  c.lambda1_ball = j * j;
  c.gamma_m = std::pow(2.0 * std::numbers::pi, m) / (c.omega_m * c.omega_m) /
              std::pow(c.lambda1_ball, 0.5 * m);
  return c;
}

}  // namespace courant
