#pragma once

// Dimension-dependent constants: unit-ball volume, the principal Dirichlet
// eigenvalue of the unit ball and the Pleijel constant.

namespace courant {

struct BesselZero {
  double order = 0.0;
  int index = 0;
  double value = 0.0;
};

/// The index-th positive zero of J_order, accurate to 1e-12 absolute.
/// Newton iteration seeded by McMahon's expansion; throws ErrorKind::numeric
/// when the iteration budget is exhausted.
BesselZero bessel_zero(double order, int index);

/// McMahon's large-zero expansion for j_{order,index}. Exposed for tests.
double mcmahon_estimate(double order, int index);

/// J_order(x) and its derivative (recurrence J'_v = (v/x) J_v - J_{v+1}).
double bessel_j(double order, double x);
double bessel_j_prime(double order, double x);

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 10;

struct PleijelConstants {
  int m = 0;
  double omega_m = 0.0;       // |B_m|
  double lambda1_ball = 0.0;  // lambda_1(B_m) = j_{m/2-1,1}^2
  double gamma_m = 0.0;       // (2 pi)^m omega_m^-2 lambda1_ball^{-m/2}

  double one_minus_gamma() const { return 1.0 - gamma_m; }
};

/// Throws ErrorKind::domain for m outside [2, 10].
PleijelConstants pleijel_constants(int m);

/// Volume of the unit ball in R^m (any m >= 1).
double unit_ball_volume(int m);

}  // namespace courant
