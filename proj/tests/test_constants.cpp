#include <doctest.h>

#include <cmath>
#include <numbers>

#include "courant/constants.hpp"
#include "courant/error.hpp"
#include "support.hpp"

using namespace courant;
using std::numbers::pi;

TEST_CASE("first zeros of J_0 and J_1/2") {
  CHECK(std::abs(bessel_zero(0.0, 1).value - 2.404826) < 1e-6);
  CHECK(std::abs(bessel_zero(0.0, 2).value - 5.520078) < 1e-6);
  CHECK(std::abs(bessel_zero(0.5, 1).value - pi) < 1e-12);
}

TEST_CASE("zeros against tabulated values") {
  // Values from standard tables (Abramowitz and Stegun 9.5).
  CHECK(std::abs(bessel_zero(0.0, 1).value - 2.404825557695773) < 1e-12);
  CHECK(std::abs(bessel_zero(0.0, 3).value - 8.653727912911012) < 1e-12);
  CHECK(std::abs(bessel_zero(1.0, 1).value - 3.831705970207512) < 1e-12);
  CHECK(std::abs(bessel_zero(2.0, 1).value - 5.135622301840683) < 1e-12);
  CHECK(std::abs(bessel_zero(4.0, 1).value - 7.588342434503804) < 1e-12);
  // j_{3/2,1} solves tan x = x.
  const double x = bessel_zero(1.5, 1).value;
  CHECK(std::abs(std::tan(x) - x) < 1e-9);
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(bessel_zero(0.5, k).value - k * pi) < 1e-12);
}

TEST_CASE("zeros vanish under the ascending series") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
    for (int k = 1; k <= 4; ++k) {
      const BesselZero z = bessel_zero(nu, k);
      if (z.value >= 15.0) continue;
      CHECK(std::fabs(testsupport::bessel_series(nu, z.value)) < 1e-10L);
    }
  }
}

TEST_CASE("zeros increase with index and interlace across orders") {
  for (double nu : {0.0, 0.5, 1.0, 2.5, 3.0}) {
    double prev = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double z = bessel_zero(nu, k).value;
      CHECK(z > prev);
      CHECK(bessel_zero(nu + 1.0, k).value > z);
      CHECK(bessel_zero(nu + 1.0, k).value < bessel_zero(nu, k + 1).value);
      prev = z;
    }
  }
}

TEST_CASE("McMahon estimate lands near the zero") {
  CHECK(std::abs(mcmahon_estimate(0.0, 5) - bessel_zero(0.0, 5).value) < 1e-4);
}

TEST_CASE("bad order or index is rejected") {
  CHECK_THROWS_AS(bessel_zero(-1.0, 1), Error);
  CHECK_THROWS_AS(bessel_zero(0.0, 0), Error);
}

TEST_CASE("Pleijel constants in two and three dimensions") {
  const PleijelConstants c2 = pleijel_constants(2);
  const double j0 = 2.404825557695773;
  CHECK(c2.omega_m == doctest::Approx(pi).epsilon(1e-15));
  CHECK(c2.lambda1_ball == doctest::Approx(j0 * j0).epsilon(1e-12));
  CHECK(c2.gamma_m == doctest::Approx(4.0 / (j0 * j0)).epsilon(1e-12));
  CHECK(std::abs(c2.gamma_m - 0.691660) < 1e-6);

  const PleijelConstants c3 = pleijel_constants(3);
  CHECK(c3.omega_m == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-15));
  CHECK(c3.lambda1_ball == doctest::Approx(pi * pi).epsilon(1e-12));
  CHECK(std::abs(c3.gamma_m - 9.0 / (2.0 * pi * pi)) < 1e-12);
  CHECK(std::abs(c3.one_minus_gamma() - (1.0 - 9.0 / (2.0 * pi * pi))) < 1e-12);
}

TEST_CASE("m = 4 uses j_{1,1}") {
  const double j11 = 3.831705970207512;
  const PleijelConstants c4 = pleijel_constants(4);
  CHECK(c4.gamma_m == doctest::Approx(std::pow(2 * pi, 4) / std::pow(pi * pi / 2, 2) / std::pow(j11, 4)).epsilon(1e-12));
  CHECK(c4.gamma_m < 1.0);
}

TEST_CASE("unit ball volumes follow the two-step recurrence") {
  double even = 1.0, odd = 2.0;  // omega_0, omega_1
  for (int m = 2; m <= 10; ++m) {
    double& w = m % 2 ? odd : even;
    w *= 2.0 * pi / m;
    CHECK(unit_ball_volume(m) == doctest::Approx(w).epsilon(1e-13));
  }
}

TEST_CASE("gamma_m lies in (0, 1) and decreases with m") {
  double prev = 1.0;
  for (int m = kMinDimension; m <= kMaxDimension; ++m) {
    const double g = pleijel_constants(m).gamma_m;
    CHECK(g > 0.0);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("unsupported dimensions") {
  for (int m : {-1, 0, 1, 11}) {
    try {
      pleijel_constants(m);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::domain);
    }
  }
}
