#pragma once

// Every inequality on the route from Weyl's law to the Courant-sharp bounds,
// as a function that can be evaluated and checked on its own.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "courant/constants.hpp"
#include "courant/geometry.hpp"
#include "courant/raster.hpp"

namespace courant {

/// omega_m (2 pi)^-m volume lambda^{m/2}.
double weyl_leading(int m, double volume, double lambda);

/// lambda_1(B_m) (omega_m / volume)^{2/m}: smallest lambda_1 at this volume.
double faber_krahn_lower(int m, double subdomain_volume);

/// (m / (m+2)) (2 pi)^2 omega_m^{-2/m} (n / volume)^{2/m}.
double li_yau_lower(int m, int n, double volume);

enum class GaussMode {
  exact,        // #{k in N^m : |k|^2 < eps^2 lambda / pi^2}
  lower_bound,  // (omega_m / 2^m) (eps sqrt(lambda) / pi - sqrt(m))_+^m
  weyl_form,    // omega_m (2 pi)^-m eps^m lambda^{m/2} (1 - pi m^{3/2} / (eps sqrt(lambda)))
};

/// Counting function of the Dirichlet cube of side eps. The exact mode
/// throws ErrorKind::scale when eps sqrt(lambda) / pi exceeds 1e4.
double gauss_cube_count(int m, double eps, double lambda, GaussMode mode = GaussMode::exact);

/// Exact counting function of the Dirichlet rectangle (0,a) x (0,b).
std::uint64_t rectangle_counting_function(double a, double b, double lambda);

/// M(eps) N_{C_eps}(lambda) <= N(lambda) by Dirichlet bracketing.
double bracketing_lower_bound(const RasterDomain& domain, double eps, double lambda);

/// The eps that balances the remainder bound: 2 pi m^{3/2} / ((1 - gamma_m) sqrt(lambda)).
double balancing_eps(int m, double lambda);

struct RemainderReport {
  double lambda = 0.0;
  double eps = 0.0;
  bool eps_balanced = false;  // eps chosen by balancing_eps
  double weyl_leading = 0.0;
  std::optional<std::uint64_t> exact_count;
  std::optional<double> remainder;  // weyl_leading - exact_count
  double mu_value = 0.0;            // mu(sqrt(m) eps), capped at the volume
  double upper_bound = 0.0;
};

/// Upper bound on R(lambda) = weyl_leading - N(lambda) from the
/// inner-neighbourhood measure. exact_count, when given, fills the
/// remainder for comparison.
RemainderReport remainder_upper_bound(int m, double volume, const std::function<double(double)>& mu_of,
                                      double lambda, std::optional<double> eps = std::nullopt,
                                      std::optional<std::uint64_t> exact_count = std::nullopt);

/// (2 pi m^2 / ((1 - gamma_m) eps_omega))^2.
double courant_sharp_lambda_bound(int m, double eps_omega);

struct CountBound {
  double count_star = 0.0;
  std::uint64_t threshold_index = 0;  // smallest n with n > count_star
};

/// omega_m (1 - gamma_m)^-m (m^3 (m+2))^{m/2} volume / eps_omega^m.
CountBound courant_sharp_count_bound(int m, double volume, double eps_omega);

struct ConvexBounds {
  double eps_lower = 0.0;    // (1 - gamma_m) volume / (2 perimeter)
  double count_bound = 0.0;  // omega_m (1-gamma_m)^{-2m} (4 m^3 (m+2))^{m/2} perimeter^m / volume^{m-1}
};

ConvexBounds convex_bounds(int m, double volume, double perimeter);

struct BoundReport {
  int m = 0;
  double volume = 0.0;
  double gamma = 0.0;
  double eps_omega = 0.0;
  std::string eps_provenance;
  std::optional<double> resolution_h;
  double lambda_star = 0.0;
  double count_star = 0.0;
  std::uint64_t threshold_index = 0;
};

BoundReport make_bound_report(int m, double volume, double eps_omega, std::string provenance,
                              std::optional<double> resolution_h = std::nullopt);

}  // namespace courant
