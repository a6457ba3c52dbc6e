#pragma once

// One handle over every domain kind the tools accept, with JSON I/O and the
// per-kind choice of measure, mu, critical width and bound report.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "courant/bounds.hpp"
#include "courant/fractals.hpp"
#include "courant/geometry.hpp"
#include "courant/raster.hpp"

namespace courant {

using Domain = std::variant<RasterDomain, ConvexPolygon, Disk, SnowflakeSpec, CubeFractalSpec>;

/// Parses a domain document. Types: raster, polygon, disk, square_fractal,
/// cube_fractal. Throws ErrorKind::validation naming the offending field.
Domain domain_from_json(const nlohmann::json& doc);
Domain read_domain(const std::string& path);

/// Raster masks are nested row-major arrays: mask[iy][ix] or mask[iz][iy][ix].
nlohmann::json domain_to_json(const Domain& domain);
nlohmann::json raster_to_json(const RasterDomain& raster);

std::string domain_type(const Domain& domain);
int domain_dimension(const Domain& domain);
/// Exact measure where the geometry is exact, the raster measure otherwise.
double domain_measure(const Domain& domain);

/// Raster view of the domain. Without h: rasters as given, snowflakes at
/// their finest square size, cube fractals at s^J when 1/s is an odd
/// integer (else 1/64), convex bodies at 1/128.
RasterDomain domain_raster(const Domain& domain, std::optional<double> h = std::nullopt);

/// Evaluator of mu together with the measure it saturates at.
struct MuFunction {
  std::function<double(double)> mu;
  double total = 0.0;
  std::optional<double> resolution_h;
};

MuFunction domain_mu(const Domain& domain);

/// eps(Omega) from exact mu for convex bodies, from the raster otherwise.
EpsilonOmega domain_epsilon(const Domain& domain);

/// With analytic set, convex bodies use the convex lower bound and fractal
/// specs their closed forms; fractal specs always do. Otherwise eps comes
/// from domain_epsilon.
BoundReport domain_bound_report(const Domain& domain, bool analytic);

/// Exact N(lambda) for axis-aligned rectangles (polygon or full raster).
std::optional<std::uint64_t> exact_counting_function(const Domain& domain, double lambda);

}  // namespace courant
