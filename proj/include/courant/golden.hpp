#pragma once

// Reference values the tools can check themselves against (--paper-check).

#include <optional>
#include <string>
#include <vector>

#include "courant/bounds.hpp"
#include "courant/domain.hpp"
#include "courant/spectral.hpp"

namespace courant::golden {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool all_passed(const std::vector<Check>& checks);

bool is_unit_square(const Domain& domain);
bool is_unit_disk(const Domain& domain);

/// Heights of the distinct levels of a spectrum, grouping values whose
/// relative gap is within tol (a staircase boundary splits multiplicities).
std::vector<double> distinct_levels(const std::vector<double>& eigenvalues, double tol);

std::vector<Check> check_bounds(const Domain& domain, const BoundReport& report, bool analytic);
std::vector<Check> check_snowflake(const SnowflakeSpec& spec, const std::optional<RasterDomain>& raster);
std::vector<Check> check_cubes(const CubeFractalSpec& spec);
std::vector<Check> check_verify(const Domain& domain, const SpectrumResult& spectrum, const CourantScan& scan);

}  // namespace courant::golden
