#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "courant/bounds.hpp"
#include "courant/kernels.hpp"
#include "courant/raster.hpp"

namespace courant {

inline constexpr int kMaxEigenpairs = 200;
inline constexpr double kClusterTolerance = 1e-6;
/// Entries with |v| <= kNodalZero * max|v| count as nodal (unlabelled).
inline constexpr double kNodalZero = 1e-6;

struct SpectrumOptions {
  std::uint64_t seed = 1;
  double tolerance = 1e-10;  // residual / eigenvalue
  int block = 8;
  int max_iterations = 2000;
};

struct SpectrumResult {
  std::shared_ptr<const RasterDomain> domain;
  std::shared_ptr<const LaplacianStencil> op;
  double h = 0.0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // |A v - lambda v| / |v|
  std::vector<int> cluster_ids;
  Eigen::MatrixXd eigenvectors;  // one column per eigenpair over the inside cells, unit 2-norm

  int size() const { return static_cast<int>(eigenvalues.size()); }
  /// Eigenvector n (1-based) on the full grid, zero outside.
  std::vector<double> grid_vector(int n) const;
  /// First and one-past-last 1-based index of the cluster containing n.
  std::pair<int, int> cluster_range(int n) const;
};

/// k lowest eigenpairs of the Dirichlet finite-difference Laplacian on a
/// 2-D raster. Throws ErrorKind::scale when k > 200 or the raster has fewer
/// than 10 k cells, ErrorKind::numeric when the iteration budget runs out.
SpectrumResult solve_dirichlet_spectrum(const RasterDomain& domain, int k, const SpectrumOptions& options = {});

/// Groups consecutive eigenvalues whose relative gap is within tol.
std::vector<int> cluster_eigenvalues(std::span<const double> eigenvalues, double tol = kClusterTolerance);

struct NodalDecomposition {
  int eigen_index = 0;
  int domain_count = 0;
  std::vector<int> labels;  // per grid cell; -1 outside or on the nodal set
};

/// Sign components (4-connected) of values given on the inside cells of op.
NodalDecomposition count_nodal_domains(const RasterDomain& domain, const LaplacianStencil& op,
                                       std::span<const double> values);
NodalDecomposition nodal_domains(const SpectrumResult& spectrum, int n);

struct CourantRecord {
  int n = 0;
  double lambda = 0.0;
  int nu = 0;         // nodal count of the computed eigenvector
  int nu_best = 0;    // max over the cluster's computed vectors and rotations (first index only)
  bool first_of_cluster = false;
  bool courant_sharp = false;  // witnessed; never "provably not sharp"
};

struct CourantScan {
  std::vector<CourantRecord> records;
  std::vector<int> sharp_set;
  int rotations_per_cluster = 0;
  int courant_violations = 0;   // records with nu > n
  bool bounds_dominate = true;  // every sharp (n, lambda_n) within the report's bounds
  double lambda_star = 0.0;
  double count_star = 0.0;
};

struct ScanOptions {
  int rotations = 8;
  std::uint64_t seed = 7;
};

CourantScan courant_sharp_scan(const SpectrumResult& spectrum, const BoundReport& bounds,
                               const ScanOptions& options = {});

struct PleijelRatios {
  std::vector<std::pair<int, double>> ratios;  // (n, nu_n / n)
  double max_upper_half = 0.0;                 // max ratio over n in [k/2, k]
};

PleijelRatios pleijel_ratio(const SpectrumResult& spectrum);

/// Deterministic 64-bit generator for start vectors and rotations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace courant
