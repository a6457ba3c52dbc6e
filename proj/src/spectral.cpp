#include "courant/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include "courant/error.hpp"

namespace courant {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

namespace {

// Orthonormalizes block against basis[:, :dim] (two Gram-Schmidt passes),
// then within itself; drops numerically dependent columns.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& basis, Eigen::Index dim, Eigen::MatrixXd block) {
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    const double n = block.col(c).norm();
    if (n > 0.0) block.col(c) /= n;
  }
  if (dim > 0) {
    const auto v = basis.leftCols(dim);
    for (int pass = 0; pass < 2; ++pass) block -= v * (v.transpose() * block);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(block);
  qr.setThreshold(1e-8);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), rank);
  if (dim > 0 && rank > 0) {
    const auto v = basis.leftCols(dim);
    q -= v * (v.transpose() * q);
    for (Eigen::Index c = 0; c < q.cols(); ++c) q.col(c).normalize();
  }
  return q;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  if (v[at] < 0.0) v = -v;
}

int connected_components(const LaplacianStencil& op, std::span<const double> values, std::vector<int>& label) {
  const std::size_t n = op.size();
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double zero = kNodalZero * peak;
  auto sign_of = [&](std::size_t r) { return values[r] > zero ? 1 : (values[r] < -zero ? -1 : 0); };

  label.assign(n, -1);
  int count = 0;
  std::deque<std::size_t> queue;
  for (std::size_t seed = 0; seed < n; ++seed) {
    const int s = sign_of(seed);
    if (s == 0 || label[seed] >= 0) continue;
    label[seed] = count;
    queue.push_back(seed);
    while (!queue.empty()) {
      const std::size_t r = queue.front();
      queue.pop_front();
      for (int t = 0; t < op.neighbours; ++t) {
        const std::int64_t nb = op.nbr[r * op.neighbours + t];
        if (nb < 0) continue;
        const auto u = static_cast<std::size_t>(nb);
        if (label[u] < 0 && sign_of(u) == s) {
          label[u] = count;
          queue.push_back(u);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace

std::vector<double> SpectrumResult::grid_vector(int n) const {
  std::vector<double> out(domain->size(), 0.0);
  const auto col = eigenvectors.col(n - 1);
  for (std::size_t r = 0; r < op->size(); ++r) out[op->cell[r]] = col[static_cast<Eigen::Index>(r)];
  return out;
}

std::pair<int, int> SpectrumResult::cluster_range(int n) const {
  const int id = cluster_ids[n - 1];
  int first = n, last = n;
  while (first > 1 && cluster_ids[first - 2] == id) --first;
  while (last < size() && cluster_ids[last] == id) ++last;
  return {first, last + 1};
}

std::vector<int> cluster_eigenvalues(std::span<const double> eigenvalues, double tol) {
  std::vector<int> ids(eigenvalues.size(), 0);
  int id = 0;
  for (std::size_t i = 1; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i] - eigenvalues[i - 1]) > tol * std::abs(eigenvalues[i])) ++id;
    ids[i] = id;
  }
  return ids;
}

SpectrumResult solve_dirichlet_spectrum(const RasterDomain& domain, int k, const SpectrumOptions& options) {
  if (domain.dim() != 2) fail(ErrorKind::validation, "eigen: only 2-D rasters are supported");
  if (k < 1 || k > kMaxEigenpairs) fail(ErrorKind::scale, "eigen: k must lie in [1, 200]");
  auto op = std::make_shared<LaplacianStencil>(make_laplacian_stencil(domain));
  const auto n = static_cast<Eigen::Index>(op->size());
  if (n < 10 * static_cast<Eigen::Index>(k)) {
    fail(ErrorKind::scale, "eigen: raster has " + std::to_string(n) + " cells, need at least 10 k = " +
                               std::to_string(10 * k));
  }

  const Eigen::SparseMatrix<double> a = reference::assemble_laplacian(domain);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> inverse(a);
  if (inverse.info() != Eigen::Success) fail(ErrorKind::numeric, "eigen: sparse factorization failed");

  const Eigen::Index block = std::max(1, std::min(options.block, k));
  const Eigen::Index capacity = std::min<Eigen::Index>(n, std::max<Eigen::Index>(3 * k + 4 * block, k + 60));
  const Eigen::Index keep_on_restart = std::min<Eigen::Index>(capacity - block, k + block);

  Eigen::MatrixXd basis(n, capacity), image(n, capacity);  // V and A V
  Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(capacity, capacity);
  Eigen::Index dim = 0;

  SplitMix64 rng(options.seed);
  Eigen::MatrixXd start(n, block);
  for (Eigen::Index c = 0; c < block; ++c)
    for (Eigen::Index r = 0; r < n; ++r) start(r, c) = rng.uniform() - 0.5;
  Eigen::MatrixXd next = inverse.solve(start);

  Eigen::VectorXd theta;
  Eigen::MatrixXd ritz;  // Ritz coefficients, dim x dim
  Eigen::VectorXd res(k);
  bool converged = false;
  Eigen::MatrixXd fresh_image;

  for (int iter = 0; iter < options.max_iterations && !converged; ++iter) {
    Eigen::MatrixXd fresh = orthonormalize(basis, dim, std::move(next));
    if (fresh.cols() == 0) {
      // Krylov space exhausted; continue from fresh random directions.
      fresh.resize(n, block);
      for (Eigen::Index c = 0; c < block; ++c)
        for (Eigen::Index r = 0; r < n; ++r) fresh(r, c) = rng.uniform() - 0.5;
      fresh = orthonormalize(basis, dim, inverse.solve(fresh));
      if (fresh.cols() == 0) break;
    }
    const Eigen::Index added = std::min(fresh.cols(), capacity - dim);
    kernels::apply_laplacian(*op, fresh.leftCols(added), fresh_image);
    basis.middleCols(dim, added) = fresh.leftCols(added);
    image.middleCols(dim, added) = fresh_image;
    projected.block(0, dim, dim + added, added) = basis.leftCols(dim + added).transpose() * fresh_image;
    projected.block(dim, 0, added, dim) = projected.block(0, dim, dim, added).transpose();
    dim += added;
    projected.topLeftCorner(dim, dim) =
        0.5 * (projected.topLeftCorner(dim, dim) + projected.topLeftCorner(dim, dim).transpose()).eval();

    if (dim >= k + block || dim == n) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(projected.topLeftCorner(dim, dim));
      theta = eig.eigenvalues();
      ritz = eig.eigenvectors();
      const Eigen::Index want = std::min<Eigen::Index>(k, dim);
      const Eigen::MatrixXd y = basis.leftCols(dim) * ritz.leftCols(want);
      const Eigen::MatrixXd ay = image.leftCols(dim) * ritz.leftCols(want);
      converged = want == k;
      for (Eigen::Index i = 0; i < want; ++i) {
        res[i] = (ay.col(i) - theta[i] * y.col(i)).norm();
        if (res[i] > options.tolerance * std::abs(theta[i])) converged = false;
      }
      if (converged) break;
      if (dim + block > capacity) {
        // thick restart on the lowest Ritz vectors
        const Eigen::Index keep = std::min(keep_on_restart, dim);
        Eigen::MatrixXd v = basis.leftCols(dim) * ritz.leftCols(keep);
        Eigen::MatrixXd av = image.leftCols(dim) * ritz.leftCols(keep);
        basis.leftCols(keep) = v;
        image.leftCols(keep) = av;
        projected.setZero();
        projected.topLeftCorner(keep, keep) = theta.head(keep).asDiagonal();
        dim = keep;
        Eigen::MatrixXd seeds(n, block);
        Eigen::Index filled = 0;
        for (Eigen::Index i = 0; i < k && filled < block; ++i) {
          if (res[i] > options.tolerance * std::abs(theta[i])) seeds.col(filled++) = v.col(i);
        }
        for (Eigen::Index i = k; filled < block && i < keep; ++i) seeds.col(filled++) = v.col(i);
        next = inverse.solve(seeds.leftCols(filled));
        continue;
      }
    }
    next = inverse.solve(fresh.leftCols(added));
  }

  if (!converged) {
    std::ostringstream os;
    os << "eigen: no convergence within the iteration budget; worst residuals:";
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(res.size(), theta.size()); ++i) {
      os << " " << res[i] / std::abs(theta[i]);
    }
    fail(ErrorKind::numeric, os.str());
  }

  SpectrumResult out;
  out.domain = std::make_shared<const RasterDomain>(domain);
  out.op = op;
  out.h = domain.spacing();
  out.eigenvectors = basis.leftCols(dim) * ritz.leftCols(k);
  for (int i = 0; i < k; ++i) {
    out.eigenvectors.col(i).normalize();
    fix_sign(out.eigenvectors.col(i));
    out.eigenvalues.push_back(theta[i]);
  }
  Eigen::MatrixXd av;
  kernels::apply_laplacian(*op, out.eigenvectors, av);
  for (int i = 0; i < k; ++i) out.residuals.push_back((av.col(i) - theta[i] * out.eigenvectors.col(i)).norm());
  out.cluster_ids = cluster_eigenvalues(out.eigenvalues);
  return out;
}

NodalDecomposition count_nodal_domains(const RasterDomain& domain, const LaplacianStencil& op,
                                       std::span<const double> values) {
  std::vector<int> label;
  NodalDecomposition d;
  d.domain_count = connected_components(op, values, label);
  d.labels.assign(domain.size(), -1);
  for (std::size_t r = 0; r < op.size(); ++r) d.labels[op.cell[r]] = label[r];
  return d;
}

NodalDecomposition nodal_domains(const SpectrumResult& spectrum, int n) {
  if (n < 1 || n > spectrum.size()) fail(ErrorKind::validation, "nodal: eigen index out of range");
  const auto col = spectrum.eigenvectors.col(n - 1);
  NodalDecomposition d =
      count_nodal_domains(*spectrum.domain, *spectrum.op, std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
  d.eigen_index = n;
  return d;
}

CourantScan courant_sharp_scan(const SpectrumResult& spectrum, const BoundReport& bounds, const ScanOptions& options) {
  CourantScan scan;
  scan.rotations_per_cluster = options.rotations;
  scan.lambda_star = bounds.lambda_star;
  scan.count_star = bounds.count_star;
  const int k = spectrum.size();
  std::vector<int> nu(k, 0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < k; ++i) nu[i] = nodal_domains(spectrum, i + 1).domain_count;

  SplitMix64 rng(options.seed);
  for (int n = 1; n <= k; ++n) {
    CourantRecord rec;
    rec.n = n;
    rec.lambda = spectrum.eigenvalues[n - 1];
    rec.nu = nu[n - 1];
    const auto [first, end] = spectrum.cluster_range(n);
    rec.first_of_cluster = first == n;
    if (rec.first_of_cluster) {
      rec.nu_best = 0;
      for (int i = first; i < end; ++i) rec.nu_best = std::max(rec.nu_best, nu[i - 1]);
      const int width = end - first;
      if (width > 1) {
        const auto cluster = spectrum.eigenvectors.middleCols(first - 1, width);
        for (int r = 0; r < options.rotations; ++r) {
          Eigen::VectorXd c(width);
          for (int t = 0; t < width; ++t) c[t] = rng.normal();
          c.normalize();
          const Eigen::VectorXd v = cluster * c;
          const auto d = count_nodal_domains(*spectrum.domain, *spectrum.op,
                                             std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
          rec.nu_best = std::max(rec.nu_best, d.domain_count);
        }
      }
      rec.courant_sharp = rec.nu_best == n;
    } else {
      rec.nu_best = rec.nu;
    }
    if (rec.nu > n || rec.nu_best > n) ++scan.courant_violations;
    if (rec.courant_sharp) {
      scan.sharp_set.push_back(n);
      if (rec.lambda > bounds.lambda_star || static_cast<double>(n) > bounds.count_star) scan.bounds_dominate = false;
    }
    scan.records.push_back(rec);
  }
  return scan;
}

PleijelRatios pleijel_ratio(const SpectrumResult& spectrum) {
  PleijelRatios out;
  const int k = spectrum.size();
  std::vector<double> ratio(k);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < k; ++i) ratio[i] = static_cast<double>(nodal_domains(spectrum, i + 1).domain_count) / (i + 1);
  for (int n = 1; n <= k; ++n) {
    out.ratios.emplace_back(n, ratio[n - 1]);
    if (2 * n >= k) out.max_upper_half = std::max(out.max_upper_half, ratio[n - 1]);
  }
  return out;
}

}  // namespace courant
