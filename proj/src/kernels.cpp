#include "courant/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "courant/error.hpp"

namespace courant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineLayout {
  std::size_t count = 0;   // number of lines along the axis
  std::size_t length = 0;  // cells per line
  std::size_t stride = 0;
};

LineLayout line_layout(const Index3& dims, int axis) {
  const std::size_t nx = dims[0], ny = dims[1], nz = dims[2];
  const std::size_t total = nx * ny * nz;
  const std::size_t length = static_cast<std::size_t>(dims[axis]);
  const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? nx : nx * ny);
  return {total / length, length, stride};
}

std::size_t line_base(const Index3& dims, int axis, std::size_t line) {
  const std::size_t nx = dims[0], ny = dims[1];
  switch (axis) {
    case 0:
      return line * nx;
    case 1:
      return (line % nx) + nx * ny * (line / nx);
    default:
      return line;
  }
}

// One axis of the transform on a single line. Parabolas sit at the
// half-integer faces m + 1/2 with height min(f(m), f(m+1)); a cell keeps its
// own value when that is smaller (zero offset along this axis).
void transform_line(std::span<double> f, std::vector<double>& pos, std::vector<double>& height,
                    std::vector<int>& v, std::vector<double>& z, std::vector<double>& out) {
  const int n = static_cast<int>(f.size());
  pos.clear();
  height.clear();
  for (int m = -1; m < n; ++m) {
    const double a = m >= 0 ? f[m] : kInf;
    const double b = m + 1 < n ? f[m + 1] : kInf;
    const double hgt = std::min(a, b);
    if (hgt < kInf) {
      pos.push_back(m + 0.5);
      height.push_back(hgt);
    }
  }
  out.assign(f.begin(), f.end());
  if (pos.empty()) return;

  const int np = static_cast<int>(pos.size());
  v.assign(np, 0);
  z.assign(np + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < np; ++q) {
    double s = 0.0;
    while (true) {
      const int r = v[k];
      s = ((height[q] + pos[q] * pos[q]) - (height[r] + pos[r] * pos[r])) / (2.0 * (pos[q] - pos[r]));
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    if (s <= z[k]) {
      // k == 0 and the new parabola dominates everywhere
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int x = 0; x < n; ++x) {
    while (z[k + 1] < x) ++k;
    const double d = x - pos[v[k]];
    out[x] = std::min(f[x], d * d + height[v[k]]);
  }
}

std::array<int, 2> cell_range(double lo, double hi, double origin, double h, int n) {
  int a = static_cast<int>(std::ceil((lo - origin) / h - 0.5));
  int b = static_cast<int>(std::ceil((hi - origin) / h - 0.5));
  a = std::clamp(a, 1, n - 1);
  b = std::clamp(b, 1, n - 1);
  return {a, b};
}

std::uint64_t count_line(double radius_sq) {
  if (radius_sq <= 1.0) return 0;
  auto k = static_cast<std::int64_t>(std::floor(std::sqrt(radius_sq)));
  while (k > 0 && static_cast<double>(k) * static_cast<double>(k) >= radius_sq) --k;
  while (static_cast<double>(k + 1) * static_cast<double>(k + 1) < radius_sq) ++k;
  return static_cast<std::uint64_t>(std::max<std::int64_t>(k, 0));
}

std::uint64_t count_recursive(int m, double radius_sq) {
  if (m == 1) return count_line(radius_sq);
  std::uint64_t total = 0;
  for (std::int64_t k = 1; static_cast<double>(k) * static_cast<double>(k) < radius_sq; ++k) {
    total += count_recursive(m - 1, radius_sq - static_cast<double>(k) * static_cast<double>(k));
  }
  return total;
}

}  // namespace

LaplacianStencil make_laplacian_stencil(const RasterDomain& domain) {
  LaplacianStencil op;
  const int m = domain.dim();
  op.neighbours = 2 * m;
  op.inv_h2 = 1.0 / (domain.spacing() * domain.spacing());
  op.unknown.assign(domain.size(), -1);
  for (std::size_t idx = 0; idx < domain.size(); ++idx) {
    if (domain.inside(idx)) {
      op.unknown[idx] = static_cast<std::int64_t>(op.cell.size());
      op.cell.push_back(idx);
    }
  }
  const Index3& d = domain.dims();
  const std::size_t strides[3] = {1, static_cast<std::size_t>(d[0]), static_cast<std::size_t>(d[0]) * d[1]};
  op.nbr.assign(op.cell.size() * op.neighbours, -1);
  op.diag.assign(op.cell.size(), 0.0);
  for (std::size_t r = 0; r < op.cell.size(); ++r) {
    const std::size_t idx = op.cell[r];
    double diag = 0.0;
    for (int a = 0; a < m; ++a) {
      // border cells are outside, so idx +- stride stays in range
      const std::int64_t lo = op.unknown[idx - strides[a]];
      const std::int64_t hi = op.unknown[idx + strides[a]];
      op.nbr[r * op.neighbours + 2 * a] = lo;
      op.nbr[r * op.neighbours + 2 * a + 1] = hi;
      diag += lo >= 0 ? 1.0 : 2.0;
      diag += hi >= 0 ? 1.0 : 2.0;
    }
    op.diag[r] = diag;
  }
  return op;
}

namespace kernels {

std::vector<double> boundary_distance_sq(const RasterDomain& domain) {
  std::vector<double> f(domain.size());
  const auto mask = domain.mask();
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = mask[i] ? kInf : 0.0;

  for (int axis = 0; axis < domain.dim(); ++axis) {
    const LineLayout layout = line_layout(domain.dims(), axis);
    const auto lines = static_cast<std::int64_t>(layout.count);
#pragma omp parallel
    {
      std::vector<double> line(layout.length), pos, height, z, out;
      std::vector<int> v;
#pragma omp for schedule(static)
      for (std::int64_t l = 0; l < lines; ++l) {
        const std::size_t base = line_base(domain.dims(), axis, static_cast<std::size_t>(l));
        for (std::size_t t = 0; t < layout.length; ++t) line[t] = f[base + t * layout.stride];
        transform_line(line, pos, height, v, z, out);
        for (std::size_t t = 0; t < layout.length; ++t) f[base + t * layout.stride] = out[t];
      }
    }
  }
  return f;
}

void apply_laplacian(const LaplacianStencil& op, const Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
  const auto n = static_cast<std::int64_t>(op.size());
  const int stencil = op.neighbours;
  y.resize(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double* xc = x.col(c).data();
    double* yc = y.col(c).data();
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
      double acc = op.diag[r] * xc[r];
      const std::int64_t* nb = &op.nbr[static_cast<std::size_t>(r) * stencil];
      for (int t = 0; t < stencil; ++t) {
        if (nb[t] >= 0) acc -= xc[nb[t]];
      }
      yc[r] = acc * op.inv_h2;
    }
  }
}

std::uint64_t count_lattice_points(int m, double radius_sq) {
  if (m < 1) fail(ErrorKind::validation, "lattice count: dimension must be positive");
  if (m == 1) return count_line(radius_sq);
  std::int64_t kmax = 0;
  while (static_cast<double>(kmax + 1) * static_cast<double>(kmax + 1) < radius_sq) ++kmax;
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 16)
  for (std::int64_t k = 1; k <= kmax; ++k) {
    total += count_recursive(m - 1, radius_sq - static_cast<double>(k) * static_cast<double>(k));
  }
  return total;
}

std::size_t paint_boxes(const GridFrame& frame, std::span<const Box> boxes, std::vector<std::uint8_t>& mask) {
  const auto nb = static_cast<std::int64_t>(boxes.size());
  const std::size_t nx = frame.dims[0], ny = frame.dims[1];
  std::size_t overlaps = 0;
#pragma omp parallel for reduction(+ : overlaps) schedule(dynamic, 64)
  for (std::int64_t b = 0; b < nb; ++b) {
    const Box& box = boxes[b];
    const auto rx = cell_range(box.lo[0], box.hi[0], frame.origin[0], frame.h, frame.dims[0]);
    const auto ry = cell_range(box.lo[1], box.hi[1], frame.origin[1], frame.h, frame.dims[1]);
    const auto rz = frame.m == 3 ? cell_range(box.lo[2], box.hi[2], frame.origin[2], frame.h, frame.dims[2])
                                 : std::array<int, 2>{0, 1};
    for (int k = rz[0]; k < rz[1]; ++k)
      for (int j = ry[0]; j < ry[1]; ++j)
        for (int i = rx[0]; i < rx[1]; ++i) {
          const std::size_t idx = i + nx * (j + ny * k);
          std::uint8_t before;
#pragma omp atomic capture
          before = mask[idx]++;
          if (before != 0) ++overlaps;
        }
  }
  return overlaps;
}

}  // namespace kernels

namespace reference {

std::vector<double> boundary_distance_sq(const RasterDomain& domain) {
  const int m = domain.dim();
  const Index3& d = domain.dims();
  // outside cells sharing a face with the set
  std::vector<Index3> shell;
  for (std::size_t idx = 0; idx < domain.size(); ++idx) {
    if (domain.inside(idx)) continue;
    const Index3 c = domain.coords(idx);
    bool touches = false;
    for (int a = 0; a < m && !touches; ++a) {
      for (int s : {-1, 1}) {
        Index3 n = c;
        n[a] += s;
        if (n[a] < 0 || n[a] >= d[a]) continue;
        if (domain.inside(domain.index(n[0], n[1], n[2]))) touches = true;
      }
    }
    if (touches) shell.push_back(c);
  }
  std::vector<double> out(domain.size(), 0.0);
  for (std::size_t idx = 0; idx < domain.size(); ++idx) {
    if (!domain.inside(idx)) continue;
    const Index3 c = domain.coords(idx);
    double best = kInf;
    for (const Index3& o : shell) {
      // gap from the centre of c to the closed unit cell o, per axis
      double s = 0.0;
      for (int a = 0; a < m; ++a) {
        const double gap = std::max(0.0, std::abs(static_cast<double>(c[a] - o[a])) - 0.5);
        s += gap * gap;
      }
      best = std::min(best, s);
    }
    out[idx] = best;
  }
  return out;
}

Eigen::SparseMatrix<double> assemble_laplacian(const RasterDomain& domain) {
  const LaplacianStencil op = make_laplacian_stencil(domain);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(op.size() * (op.neighbours + 1));
  for (std::size_t r = 0; r < op.size(); ++r) {
    t.emplace_back(r, r, op.diag[r] * op.inv_h2);
    for (int k = 0; k < op.neighbours; ++k) {
      const std::int64_t c = op.nbr[r * op.neighbours + k];
      if (c >= 0) t.emplace_back(r, c, -op.inv_h2);
    }
  }
  Eigen::SparseMatrix<double> a(op.size(), op.size());
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

void apply_laplacian(const Eigen::SparseMatrix<double>& a, const Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
  y = a * x;
}

std::uint64_t count_lattice_points(int m, double radius_sq) {
  if (radius_sq <= static_cast<double>(m)) return 0;
  const auto kmax = static_cast<int>(std::floor(std::sqrt(radius_sq)));
  std::vector<int> k(m, 1);
  std::uint64_t count = 0;
  while (true) {
    double s = 0.0;
    for (int v : k) s += static_cast<double>(v) * v;
    if (s < radius_sq) ++count;
    int a = 0;
    while (a < m && k[a] == kmax) k[a++] = 1;
    if (a == m) break;
    ++k[a];
  }
  return count;
}

std::size_t paint_boxes(const GridFrame& frame, std::span<const Box> boxes, std::vector<std::uint8_t>& mask) {
  std::size_t overlaps = 0;
  std::size_t idx = 0;
  for (int k = 0; k < frame.dims[2]; ++k)
    for (int j = 0; j < frame.dims[1]; ++j)
      for (int i = 0; i < frame.dims[0]; ++i, ++idx) {
        const bool border = i == 0 || j == 0 || i == frame.dims[0] - 1 || j == frame.dims[1] - 1 ||
                            (frame.m == 3 && (k == 0 || k == frame.dims[2] - 1));
        if (border) continue;
        const Vec3 c{frame.origin[0] + (i + 0.5) * frame.h, frame.origin[1] + (j + 0.5) * frame.h,
                     frame.origin[2] + (k + 0.5) * frame.h};
        int hits = 0;
        for (const Box& b : boxes) {
          bool in = true;
          for (int a = 0; a < frame.m; ++a) in = in && c[a] >= b.lo[a] && c[a] < b.hi[a];
          if (in) ++hits;
        }
        mask[idx] = static_cast<std::uint8_t>(mask[idx] + hits);
        if (hits > 1) overlaps += hits - 1;
      }
  return overlaps;
}

}  // namespace reference

}  // namespace courant
