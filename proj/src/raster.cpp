#include "courant/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "courant/error.hpp"
#include "courant/kernels.hpp"

namespace courant {

RasterDomain::RasterDomain(int m, double h, Vec3 origin, Index3 dims, std::vector<std::uint8_t> mask)
    : m_(m), h_(h), origin_(origin), dims_(dims), mask_(std::move(mask)) {
  if (m_ != 2 && m_ != 3) fail(ErrorKind::validation, "raster: dimension must be 2 or 3");
  if (m_ == 2) dims_[2] = 1;
  if (!(h_ > 0.0) || !std::isfinite(h_)) fail(ErrorKind::validation, "raster: spacing h must be positive");
  for (int a = 0; a < m_; ++a) {
    if (dims_[a] < 3) fail(ErrorKind::validation, "raster: each axis needs at least 3 cells");
  }
  const std::size_t expected = static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
  if (mask_.size() != expected) {
    fail(ErrorKind::validation, "raster: mask has " + std::to_string(mask_.size()) + " cells, expected " +
                                    std::to_string(expected));
  }
  std::size_t idx = 0;
  for (int k = 0; k < dims_[2]; ++k)
    for (int j = 0; j < dims_[1]; ++j)
      for (int i = 0; i < dims_[0]; ++i, ++idx) {
        if (!mask_[idx]) continue;
        mask_[idx] = 1;
        ++inside_count_;
        const bool border = i == 0 || j == 0 || i == dims_[0] - 1 || j == dims_[1] - 1 ||
                            (m_ == 3 && (k == 0 || k == dims_[2] - 1));
        if (border) fail(ErrorKind::validation, "raster: mask touches the array border");
      }
  if (inside_count_ == 0) fail(ErrorKind::validation, "raster: mask is empty");
}

double RasterDomain::measure() const { return static_cast<double>(inside_count_) * std::pow(h_, m_); }

double RasterDomain::diagonal() const {
  double s = 0.0;
  for (int a = 0; a < m_; ++a) s += std::pow(dims_[a] * h_, 2);
  return std::sqrt(s);
}

Index3 RasterDomain::coords(std::size_t idx) const {
  const auto nx = static_cast<std::size_t>(dims_[0]);
  const auto ny = static_cast<std::size_t>(dims_[1]);
  return {static_cast<int>(idx % nx), static_cast<int>((idx / nx) % ny), static_cast<int>(idx / (nx * ny))};
}

Vec3 RasterDomain::center(std::size_t idx) const {
  const Index3 c = coords(idx);
  return {origin_[0] + (c[0] + 0.5) * h_, origin_[1] + (c[1] + 0.5) * h_,
          m_ == 3 ? origin_[2] + (c[2] + 0.5) * h_ : 0.0};
}

GridFrame frame_for_bounds(int m, double h, const Vec3& lo, const Vec3& hi) {
  if (!(h > 0.0)) fail(ErrorKind::validation, "raster: spacing h must be positive");
  GridFrame f;
  f.m = m;
  f.h = h;
  for (int a = 0; a < 3; ++a) {
    if (a >= m) {
      f.origin[a] = 0.0;
      f.dims[a] = 1;
      continue;
    }
    // Snap to the h-lattice, tolerating round-off in lo/h.
    const double first = std::floor(lo[a] / h + 1e-9);
    const double last = std::ceil(hi[a] / h - 1e-9);
    f.origin[a] = (first - 1.0) * h;
    const double cells = last - first + 2.0;
    if (cells > 2.0e5) fail(ErrorKind::scale, "raster: too many cells along one axis");
    f.dims[a] = static_cast<int>(cells);
  }
  const double total = static_cast<double>(f.dims[0]) * f.dims[1] * f.dims[2];
  if (total > 4.0e8) fail(ErrorKind::scale, "raster: grid exceeds the desk-scale cell budget");
  return f;
}

RasterDomain rasterize_boxes(const GridFrame& frame, std::span<const Box> boxes) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(frame.dims[0]) * frame.dims[1] * frame.dims[2], 0);
  const std::size_t overlaps = kernels::paint_boxes(frame, boxes, mask);
  if (overlaps != 0) {
    fail(ErrorKind::invariant, "raster: " + std::to_string(overlaps) + " cells claimed by more than one box");
  }
  return RasterDomain(frame.m, frame.h, frame.origin, frame.dims, std::move(mask));
}

}  // namespace courant
