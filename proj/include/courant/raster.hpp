#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace courant {

using Vec3 = std::array<double, 3>;
using Index3 = std::array<int, 3>;

/// Axis-aligned box [lo, hi) in m <= 3 dimensions (unused axes ignored).
struct Box {
  Vec3 lo{};
  Vec3 hi{};
};

/// An open set given as a union of open grid cells. Cell (i, j, k) covers
/// origin + [i, i+1) x [j, j+1) x [k, k+1) times h; flat index i + nx (j + ny k).
/// Border cells of the array are outside, so the set sits strictly inside
/// the bounding box.
class RasterDomain {
 public:
  RasterDomain(int m, double h, Vec3 origin, Index3 dims, std::vector<std::uint8_t> mask);

  int dim() const { return m_; }
  double spacing() const { return h_; }
  const Vec3& origin() const { return origin_; }
  const Index3& dims() const { return dims_; }
  std::size_t size() const { return mask_.size(); }
  std::span<const std::uint8_t> mask() const { return mask_; }
  bool inside(std::size_t idx) const { return mask_[idx] != 0; }
  std::size_t inside_count() const { return inside_count_; }

  /// Lebesgue measure of the represented set: (#inside cells) h^m.
  double measure() const;
  /// Diagonal of the bounding box of the whole array.
  double diagonal() const;

  std::size_t index(int i, int j, int k = 0) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims_[0]) * (static_cast<std::size_t>(j) +
                                                 static_cast<std::size_t>(dims_[1]) * static_cast<std::size_t>(k));
  }
  Index3 coords(std::size_t idx) const;
  Vec3 center(std::size_t idx) const;

 private:
  int m_;
  double h_;
  Vec3 origin_;
  Index3 dims_;
  std::vector<std::uint8_t> mask_;
  std::size_t inside_count_ = 0;
};

/// Grid frame used by the rasterizers: origin snapped to a multiple of h and
/// one padding cell on every side of [lo, hi].
struct GridFrame {
  int m = 2;
  double h = 0.0;
  Vec3 origin{};
  Index3 dims{1, 1, 1};
};

GridFrame frame_for_bounds(int m, double h, const Vec3& lo, const Vec3& hi);

/// Paints half-open boxes into a raster (cell centre test). Throws
/// ErrorKind::invariant when two boxes claim the same cell.
RasterDomain rasterize_boxes(const GridFrame& frame, std::span<const Box> boxes);

/// Cell-centre test of an arbitrary predicate, for curved or polygonal sets.
template <class Inside>
RasterDomain rasterize_predicate(const GridFrame& frame, Inside&& inside) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(frame.dims[0]) * frame.dims[1] * frame.dims[2], 0);
  std::size_t idx = 0;
  for (int k = 0; k < frame.dims[2]; ++k)
    for (int j = 0; j < frame.dims[1]; ++j)
      for (int i = 0; i < frame.dims[0]; ++i, ++idx) {
        const bool border = i == 0 || j == 0 || i == frame.dims[0] - 1 || j == frame.dims[1] - 1 ||
                            (frame.m == 3 && (k == 0 || k == frame.dims[2] - 1));
        if (border) continue;
        const Vec3 c{frame.origin[0] + (i + 0.5) * frame.h, frame.origin[1] + (j + 0.5) * frame.h,
                     frame.m == 3 ? frame.origin[2] + (k + 0.5) * frame.h : 0.0};
        mask[idx] = inside(c) ? 1 : 0;
      }
  return RasterDomain(frame.m, frame.h, frame.origin, frame.dims, std::move(mask));
}

}  // namespace courant
