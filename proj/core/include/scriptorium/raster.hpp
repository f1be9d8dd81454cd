#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "scriptorium/errors.hpp"

namespace scriptorium {

/// Integer pixel location. The row axis grows downward, columns to the right.
struct Pixel {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Sub-pixel location, used for component centroids and polygon vertices.
struct Point {
  double row = 0.0;
  double col = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class Connectivity { Four = 4, Eight = 8 };

/// Dense row-major 2-D grid. Sized construction requires at least 1x1;
/// a default-constructed raster is the empty placeholder.
template <typename T>
class Raster {
 public:
  Raster() = default;

  Raster(int rows, int cols, T fill = T()) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw InputError("raster dimensions must be at least 1x1");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  bool in_bounds(int r, int c) const { return r >= 0 && r < rows_ && c >= 0 && c < cols_; }

  T& operator()(int r, int c) {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  T* row_ptr(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  const T* row_ptr(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  template <typename U>
  bool same_shape(const Raster<U>& other) const {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using MaskRaster = Raster<std::uint8_t>;  // 0 = background, nonzero = foreground
using GrayRaster = Raster<double>;

template <typename T>
Raster<T> flip_horizontal(const Raster<T>& in) {
  Raster<T> out(in.rows(), in.cols());
  for (int r = 0; r < in.rows(); ++r)
    for (int c = 0; c < in.cols(); ++c) out(r, c) = in(r, in.cols() - 1 - c);
  return out;
}

template <typename T>
Raster<T> flip_vertical(const Raster<T>& in) {
  Raster<T> out(in.rows(), in.cols());
  for (int r = 0; r < in.rows(); ++r)
    for (int c = 0; c < in.cols(); ++c) out(r, c) = in(in.rows() - 1 - r, c);
  return out;
}

template <typename T>
Raster<T> rotate90_cw(const Raster<T>& in) {
  Raster<T> out(in.cols(), in.rows());
  for (int r = 0; r < in.rows(); ++r)
    for (int c = 0; c < in.cols(); ++c) out(c, in.rows() - 1 - r) = in(r, c);
  return out;
}

}  // namespace scriptorium
