#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>

namespace tileinspect {

/// Row-major dense 2-D grid; every raster and matrix in the pipeline is one.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

/// Single-channel 8-bit intensity image (F in the enhancement step).
using GrayImage = Grid<std::uint8_t>;

/// Non-negative integer gradient magnitude, same shape as its source.
using GradientImage = Grid<std::int32_t>;

/// 0/1 matrix; true marks a "black" (defect-candidate) pixel.
using BinaryMatrix = Grid<bool>;

/// Returns `src` surrounded by `radius` rows/columns replicating the border.
template <typename Derived>
Grid<typename Derived::Scalar> pad_replicate(const Eigen::DenseBase<Derived>& src, Index radius) {
  const Index rows = src.rows();
  const Index cols = src.cols();
  Grid<typename Derived::Scalar> out(rows + 2 * radius, cols + 2 * radius);
  for (Index r = 0; r < out.rows(); ++r) {
    const Index sr = std::clamp<Index>(r - radius, 0, rows - 1);
    for (Index c = 0; c < out.cols(); ++c) {
      const Index sc = std::clamp<Index>(c - radius, 0, cols - 1);
      out(r, c) = src(sr, sc);
    }
  }
  return out;
}

/// Returns `src` surrounded by `radius` rows/columns of `value`.
template <typename Derived>
Grid<typename Derived::Scalar> pad_constant(const Eigen::DenseBase<Derived>& src, Index radius,
                                            typename Derived::Scalar value) {
  Grid<typename Derived::Scalar> out =
      Grid<typename Derived::Scalar>::Constant(src.rows() + 2 * radius, src.cols() + 2 * radius, value);
  out.block(radius, radius, src.rows(), src.cols()) = src;
  return out;
}

}  // namespace tileinspect
