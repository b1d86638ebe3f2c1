// Independent reference implementations used to cross-check the library.
// Deliberately naive: no summed-area tables, no BFS, 1-indexed where the
// paper's algorithms are.
#pragma once

#include "tileinspect/classify.hpp"
#include "tileinspect/rng.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

using tileinspect::Index;
using tileinspect::LabelMatrix;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Largest 8-connected component of cells equal to `value`.
inline Index max_component(const LabelMatrix& m, std::uint8_t value) {
  const Index rows = m.rows(), cols = m.cols();
  UnionFind uf(static_cast<std::size_t>(rows * cols));
  auto id = [&](Index r, Index c) { return static_cast<std::size_t>(r * cols + c); };
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      if (m(r, c) != value) continue;
      // Only "backward" neighbours; unions are symmetric.
      const Index nb[4][2] = {{r, c - 1}, {r - 1, c - 1}, {r - 1, c}, {r - 1, c + 1}};
      for (const auto& n : nb) {
        if (n[0] >= 0 && n[1] >= 0 && n[1] < cols && m(n[0], n[1]) == value) uf.unite(id(r, c), id(n[0], n[1]));
      }
    }
  }
  Index best = 0;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      if (m(r, c) == value) best = std::max<Index>(best, static_cast<Index>(uf.size_of(id(r, c))));
  return best;
}

/// Pinhole count by the literal 1-indexed region definition.
inline Index pinhole_count(const LabelMatrix& m, int c_range, int e_range) {
  const Index rows = m.rows(), cols = m.cols();
  auto at = [&](Index i, Index j) -> int {  // 1-indexed, out of image reads as -1
    if (i < 1 || j < 1 || i > rows || j > cols) return -1;
    return m(i - 1, j - 1);
  };
  Index count = 0;
  for (Index i = 1; i <= rows; ++i) {
    for (Index j = 1; j <= cols; ++j) {
      if (!(e_range < i && i <= rows - e_range && e_range < j && j <= cols - e_range)) continue;
      const bool corner_row = i <= c_range || i > rows - c_range;
      const bool corner_col = j <= c_range || j > cols - c_range;
      if (corner_row && corner_col) continue;
      if (at(i, j) != 0) continue;
      if (at(i - 1, j) == 1 && at(i + 1, j) == 1 && at(i, j - 1) == 1 && at(i, j + 1) == 1 &&
          at(i - 1, j - 1) == 0 && at(i - 1, j + 1) == 0 && at(i + 1, j - 1) == 0 && at(i + 1, j + 1) == 0)
        ++count;
    }
  }
  return count;
}

/// Every centre whose k x k neighbourhood is all 2, checked cell by cell.
inline std::vector<tileinspect::Cell> square_blocks(const LabelMatrix& m, Index k) {
  std::vector<tileinspect::Cell> out;
  const Index h = k / 2;
  for (Index r = h; r + h < m.rows(); ++r) {
    for (Index c = h; c + h < m.cols(); ++c) {
      bool all = true;
      for (Index dr = -h; dr <= h && all; ++dr)
        for (Index dc = -h; dc <= h && all; ++dc) all = m(r + dr, c + dc) == 2;
      if (all) out.push_back({r, c});
    }
  }
  return out;
}

/// Random label matrix with values weighted towards 0/1 and a few planted plus patterns.
inline LabelMatrix random_label(tileinspect::SplitMix64& rng, Index rows, Index cols) {
  LabelMatrix m(rows, cols);
  const double p1 = 0.2 + 0.4 * rng.unit();
  const double p2 = 0.3 * rng.unit();
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double u = rng.unit();
      m(r, c) = u < p1 ? 1 : u < p1 + p2 ? 2 : u < p1 + p2 + 0.03 ? 3 : 0;
    }
  }
  const auto plants = rng.uniform(0, 4);
  for (int p = 0; p < plants && rows >= 3 && cols >= 3; ++p) {
    const Index r = rng.uniform(1, rows - 1), c = rng.uniform(1, cols - 1);
    for (Index dr = -1; dr <= 1; ++dr)
      for (Index dc = -1; dc <= 1; ++dc) m(r + dr, c + dc) = (dr == 0) != (dc == 0) ? 1 : 0;
  }
  // Occasionally a solid block so square windows have something to find.
  if (rng.unit() < 0.5 && rows >= 3 && cols >= 3) {
    const Index h = rng.uniform(3, std::min<Index>(rows, 12) + 1);
    const Index w = rng.uniform(3, std::min<Index>(cols, 12) + 1);
    const Index r0 = rng.uniform(0, rows - h + 1), c0 = rng.uniform(0, cols - w + 1);
    m.block(r0, c0, h, w) = 2;
  }
  return m;
}

/// One 8-connected region of 2s on a field of 0s, built from overlapping random
/// rectangles and disks, then cut down to its largest component.
inline LabelMatrix random_region(tileinspect::SplitMix64& rng, Index size) {
  LabelMatrix m = LabelMatrix::Zero(size, size);
  Index r = size / 2, c = size / 2;
  const auto pieces = rng.uniform(1, 6);
  for (int p = 0; p < pieces; ++p) {
    const Index rad = rng.uniform(1, 8);
    if (rng.unit() < 0.5) {
      for (Index dr = -rad; dr <= rad; ++dr)
        for (Index dc = -rad; dc <= rad; ++dc)
          if (dr * dr + dc * dc <= rad * rad && r + dr >= 0 && c + dc >= 0 && r + dr < size && c + dc < size)
            m(r + dr, c + dc) = 2;
    } else {
      const Index h = rng.uniform(1, 2 * rad + 2), w = rng.uniform(1, 2 * rad + 2);
      for (Index dr = 0; dr < h; ++dr)
        for (Index dc = 0; dc < w; ++dc)
          if (r + dr < size && c + dc < size) m(r + dr, c + dc) = 2;
    }
    r = std::clamp<Index>(r + rng.uniform(-rad, rad + 1), 0, size - 1);
    c = std::clamp<Index>(c + rng.uniform(-rad, rad + 1), 0, size - 1);
  }
  // Keep only the component holding the first 2 in raster order (flood fill by hand).
  LabelMatrix keep = LabelMatrix::Zero(size, size);
  std::vector<std::pair<Index, Index>> stack;
  for (Index i = 0; i < m.size() && stack.empty(); ++i)
    if (m.data()[i] == 2) stack.emplace_back(i / size, i % size);
  while (!stack.empty()) {
    const auto [rr, cc] = stack.back();
    stack.pop_back();
    if (rr < 0 || cc < 0 || rr >= size || cc >= size || m(rr, cc) != 2 || keep(rr, cc)) continue;
    keep(rr, cc) = 2;
    for (Index dr = -1; dr <= 1; ++dr)
      for (Index dc = -1; dc <= 1; ++dc) stack.emplace_back(rr + dr, cc + dc);
  }
  return keep;
}

}  // namespace oracle
