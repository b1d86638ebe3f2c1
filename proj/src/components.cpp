#include "tileinspect/components.hpp"

#include <deque>

namespace tileinspect {

Components label_components(const BinaryMatrix& mask, Connectivity conn) {
  const Index rows = mask.rows();
  const Index cols = mask.cols();
  Components out;
  out.labels = Grid<std::int32_t>::Constant(rows, cols, -1);

  static constexpr int kDr[] = {-1, 1, 0, 0, -1, -1, 1, 1};
  static constexpr int kDc[] = {0, 0, -1, 1, -1, 1, -1, 1};
  const int neighbours = conn == Connectivity::Four ? 4 : 8;

  std::deque<Index> queue;
  for (Index start = 0; start < rows * cols; ++start) {
    const Index sr = start / cols;
    const Index sc = start % cols;
    if (!mask(sr, sc) || out.labels(sr, sc) >= 0) {
      continue;
    }
    const auto id = static_cast<std::int32_t>(out.sizes.size());
    out.labels(sr, sc) = id;
    out.first_cell.push_back(start);
    Index size = 0;
    queue.push_back(start);
    while (!queue.empty()) {
      const Index cell = queue.front();
      queue.pop_front();
      ++size;
      const Index r = cell / cols;
      const Index c = cell % cols;
      for (int k = 0; k < neighbours; ++k) {
        const Index nr = r + kDr[k];
        const Index nc = c + kDc[k];
        if (nr < 0 || nc < 0 || nr >= rows || nc >= cols) {
          continue;
        }
        if (mask(nr, nc) && out.labels(nr, nc) < 0) {
          out.labels(nr, nc) = id;
          queue.push_back(nr * cols + nc);
        }
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

}  // namespace tileinspect
