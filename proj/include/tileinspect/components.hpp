#pragma once

#include "tileinspect/grid.hpp"

#include <cstdint>
#include <vector>

namespace tileinspect {

enum class Connectivity { Four, Eight };

/// Connected-component labeling of the cells where `mask` is true.
struct Components {
  Grid<std::int32_t> labels;       ///< -1 outside the mask, otherwise component id
  std::vector<Index> sizes;        ///< pixel count per id
  std::vector<Index> first_cell;   ///< raster index of each component's first cell

  [[nodiscard]] std::size_t count() const { return sizes.size(); }
};

/// Breadth-first labeling; ids are assigned in raster order of first cells.
Components label_components(const BinaryMatrix& mask, Connectivity conn);

}  // namespace tileinspect
