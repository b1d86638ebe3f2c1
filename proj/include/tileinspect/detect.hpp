#pragma once

#include "tileinspect/grid.hpp"

namespace tileinspect {

struct DetectionResult {
  Index n1 = 0;  ///< marked pixels in the test matrix
  Index n2 = 0;  ///< marked pixels in the reference matrix
  bool defective = false;
  friend bool operator==(const DetectionResult&, const DetectionResult&) = default;
};

Index count_marked(const BinaryMatrix& bin);

/// defective iff n1 > n2 + margin. Throws DimensionMismatch when shapes differ.
DetectionResult detect_defect(const BinaryMatrix& test, const BinaryMatrix& reference, Index margin = 0);

}  // namespace tileinspect
