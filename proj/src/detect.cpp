#include "tileinspect/detect.hpp"

#include "tileinspect/error.hpp"

#include <string>

namespace tileinspect {

Index count_marked(const BinaryMatrix& bin) { return bin.count(); }

DetectionResult detect_defect(const BinaryMatrix& test, const BinaryMatrix& reference, Index margin) {
  if (test.rows() != reference.rows() || test.cols() != reference.cols()) {
    throw DimensionMismatch("test is " + std::to_string(test.rows()) + "x" +
                            std::to_string(test.cols()) + ", reference is " +
                            std::to_string(reference.rows()) + "x" +
                            std::to_string(reference.cols()));
  }
  DetectionResult result;
  result.n1 = count_marked(test);
  result.n2 = count_marked(reference);
  result.defective = result.n1 > result.n2 + margin;
  return result;
}

}  // namespace tileinspect
