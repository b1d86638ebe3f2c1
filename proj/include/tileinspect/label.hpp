#pragma once

#include "tileinspect/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace tileinspect {

/// Cell values of a LabelMatrix.
namespace label {
inline constexpr std::uint8_t kBackground = 0;
inline constexpr std::uint8_t kEdge = 1;   ///< thin edge pixel
inline constexpr std::uint8_t kSolid = 2;  ///< survivor of fill + erode
inline constexpr std::uint8_t kCrack = 3;  ///< claimed by the crack classifier
}  // namespace label

using LabelMatrix = Grid<std::uint8_t>;

enum class TileMode { Plane, Printed };

std::string to_string(TileMode mode);
TileMode parse_tile_mode(std::string_view s);

/// How erosion treats cells outside the image.
enum class BorderPolicy {
  Background,  ///< outside is 0: border cells always erode
  Frame,       ///< outside is 1: the virtual frame used by framed filling
};

/// Sets enclosed background regions (4-connected) to 1.
/// Unframed: regions touching the image border are kept.
/// Framed: the border counts as foreground, so only the largest background
/// component is kept (ties broken by raster order of the first cell).
BinaryMatrix fill_holes(const BinaryMatrix& bin, bool framed);

/// 3x3 square-element binary erosion.
BinaryMatrix erode(const BinaryMatrix& bin, BorderPolicy border = BorderPolicy::Background);

/// 3x3 square-element binary dilation (outside is 0), applied `iterations` times.
BinaryMatrix dilate(const BinaryMatrix& bin, int iterations = 1);

/// Relabels the test matrix for classification.
/// Plane: cells where erode(fill_holes(test, framed), Frame) is 1 become 2.
/// Printed: additionally every cell marked in the (optionally dilated) reference becomes 0.
/// Throws ModeError (printed without reference) or DimensionMismatch.
LabelMatrix build_label_matrix(const BinaryMatrix& test_bin, TileMode mode,
                               const BinaryMatrix* ref_bin = nullptr, int ref_dilate = 0);

/// The fill + erode survivor mask used by build_label_matrix.
BinaryMatrix solid_mask(const BinaryMatrix& test_bin);

/// Text format: "<rows> <cols>\n" then one line per row of space-separated digits.
std::string format_matrix(const LabelMatrix& label);
LabelMatrix parse_matrix(std::string_view text);

/// Throws IoError.
void save_matrix(const LabelMatrix& label, const std::filesystem::path& path);
/// Throws IoError / ParseError.
LabelMatrix load_matrix(const std::filesystem::path& path);

}  // namespace tileinspect
