#pragma once

#include "tileinspect/grid.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace tileinspect {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// RGB raster stored as three planar 8-bit channels of identical shape.
class RasterImage {
 public:
  RasterImage(Index width, Index height, Rgb fill = {});

  /// Build from row-major interleaved RGB bytes (length width*height*3).
  static RasterImage from_interleaved(Index width, Index height, const std::uint8_t* data);

  [[nodiscard]] Index width() const { return red_.cols(); }
  [[nodiscard]] Index height() const { return red_.rows(); }

  [[nodiscard]] Rgb at(Index row, Index col) const {
    return {red_(row, col), green_(row, col), blue_(row, col)};
  }
  void set(Index row, Index col, Rgb px) {
    red_(row, col) = px.r;
    green_(row, col) = px.g;
    blue_(row, col) = px.b;
  }

  [[nodiscard]] const GrayImage& red() const { return red_; }
  [[nodiscard]] const GrayImage& green() const { return green_; }
  [[nodiscard]] const GrayImage& blue() const { return blue_; }
  GrayImage& red() { return red_; }
  GrayImage& green() { return green_; }
  GrayImage& blue() { return blue_; }

  /// Row-major interleaved RGB bytes.
  [[nodiscard]] std::vector<std::uint8_t> interleaved() const;

  friend bool operator==(const RasterImage& a, const RasterImage& b);

 private:
  GrayImage red_;
  GrayImage green_;
  GrayImage blue_;
};

enum class ImageFormat { Png, Bmp };

/// Decode a PNG or BMP file; grayscale sources are expanded to three equal channels.
/// Throws FileNotFound or DecodeError.
RasterImage load_image(const std::filesystem::path& path);

/// Lossless encode. Throws IoError.
void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format);

/// Format inferred from the extension (.png / .bmp); anything else is a ParamError.
void save_image(const RasterImage& img, const std::filesystem::path& path);

/// Centered m x n crop (m = width, n = height). Throws DimensionError.
RasterImage trim(const RasterImage& img, Index width, Index height);

/// BT.601 luma, rounded and clamped.
GrayImage to_gray(const RasterImage& img);

}  // namespace tileinspect
