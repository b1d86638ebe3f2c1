#include "tileinspect/preprocess.hpp"

#include "tileinspect/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace tileinspect {

namespace {

std::uint8_t round_clamp(double v, double hi) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, std::min(hi, 255.0)));
}

}  // namespace

GrayImage stretch_linear(const GrayImage& gray, const StretchParams& params) {
  params.validate();
  const int lo = gray.minCoeff();
  const int hi = gray.maxCoeff();
  if (lo == hi) {
    return gray;
  }
  const double levels = params.literal_scale ? params.levels : params.levels - 1;
  const double scale = levels / static_cast<double>(hi - lo);
  const double top = params.levels - 1;
  return gray.unaryExpr([&](std::uint8_t v) {
    return round_clamp((v - lo) * scale + params.initial, top);
  });
}

double default_midpoint(const GrayImage& gray) {
  return median_filter(gray, 3).cast<double>().mean() / 255.0;
}

GrayImage stretch_sigmoid(const GrayImage& gray, const StretchParams& params) {
  params.validate();
  const double m = params.midpoint ? *params.midpoint : default_midpoint(gray);
  const double e = params.slope;
  // Only 256 possible inputs, so tabulate.
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    const double f = v / 255.0;
    const double g = 1.0 / (1.0 + std::pow(m / (f + StretchParams::kEps), e));
    lut[v] = round_clamp(g * 255.0, 255.0);
  }
  return gray.unaryExpr([&](std::uint8_t v) { return lut[v]; });
}

GrayImage median_filter(const GrayImage& gray, int window) {
  if (window < 3 || window % 2 == 0) {
    throw ParamError("median window must be odd and >= 3, got " + std::to_string(window));
  }
  if (gray.size() == 0) {
    return gray;
  }
  const Index radius = window / 2;
  const GrayImage padded = pad_replicate(gray, radius);
  GrayImage out(gray.rows(), gray.cols());
  std::vector<std::uint8_t> values(static_cast<std::size_t>(window * window));
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  for (Index r = 0; r < gray.rows(); ++r) {
    for (Index c = 0; c < gray.cols(); ++c) {
      auto it = values.begin();
      for (Index dr = 0; dr < window; ++dr) {
        for (Index dc = 0; dc < window; ++dc) {
          *it++ = padded(r + dr, c + dc);
        }
      }
      std::nth_element(values.begin(), mid, values.end());
      out(r, c) = *mid;
    }
  }
  return out;
}

GradientImage sobel_edges(const GrayImage& gray) {
  const Grid<std::int32_t> p = pad_replicate(gray.cast<std::int32_t>(), 1);
  const Index rows = gray.rows();
  const Index cols = gray.cols();
  auto at = [&](Index dr, Index dc) { return p.block(1 + dr, 1 + dc, rows, cols); };
  const Grid<std::int32_t> gx =
      (at(-1, 1) + 2 * at(0, 1) + at(1, 1)) - (at(-1, -1) + 2 * at(0, -1) + at(1, -1));
  const Grid<std::int32_t> gy =
      (at(1, -1) + 2 * at(1, 0) + at(1, 1)) - (at(-1, -1) + 2 * at(-1, 0) + at(-1, 1));
  return gx.abs() + gy.abs();
}

BinaryMatrix binarize(const GradientImage& grad, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw ParamError("tau must lie in (0, 1]");
  }
  const std::int32_t peak = grad.size() == 0 ? 0 : grad.maxCoeff();
  if (peak <= 0) {
    return BinaryMatrix::Constant(grad.rows(), grad.cols(), false);
  }
  const double threshold = tau * peak;
  return grad.cast<double>() >= threshold;
}

BinaryMatrix preprocess_pipeline(const RasterImage& img, const ClassifierConfig& cfg) {
  cfg.validate();
  const GrayImage gray = to_gray(img);
  const GrayImage enhanced = cfg.stretch_variant == StretchVariant::Sigmoid
                                 ? stretch_sigmoid(gray, cfg.stretch)
                                 : stretch_linear(gray, cfg.stretch);
  return binarize(sobel_edges(median_filter(enhanced, cfg.median_window)), cfg.tau);
}

}  // namespace tileinspect
