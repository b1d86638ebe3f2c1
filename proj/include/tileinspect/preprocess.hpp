#pragma once

#include "tileinspect/config.hpp"
#include "tileinspect/grid.hpp"
#include "tileinspect/raster.hpp"

namespace tileinspect {

/// Two-pass range stretch onto [initial, levels-1]. A constant image is returned unchanged.
GrayImage stretch_linear(const GrayImage& gray, const StretchParams& params);

/// Sigmoid contrast transform g = 1 / (1 + (M / (f + eps))^E), rescaled to [0, 255].
GrayImage stretch_sigmoid(const GrayImage& gray, const StretchParams& params);

/// Default sigmoid midpoint: mean of the 3x3-median-filtered image normalized to [0, 1].
double default_midpoint(const GrayImage& gray);

/// Square-window median with replicate padding. Throws ParamError unless `window` is odd and >= 3.
GrayImage median_filter(const GrayImage& gray, int window = 3);

/// 3x3 Sobel with replicate padding; magnitude is |Gx| + |Gy|.
GradientImage sobel_edges(const GrayImage& gray);

/// Marks cells with magnitude >= tau * max(magnitude). Throws ParamError unless 0 < tau <= 1.
BinaryMatrix binarize(const GradientImage& grad, double tau);

/// to_gray -> stretch -> median -> Sobel -> binarize, parameterized by `cfg`.
BinaryMatrix preprocess_pipeline(const RasterImage& img, const ClassifierConfig& cfg);

}  // namespace tileinspect
