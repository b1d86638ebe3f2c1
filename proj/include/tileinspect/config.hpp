#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace tileinspect {

/// Contrast-stretch parameters shared by the linear and sigmoid variants.
struct StretchParams {
  static constexpr double kEps = 0x1p-52;

  std::optional<double> midpoint;  ///< M in (0, 1]; unset means "derive from the image".
  double slope = 4.0;              ///< E
  int levels = 256;                ///< n_i, number of intensity levels
  int initial = 0;                 ///< i, initial intensity level
  /// Use n_i/(max-min) as the linear scale instead of (n_i-1)/(max-min).
  bool literal_scale = false;

  /// Throws ParamError when an invariant is violated.
  void validate() const;
};

enum class StretchVariant { Linear, Sigmoid };

/// Every tunable of the pipeline. Defaults target 256x256 trimmed tiles.
struct ClassifierConfig {
  int c_range = 10;     ///< corner-zone side
  int e_range = 3;      ///< edge-band width excluded from the pinhole search
  int c_length = 60;    ///< crack length threshold (component pixel count)
  int blob_matx = 7;    ///< blob window side
  int spot_matx = 3;    ///< spot window side
  double tau = 0.55;    ///< binarization fraction of the peak gradient
  int median_window = 3;
  StretchVariant stretch_variant = StretchVariant::Sigmoid;
  StretchParams stretch;
  int detect_margin = 0;
  int ref_dilate = 0;

  /// Checks field invariants that do not depend on a matrix. Throws ConfigError.
  void validate() const;

  /// Checks the corner-zone invariant 2*c_range < min(rows, cols). Throws ConfigError.
  void validate_for(long rows, long cols) const;

  /// Assigns one field by its config-file key. Throws ConfigError on unknown keys or bad values.
  void set(std::string_view key, std::string_view value);

  friend bool operator==(const ClassifierConfig&, const ClassifierConfig&);
};

bool operator==(const StretchParams&, const StretchParams&);

std::string to_string(StretchVariant v);
StretchVariant parse_stretch_variant(std::string_view s);

/// Parse `key = value` lines with `#` comments on top of `base`.
ClassifierConfig parse_config(std::string_view text, ClassifierConfig base = {});

/// Read and parse a config file. Throws IoError / ConfigError.
ClassifierConfig load_config(const std::filesystem::path& path, ClassifierConfig base = {});

/// Serialize every field as `key = value` lines; parse_config inverts it.
std::string format_config(const ClassifierConfig& cfg);

}  // namespace tileinspect
