#pragma once

#include "tileinspect/classify.hpp"
#include "tileinspect/label.hpp"
#include "tileinspect/raster.hpp"
#include "tileinspect/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tileinspect {

/// Appearance constants of the synthetic tiles.
namespace tile_style {
inline constexpr Rgb kBase{170, 150, 130};
inline constexpr Rgb kPrint{110, 85, 65};
inline constexpr double kNoiseDensity = 0.01;
inline constexpr int kNoiseAmplitude = 2;
inline constexpr int kPrintBarHeight = 2;
inline constexpr int kPrintBarWidth = 12;
inline constexpr int kPinholeHalo = 85;
inline constexpr int kEdgeChipLength = 20;
inline constexpr int kCrackBrush = 2;
inline constexpr int kCrackTurnEvery = 8;
}  // namespace tile_style

/// One injected defect.
/// Geometry per kind:
///  - Pinhole: dark plus-shaped core at `position` with a bright halo; `size` unused (1).
///  - Crack: 2x2-brush random walk of `size` steps starting at `position`.
///  - Blob / Spot: filled disk of radius `size` centred at `position`.
///  - Edge: `size`-deep chip flush to the border `position` lies on, running
///    kEdgeChipLength cells along it from `position`.
///  - Corner: right triangle of leg `size` in the corner `position` names.
struct DefectSpec {
  DefectKind kind = DefectKind::Blob;
  Index row = 0;
  Index col = 0;
  int size = 1;
  int intensity_delta = -60;
  friend bool operator==(const DefectSpec&, const DefectSpec&) = default;
};

struct GroundTruth {
  std::string tile_id;
  bool defective = false;
  std::vector<DefectSpec> defects;
  TileMode mode = TileMode::Plane;
};

struct SynthTile {
  RasterImage image;
  GroundTruth truth;
};

/// A defect-free tile. Deterministic in (mode, size, seed, noise_amplitude).
/// Throws ParamError when size < 64.
SynthTile generate_tile(TileMode mode, Index size, std::uint64_t seed,
                        int noise_amplitude = tile_style::kNoiseAmplitude);

/// Cells covered by the printed pattern of a size x size tile.
BinaryMatrix print_mask(Index size);

struct StampCell {
  Index row;
  Index col;
  int delta;
};

/// Affected cells and their intensity offsets. Throws GeometryError if the defect leaves the image.
std::vector<StampCell> defect_stamp(const DefectSpec& spec, Index width, Index height);

/// Applies the stamp, clamping each channel to [0, 255].
RasterImage inject_defect(const RasterImage& img, const DefectSpec& spec);

/// Default size and delta per kind for 256-pixel tiles.
DefectSpec default_defect(DefectKind kind);

/// Seeded placement of a default-sized defect; printed tiles keep interior defects off the print.
DefectSpec place_defect(DefectKind kind, TileMode mode, Index size, SplitMix64& rng);

struct CorpusOptions {
  Index n = 10;
  double mix = 0.5;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "corpus";
  Index size = 256;
  std::vector<DefectKind> kinds{kAllDefectKinds.begin(), kAllDefectKinds.end()};
  std::vector<TileMode> modes{TileMode::Plane, TileMode::Printed};
};

/// Writes tiles, one reference per mode, and manifest.tsv. Returns the manifest path.
/// Throws ParamError / IoError.
std::filesystem::path generate_corpus(const CorpusOptions& options);

struct ManifestEntry {
  std::string tile_id;
  std::filesystem::path image_path;      ///< resolved against the manifest directory
  std::filesystem::path reference_path;  ///< resolved against the manifest directory
  TileMode mode = TileMode::Plane;
  bool defective = false;
  std::vector<DefectKind> kinds;
};

std::string format_kinds(const std::vector<DefectKind>& kinds);
std::vector<DefectKind> parse_kinds(std::string_view csv);

/// Throws ManifestError (or FileNotFound).
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

}  // namespace tileinspect
