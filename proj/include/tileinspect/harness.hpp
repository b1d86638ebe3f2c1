#pragma once

#include "tileinspect/classify.hpp"
#include "tileinspect/config.hpp"
#include "tileinspect/synth.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tileinspect {

/// Per-tile result row of a batch run.
struct TileOutcome {
  std::string tile_id;
  TileMode mode = TileMode::Plane;
  bool gt_defective = false;
  std::vector<DefectKind> gt_kinds;
  bool ok = true;     ///< false when the tile could not be processed
  std::string error;  ///< diagnostic when !ok
  DefectReport report;
  double seconds = 0.0;

  [[nodiscard]] bool detection_correct() const {
    return ok && report.detection.defective == gt_defective;
  }
  [[nodiscard]] bool kind_correct(DefectKind kind) const;
};

inline constexpr const char* kRateMetric =
    "per-kind accuracy: tiles whose found/not-found verdict matches ground truth / n_tiles";

struct BatchReport {
  Index n_tiles = 0;
  double detection_efficiency = 0.0;
  std::array<double, kAllDefectKinds.size()> per_class_rate{};  ///< indexed like kAllDefectKinds
  double total_time = 0.0;
  std::vector<TileOutcome> tiles;  ///< manifest order
  ClassifierConfig config_echo;

  [[nodiscard]] double rate(DefectKind kind) const {
    return per_class_rate[static_cast<std::size_t>(kind)];
  }
  [[nodiscard]] std::vector<double> per_tile_times() const;
};

/// Recomputes n_tiles, detection_efficiency and per_class_rate from `report.tiles`.
void summarize(BatchReport& report);

struct BatchOptions {
  int jobs = 1;
  std::optional<std::pair<Index, Index>> trim;  ///< width, height
};

/// Full pipeline over every manifest entry. Per-tile failures are recorded, not thrown.
/// Throws ManifestError when the manifest itself is unusable.
BatchReport run_batch(const std::filesystem::path& manifest, const ClassifierConfig& cfg,
                      const BatchOptions& options = {});

/// Same, over already-parsed entries.
BatchReport run_batch(const std::vector<ManifestEntry>& entries, const ClassifierConfig& cfg,
                      const BatchOptions& options = {});

/// Inspects one tile against its reference: preprocess both, detect, label, classify.
struct Inspection {
  BinaryMatrix test_bin;
  BinaryMatrix ref_bin;
  LabelMatrix label;
  DefectReport report;
};
Inspection inspect_tile(const RasterImage& test, const RasterImage& reference, TileMode mode,
                        const ClassifierConfig& cfg);

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view s);

inline constexpr std::array<const char*, 14> kCsvColumns = {
    "tile_id", "mode",  "gt_defective", "det_defective", "n1",   "n2",     "gt_kinds",
    "pinhole", "crack", "blob",         "spot",          "edge", "corner", "seconds"};

std::string format_report_csv(const BatchReport& report);
std::string format_report_json(const BatchReport& report);

/// Throws IoError.
void write_report(const BatchReport& report, const std::filesystem::path& path, ReportFormat format);

/// Parses a CSV written by write_report. Tile rows are restored; summary values are read from
/// the `#` block into the returned report without recomputation. Throws ParseError / IoError.
BatchReport read_report_csv(const std::filesystem::path& path);
BatchReport parse_report_csv(std::string_view text);

}  // namespace tileinspect
