#pragma once

#include "tileinspect/config.hpp"
#include "tileinspect/detect.hpp"
#include "tileinspect/label.hpp"

#include <array>
#include <string>
#include <vector>

namespace tileinspect {

enum class DefectKind { Pinhole, Crack, Blob, Spot, Edge, Corner };

inline constexpr std::array<DefectKind, 6> kAllDefectKinds = {
    DefectKind::Pinhole, DefectKind::Crack, DefectKind::Blob,
    DefectKind::Spot,    DefectKind::Edge,  DefectKind::Corner};

std::string to_string(DefectKind kind);
DefectKind parse_defect_kind(std::string_view s);

enum class CornerId { TopLeft, TopRight, BottomLeft, BottomRight };
std::string to_string(CornerId id);

struct PinholeResult {
  bool found = false;
  Index p_count = 0;
  friend bool operator==(const PinholeResult&, const PinholeResult&) = default;
};

struct CrackResult {
  bool found = false;
  Index c_count = 0;
  friend bool operator==(const CrackResult&, const CrackResult&) = default;
};

struct EdgeResult {
  bool found = false;
  Index e_count = 0;
  friend bool operator==(const EdgeResult&, const EdgeResult&) = default;
};

struct CornerResult {
  bool found = false;
  std::vector<CornerId> corner_ids;
  friend bool operator==(const CornerResult&, const CornerResult&) = default;
};

struct DefectReport {
  PinholeResult pinhole;
  CrackResult crack;
  bool blob = false;
  bool spot = false;
  EdgeResult edge;
  CornerResult corner;
  DetectionResult detection;

  [[nodiscard]] bool found(DefectKind kind) const;
  friend bool operator==(const DefectReport&, const DefectReport&) = default;
};

/// One-line text record, e.g. "defective=1 n1=.. n2=.. pinhole=found(1) crack=not(4) ...".
std::string to_string(const DefectReport& report);

/// Pinhole search area: 1-indexed rows/cols in (e_range, size - e_range], minus the four
/// c_range x c_range corner squares. Takes 0-indexed coordinates.
bool in_pinhole_region(Index row, Index col, Index rows, Index cols, const ClassifierConfig& cfg);

/// Counts 0-cells whose 4-neighbours are 1 and diagonal neighbours are 0. Throws ConfigError
/// when the search region is empty.
PinholeResult classify_pinhole(const LabelMatrix& label, const ClassifierConfig& cfg);

struct CrackPass {
  CrackResult result;
  LabelMatrix claimed;  ///< input with every component larger than c_length set to 3
};

/// Largest 8-connected component of 1-cells, in pixels.
CrackPass classify_crack(const LabelMatrix& label, const ClassifierConfig& cfg);

struct Cell {
  Index row = 0;
  Index col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Centres (0-indexed, raster order) of every k x k window made entirely of 2s.
/// Throws ParamError unless k is odd, >= 3 and fits the matrix.
std::vector<Cell> find_square_blocks(const LabelMatrix& label, Index k);

bool classify_blob(const LabelMatrix& label, const ClassifierConfig& cfg);

/// True when some 8-connected 2-region holds a spot_matx block but no blob_matx block.
bool classify_spot(const LabelMatrix& label, const ClassifierConfig& cfg);

EdgeResult classify_edge(const LabelMatrix& label, const ClassifierConfig& cfg);

CornerResult classify_corner(const LabelMatrix& label, const ClassifierConfig& cfg);

/// Gate on `detection`, then crack first and the rest on the crack-claimed matrix.
DefectReport classify_all(const LabelMatrix& label, const DetectionResult& detection,
                          const ClassifierConfig& cfg);

}  // namespace tileinspect
