#include "tileinspect/classify.hpp"

#include "tileinspect/components.hpp"
#include "tileinspect/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace tileinspect {

std::string to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::Pinhole: return "pinhole";
    case DefectKind::Crack: return "crack";
    case DefectKind::Blob: return "blob";
    case DefectKind::Spot: return "spot";
    case DefectKind::Edge: return "edge";
    case DefectKind::Corner: return "corner";
  }
  return "?";
}

DefectKind parse_defect_kind(std::string_view s) {
  for (const DefectKind k : kAllDefectKinds) {
    if (to_string(k) == s) {
      return k;
    }
  }
  throw ParseError("unknown defect kind '" + std::string(s) + "'");
}

std::string to_string(CornerId id) {
  switch (id) {
    case CornerId::TopLeft: return "TL";
    case CornerId::TopRight: return "TR";
    case CornerId::BottomLeft: return "BL";
    case CornerId::BottomRight: return "BR";
  }
  return "?";
}

bool DefectReport::found(DefectKind kind) const {
  switch (kind) {
    case DefectKind::Pinhole: return pinhole.found;
    case DefectKind::Crack: return crack.found;
    case DefectKind::Blob: return blob;
    case DefectKind::Spot: return spot;
    case DefectKind::Edge: return edge.found;
    case DefectKind::Corner: return corner.found;
  }
  return false;
}

std::string to_string(const DefectReport& report) {
  auto verdict = [](bool f) { return f ? "found" : "not"; };
  std::ostringstream os;
  os << "defective=" << report.detection.defective << " n1=" << report.detection.n1
     << " n2=" << report.detection.n2 << " pinhole=" << verdict(report.pinhole.found) << '('
     << report.pinhole.p_count << ") crack=" << verdict(report.crack.found) << '('
     << report.crack.c_count << ") blob=" << verdict(report.blob) << " spot=" << verdict(report.spot)
     << " edge=" << verdict(report.edge.found) << '(' << report.edge.e_count
     << ") corner=" << verdict(report.corner.found);
  if (report.corner.found) {
    os << '(';
    for (std::size_t i = 0; i < report.corner.corner_ids.size(); ++i) {
      os << (i ? "," : "") << to_string(report.corner.corner_ids[i]);
    }
    os << ')';
  }
  return os.str();
}

namespace {

bool in_corner_square(Index row, Index col, Index rows, Index cols, Index c) {
  const bool top = row < c;
  const bool bottom = row >= rows - c;
  const bool left = col < c;
  const bool right = col >= cols - c;
  return (top || bottom) && (left || right);
}

}  // namespace

bool in_pinhole_region(Index row, Index col, Index rows, Index cols, const ClassifierConfig& cfg) {
  const Index e = cfg.e_range;
  if (row < e || row > rows - e - 1 || col < e || col > cols - e - 1) {
    return false;
  }
  return !in_corner_square(row, col, rows, cols, cfg.c_range);
}

PinholeResult classify_pinhole(const LabelMatrix& label, const ClassifierConfig& cfg) {
  const Index rows = label.rows();
  const Index cols = label.cols();
  bool any = false;
  PinholeResult out;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      if (!in_pinhole_region(r, c, rows, cols, cfg)) {
        continue;
      }
      any = true;
      if (label(r, c) != label::kBackground || r == 0 || c == 0 || r == rows - 1 || c == cols - 1) {
        continue;
      }
      const bool cross = label(r - 1, c) == label::kEdge && label(r + 1, c) == label::kEdge &&
                         label(r, c - 1) == label::kEdge && label(r, c + 1) == label::kEdge;
      const bool diag = label(r - 1, c - 1) == 0 && label(r - 1, c + 1) == 0 &&
                        label(r + 1, c - 1) == 0 && label(r + 1, c + 1) == 0;
      if (cross && diag) {
        ++out.p_count;
      }
    }
  }
  if (!any) {
    throw ConfigError("pinhole search region is empty for a " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " matrix");
  }
  out.found = out.p_count > 0;
  return out;
}

CrackPass classify_crack(const LabelMatrix& label, const ClassifierConfig& cfg) {
  const Components comps = label_components(label == label::kEdge, Connectivity::Eight);
  CrackPass pass{{}, label};
  for (const Index s : comps.sizes) {
    pass.result.c_count = std::max(pass.result.c_count, s);
  }
  pass.result.found = pass.result.c_count > cfg.c_length;
  if (pass.result.found) {
    for (Index i = 0; i < label.size(); ++i) {
      const auto id = comps.labels.data()[i];
      if (id >= 0 && comps.sizes[static_cast<std::size_t>(id)] > cfg.c_length) {
        pass.claimed.data()[i] = label::kCrack;
      }
    }
  }
  return pass;
}

std::vector<Cell> find_square_blocks(const LabelMatrix& label, Index k) {
  const Index rows = label.rows();
  const Index cols = label.cols();
  if (k < 3 || k % 2 == 0 || k > std::min(rows, cols)) {
    throw ParamError("block side " + std::to_string(k) + " must be odd, >= 3 and fit a " +
                     std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  // Summed-area table of 2-cells with a zero row/column in front.
  Grid<std::int32_t> sat = Grid<std::int32_t>::Zero(rows + 1, cols + 1);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      sat(r + 1, c + 1) = (label(r, c) == label::kSolid ? 1 : 0) + sat(r, c + 1) + sat(r + 1, c) - sat(r, c);
    }
  }
  const Index h = k / 2;
  const auto area = static_cast<std::int32_t>(k * k);
  std::vector<Cell> centres;
  for (Index r = 0; r + k <= rows; ++r) {
    for (Index c = 0; c + k <= cols; ++c) {
      if (sat(r + k, c + k) - sat(r, c + k) - sat(r + k, c) + sat(r, c) == area) {
        centres.push_back({r + h, c + h});
      }
    }
  }
  return centres;
}

bool classify_blob(const LabelMatrix& label, const ClassifierConfig& cfg) {
  return !find_square_blocks(label, cfg.blob_matx).empty();
}

bool classify_spot(const LabelMatrix& label, const ClassifierConfig& cfg) {
  if (cfg.spot_matx >= cfg.blob_matx) {
    throw ConfigError("spot_matx must be smaller than blob_matx");
  }
  const auto spot_centres = find_square_blocks(label, cfg.spot_matx);
  if (spot_centres.empty()) {
    return false;
  }
  const Components comps = label_components(label == label::kSolid, Connectivity::Eight);
  std::vector<char> has_blob(comps.count(), 0);
  for (const Cell& b : find_square_blocks(label, cfg.blob_matx)) {
    has_blob[static_cast<std::size_t>(comps.labels(b.row, b.col))] = 1;
  }
  for (const Cell& s : spot_centres) {
    if (!has_blob[static_cast<std::size_t>(comps.labels(s.row, s.col))]) {
      return true;
    }
  }
  return false;
}

EdgeResult classify_edge(const LabelMatrix& label, const ClassifierConfig& cfg) {
  const Index rows = label.rows();
  const Index cols = label.cols();
  const Index c0 = cfg.c_range;
  auto hit = [&](Index r, Index c) { return label(r, c) != label::kBackground; };
  EdgeResult out;
  for (Index c = c0; c < cols - c0 && !out.found; ++c) {
    out.found = hit(0, c) || hit(rows - 1, c);
  }
  for (Index r = c0; r < rows - c0 && !out.found; ++r) {
    out.found = hit(r, 0) || hit(r, cols - 1);
  }
  out.e_count = out.found ? 1 : 0;
  return out;
}

CornerResult classify_corner(const LabelMatrix& label, const ClassifierConfig& cfg) {
  const Index n = cfg.c_range;
  const Index rows = label.rows();
  const Index cols = label.cols();
  const std::pair<CornerId, std::pair<Index, Index>> squares[] = {
      {CornerId::TopLeft, {0, 0}},
      {CornerId::TopRight, {0, cols - n}},
      {CornerId::BottomLeft, {rows - n, 0}},
      {CornerId::BottomRight, {rows - n, cols - n}},
  };
  CornerResult out;
  for (const auto& [id, origin] : squares) {
    if ((label.block(origin.first, origin.second, n, n) == label::kSolid).all()) {
      out.corner_ids.push_back(id);
    }
  }
  out.found = !out.corner_ids.empty();
  return out;
}

DefectReport classify_all(const LabelMatrix& label, const DetectionResult& detection,
                          const ClassifierConfig& cfg) {
  DefectReport report;
  report.detection = detection;
  if (!detection.defective) {
    return report;
  }
  cfg.validate();
  cfg.validate_for(label.rows(), label.cols());
  const CrackPass pass = classify_crack(label, cfg);
  report.crack = pass.result;
  report.pinhole = classify_pinhole(pass.claimed, cfg);
  report.blob = classify_blob(pass.claimed, cfg);
  report.spot = classify_spot(pass.claimed, cfg);
  report.edge = classify_edge(pass.claimed, cfg);
  report.corner = classify_corner(pass.claimed, cfg);
  return report;
}

}  // namespace tileinspect
