#include "tileinspect/label.hpp"

#include "tileinspect/components.hpp"
#include "tileinspect/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace tileinspect {

std::string to_string(TileMode mode) { return mode == TileMode::Plane ? "plane" : "printed"; }

TileMode parse_tile_mode(std::string_view s) {
  if (s == "plane") {
    return TileMode::Plane;
  }
  if (s == "printed") {
    return TileMode::Printed;
  }
  throw ModeError("unknown tile mode '" + std::string(s) + "'");
}

BinaryMatrix fill_holes(const BinaryMatrix& bin, bool framed) {
  const Components bg = label_components(!bin, Connectivity::Four);
  const Index rows = bin.rows();
  const Index cols = bin.cols();
  std::vector<bool> keep(bg.count(), false);
  if (framed) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < bg.count(); ++i) {
      if (bg.sizes[i] > bg.sizes[best]) {
        best = i;
      }
    }
    if (!keep.empty()) {
      keep[best] = true;
    }
  } else {
    auto touch = [&](Index r, Index c) {
      const auto id = bg.labels(r, c);
      if (id >= 0) {
        keep[static_cast<std::size_t>(id)] = true;
      }
    };
    for (Index c = 0; c < cols; ++c) {
      touch(0, c);
      touch(rows - 1, c);
    }
    for (Index r = 0; r < rows; ++r) {
      touch(r, 0);
      touch(r, cols - 1);
    }
  }
  BinaryMatrix out = bin;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const auto id = bg.labels(r, c);
      if (id >= 0 && !keep[static_cast<std::size_t>(id)]) {
        out(r, c) = true;
      }
    }
  }
  return out;
}

BinaryMatrix erode(const BinaryMatrix& bin, BorderPolicy border) {
  const BinaryMatrix p = pad_constant(bin, 1, border == BorderPolicy::Frame);
  BinaryMatrix out = BinaryMatrix::Constant(bin.rows(), bin.cols(), true);
  for (Index dr = 0; dr < 3; ++dr) {
    for (Index dc = 0; dc < 3; ++dc) {
      out = out && p.block(dr, dc, bin.rows(), bin.cols());
    }
  }
  return out;
}

BinaryMatrix dilate(const BinaryMatrix& bin, int iterations) {
  if (iterations < 0) {
    throw ParamError("dilation iterations must be >= 0");
  }
  BinaryMatrix cur = bin;
  for (int i = 0; i < iterations; ++i) {
    const BinaryMatrix p = pad_constant(cur, 1, false);
    BinaryMatrix out = BinaryMatrix::Constant(cur.rows(), cur.cols(), false);
    for (Index dr = 0; dr < 3; ++dr) {
      for (Index dc = 0; dc < 3; ++dc) {
        out = out || p.block(dr, dc, cur.rows(), cur.cols());
      }
    }
    cur = std::move(out);
  }
  return cur;
}

BinaryMatrix solid_mask(const BinaryMatrix& test_bin) {
  return erode(fill_holes(test_bin, true), BorderPolicy::Frame);
}

LabelMatrix build_label_matrix(const BinaryMatrix& test_bin, TileMode mode, const BinaryMatrix* ref_bin,
                               int ref_dilate) {
  if (mode == TileMode::Printed && ref_bin == nullptr) {
    throw ModeError("printed mode requires a reference matrix");
  }
  if (ref_bin != nullptr && (ref_bin->rows() != test_bin.rows() || ref_bin->cols() != test_bin.cols())) {
    throw DimensionMismatch("reference matrix shape differs from test matrix");
  }
  LabelMatrix label = test_bin.cast<std::uint8_t>();
  label = solid_mask(test_bin).select(LabelMatrix::Constant(label.rows(), label.cols(), label::kSolid), label);
  if (mode == TileMode::Printed) {
    const BinaryMatrix print = dilate(*ref_bin, ref_dilate);
    label = print.select(LabelMatrix::Zero(label.rows(), label.cols()), label);
  }
  return label;
}

std::string format_matrix(const LabelMatrix& label) {
  std::string out = std::to_string(label.rows()) + " " + std::to_string(label.cols()) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(label.size() * 2));
  for (Index r = 0; r < label.rows(); ++r) {
    for (Index c = 0; c < label.cols(); ++c) {
      if (c > 0) {
        out += ' ';
      }
      out += static_cast<char>('0' + label(r, c));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      tokens.push_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

Index parse_dim(std::string_view token) {
  Index v = -1;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || v < 0) {
    throw ParseError("bad matrix dimension '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

LabelMatrix parse_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) {
    throw ParseError("empty matrix text");
  }
  const auto header = split_ws(lines[0]);
  if (header.size() != 2) {
    throw ParseError("matrix header must be '<rows> <cols>'");
  }
  const Index rows = parse_dim(header[0]);
  const Index cols = parse_dim(header[1]);
  if (lines.size() - 1 < static_cast<std::size_t>(rows)) {
    throw ParseError("expected " + std::to_string(rows) + " matrix rows, got " +
                     std::to_string(lines.size() - 1));
  }
  for (std::size_t i = static_cast<std::size_t>(rows) + 1; i < lines.size(); ++i) {
    if (!split_ws(lines[i]).empty()) {
      throw ParseError("trailing content after matrix rows");
    }
  }
  LabelMatrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto tokens = split_ws(lines[static_cast<std::size_t>(r) + 1]);
    if (tokens.size() != static_cast<std::size_t>(cols)) {
      throw ParseError("row " + std::to_string(r) + " has " + std::to_string(tokens.size()) +
                       " values, expected " + std::to_string(cols));
    }
    for (Index c = 0; c < cols; ++c) {
      const auto t = tokens[static_cast<std::size_t>(c)];
      if (t.size() != 1 || t[0] < '0' || t[0] > '3') {
        throw ParseError("invalid matrix value '" + std::string(t) + "'");
      }
      out(r, c) = static_cast<std::uint8_t>(t[0] - '0');
    }
  }
  return out;
}

void save_matrix(const LabelMatrix& label, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  os << format_matrix(label);
  if (!os) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

LabelMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_matrix(ss.str());
}

}  // namespace tileinspect
