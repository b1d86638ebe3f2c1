#include "tileinspect/synth.hpp"

#include "tileinspect/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace tileinspect {

namespace {

std::uint8_t clamp_byte(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

// Pinhole offset orbits under the 8 symmetries of the square, keyed by sorted (|dr|, |dc|).
int pinhole_delta(int dr, int dc, int core) {
  const int a = std::min(std::abs(dr), std::abs(dc));
  const int b = std::max(std::abs(dr), std::abs(dc));
  if ((a == 0 && b == 0) || (a == 0 && b == 1)) {
    return core;
  }
  if ((a == 0 && b == 3) || (a == 1 && b == 1) || (a == 1 && b == 2)) {
    return tile_style::kPinholeHalo;
  }
  return 0;
}

constexpr int kDirs[8][2] = {{0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};

std::uint64_t crack_seed(const DefectSpec& spec) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(spec.row));
  h = mix64(h ^ static_cast<std::uint64_t>(spec.col));
  return mix64(h ^ static_cast<std::uint64_t>(spec.size));
}

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw GeometryError(what);
  }
}

}  // namespace

SynthTile generate_tile(TileMode mode, Index size, std::uint64_t seed, int noise_amplitude) {
  if (size < 64) {
    throw ParamError("tile size must be >= 64, got " + std::to_string(size));
  }
  if (noise_amplitude < 0) {
    throw ParamError("noise amplitude must be >= 0");
  }
  SynthTile tile{RasterImage(size, size, tile_style::kBase), {}};
  tile.truth.mode = mode;
  if (mode == TileMode::Printed) {
    const BinaryMatrix mask = print_mask(size);
    for (Index r = 0; r < size; ++r) {
      for (Index c = 0; c < size; ++c) {
        if (mask(r, c)) {
          tile.image.set(r, c, tile_style::kPrint);
        }
      }
    }
  }
  if (noise_amplitude > 0) {
    SplitMix64 rng(seed);
    for (Index r = 0; r < size; ++r) {
      for (Index c = 0; c < size; ++c) {
        if (rng.unit() >= tile_style::kNoiseDensity) {
          continue;
        }
        const int d = (rng.next() & 1) ? noise_amplitude : -noise_amplitude;
        const Rgb px = tile.image.at(r, c);
        tile.image.set(r, c, {clamp_byte(px.r + d), clamp_byte(px.g + d), clamp_byte(px.b + d)});
      }
    }
  }
  return tile;
}

BinaryMatrix print_mask(Index size) {
  BinaryMatrix mask = BinaryMatrix::Constant(size, size, false);
  const Index period = size / 8;
  const Index half_w = tile_style::kPrintBarWidth / 2;
  for (Index r0 = period / 2; r0 < size; r0 += period) {
    for (Index c0 = period / 2; c0 < size; c0 += period) {
      for (Index r = r0 - tile_style::kPrintBarHeight + 1; r <= r0; ++r) {
        for (Index c = c0 - half_w; c < c0 + half_w; ++c) {
          if (r >= 0 && c >= 0 && r < size && c < size) {
            mask(r, c) = true;
          }
        }
      }
    }
  }
  return mask;
}

std::vector<StampCell> defect_stamp(const DefectSpec& spec, Index width, Index height) {
  require(spec.size >= 1, "defect size must be >= 1");
  require(spec.row >= 0 && spec.col >= 0 && spec.row < height && spec.col < width,
          "defect position outside the image");
  std::vector<StampCell> cells;
  const int d = spec.intensity_delta;
  switch (spec.kind) {
    case DefectKind::Pinhole: {
      require(spec.row >= 3 && spec.col >= 3 && spec.row + 3 < height && spec.col + 3 < width,
              "pinhole too close to the border");
      for (int dr = -3; dr <= 3; ++dr) {
        for (int dc = -3; dc <= 3; ++dc) {
          if (const int v = pinhole_delta(dr, dc, d); v != 0) {
            cells.push_back({spec.row + dr, spec.col + dc, v});
          }
        }
      }
      break;
    }
    case DefectKind::Crack: {
      SplitMix64 rng(crack_seed(spec));
      auto dir = static_cast<int>(rng.uniform(0, 8));
      Index r = spec.row;
      Index c = spec.col;
      for (int k = 0; k < spec.size; ++k) {
        require(r >= 0 && c >= 0 && r + tile_style::kCrackBrush <= height &&
                    c + tile_style::kCrackBrush <= width,
                "crack leaves the image");
        for (int br = 0; br < tile_style::kCrackBrush; ++br) {
          for (int bc = 0; bc < tile_style::kCrackBrush; ++bc) {
            cells.push_back({r + br, c + bc, d});
          }
        }
        if (k % tile_style::kCrackTurnEvery == tile_style::kCrackTurnEvery - 1) {
          dir = (dir + ((rng.next() & 1) ? 1 : 7)) % 8;
        }
        r += kDirs[dir][0];
        c += kDirs[dir][1];
      }
      break;
    }
    case DefectKind::Blob:
    case DefectKind::Spot: {
      const Index rad = spec.size;
      require(spec.row - rad >= 0 && spec.col - rad >= 0 && spec.row + rad < height &&
                  spec.col + rad < width,
              "disk leaves the image");
      for (Index dr = -rad; dr <= rad; ++dr) {
        for (Index dc = -rad; dc <= rad; ++dc) {
          if (dr * dr + dc * dc <= rad * rad) {
            cells.push_back({spec.row + dr, spec.col + dc, d});
          }
        }
      }
      break;
    }
    case DefectKind::Edge: {
      const Index depth = spec.size;
      const Index run = tile_style::kEdgeChipLength;
      const bool horizontal = spec.row == 0 || spec.row == height - 1;
      const bool vertical = spec.col == 0 || spec.col == width - 1;
      require(horizontal || vertical, "edge defect position must lie on the border");
      if (horizontal) {
        require(depth <= height && spec.col + run <= width, "edge chip leaves the image");
        const Index r0 = spec.row == 0 ? 0 : height - depth;
        for (Index r = r0; r < r0 + depth; ++r) {
          for (Index c = spec.col; c < spec.col + run; ++c) {
            cells.push_back({r, c, d});
          }
        }
      } else {
        require(depth <= width && spec.row + run <= height, "edge chip leaves the image");
        const Index c0 = spec.col == 0 ? 0 : width - depth;
        for (Index r = spec.row; r < spec.row + run; ++r) {
          for (Index c = c0; c < c0 + depth; ++c) {
            cells.push_back({r, c, d});
          }
        }
      }
      break;
    }
    case DefectKind::Corner: {
      const bool top = spec.row == 0;
      const bool left = spec.col == 0;
      require((top || spec.row == height - 1) && (left || spec.col == width - 1),
              "corner defect position must be a corner pixel");
      require(spec.size <= std::min(width, height), "corner chip larger than the image");
      for (Index i = 0; i < spec.size; ++i) {
        for (Index j = 0; j < spec.size - i; ++j) {
          cells.push_back({top ? i : height - 1 - i, left ? j : width - 1 - j, d});
        }
      }
      break;
    }
  }
  return cells;
}

RasterImage inject_defect(const RasterImage& img, const DefectSpec& spec) {
  // Overlapping stamp cells accumulate before the single clamp.
  Grid<int> offset = Grid<int>::Zero(img.height(), img.width());
  for (const StampCell& s : defect_stamp(spec, img.width(), img.height())) {
    offset(s.row, s.col) += s.delta;
  }
  RasterImage out = img;
  for (GrayImage* ch : {&out.red(), &out.green(), &out.blue()}) {
    *ch = (ch->cast<int>() + offset).unaryExpr([](int v) { return clamp_byte(v); });
  }
  return out;
}

DefectSpec default_defect(DefectKind kind) {
  DefectSpec spec;
  spec.kind = kind;
  switch (kind) {
    case DefectKind::Pinhole: spec.size = 1; break;
    case DefectKind::Crack: spec.size = 40; spec.intensity_delta = -45; break;
    case DefectKind::Blob: spec.size = 6; break;
    case DefectKind::Spot: spec.size = 3; break;
    case DefectKind::Edge: spec.size = 4; break;
    case DefectKind::Corner: spec.size = 28; break;
  }
  return spec;
}

DefectSpec place_defect(DefectKind kind, TileMode mode, Index size, SplitMix64& rng) {
  DefectSpec spec = default_defect(kind);
  if (kind == DefectKind::Edge) {
    const auto side = rng.uniform(0, 4);
    const Index lo = size * 40 / 256;
    const Index along = rng.uniform(lo, size - lo - tile_style::kEdgeChipLength);
    spec.row = side == 0 ? 0 : side == 1 ? size - 1 : along;
    spec.col = side == 2 ? 0 : side == 3 ? size - 1 : along;
    return spec;
  }
  if (kind == DefectKind::Corner) {
    const auto corner = rng.uniform(0, 4);
    spec.row = (corner & 2) ? size - 1 : 0;
    spec.col = (corner & 1) ? size - 1 : 0;
    return spec;
  }
  // 40 (60 for cracks) at the default 256-pixel size.
  const Index margin = size * (kind == DefectKind::Crack ? 60 : 40) / 256;
  require(size > 2 * margin, "tile too small for interior defect placement");
  BinaryMatrix keep_out;
  if (mode == TileMode::Printed) {
    keep_out = dilate(print_mask(size), 4);
  }
  // Small printed tiles may have no print-free room; after kOffPrintAttempts the print is ignored.
  constexpr int kOffPrintAttempts = 2000;
  for (int attempt = 0; attempt < 2 * kOffPrintAttempts; ++attempt) {
    spec.row = rng.uniform(margin, size - margin);
    spec.col = rng.uniform(margin, size - margin);
    std::vector<StampCell> cells;
    try {
      cells = defect_stamp(spec, size, size);
    } catch (const GeometryError&) {
      continue;
    }
    if (mode == TileMode::Plane || attempt >= kOffPrintAttempts ||
        std::none_of(cells.begin(), cells.end(),
                     [&](const StampCell& s) { return keep_out(s.row, s.col); })) {
      return spec;
    }
  }
  throw GeometryError("no placement found for " + to_string(kind));
}

std::string format_kinds(const std::vector<DefectKind>& kinds) {
  if (kinds.empty()) {
    return "-";
  }
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    out += (i ? "," : "") + to_string(kinds[i]);
  }
  return out;
}

std::vector<DefectKind> parse_kinds(std::string_view csv) {
  std::vector<DefectKind> kinds;
  if (csv.empty() || csv == "-") {
    return kinds;
  }
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = csv.find(',', pos);
    kinds.push_back(parse_defect_kind(csv.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) {
      break;
    }
    pos = comma + 1;
  }
  return kinds;
}

std::filesystem::path generate_corpus(const CorpusOptions& options) {
  namespace fs = std::filesystem;
  if (options.n < 1) {
    throw ParamError("corpus size must be >= 1");
  }
  if (!(options.mix >= 0.0 && options.mix <= 1.0)) {
    throw ParamError("mix must lie in [0, 1]");
  }
  if (options.kinds.empty() || options.modes.empty()) {
    throw ParamError("corpus needs at least one defect kind and one mode");
  }
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) {
    throw IoError("cannot create '" + options.out_dir.string() + "': " + ec.message());
  }

  std::map<TileMode, std::string> reference;
  for (const TileMode mode : options.modes) {
    if (reference.count(mode)) {
      continue;
    }
    const std::string name = "reference_" + to_string(mode) + ".png";
    const auto ref_seed = mix64(options.seed ^ (0x5EFull + static_cast<std::uint64_t>(mode)));
    save_image(generate_tile(mode, options.size, ref_seed).image, options.out_dir / name);
    reference[mode] = name;
  }

  const auto n = options.n;
  const auto n_defective = static_cast<Index>(std::llround(static_cast<double>(n) * options.mix));
  const int width = std::max<int>(4, static_cast<int>(std::to_string(n - 1).size()));
  std::ostringstream manifest;
  manifest << "#tile_id\timage_path\treference_path\tmode\tdefective\tkinds\n";
  Index defect_index = 0;
  for (Index i = 0; i < n; ++i) {
    const TileMode mode = options.modes[static_cast<std::size_t>(i) % options.modes.size()];
    // Spread the defective tiles evenly over the corpus.
    const bool defective = (i + 1) * n_defective / n > i * n_defective / n;
    SplitMix64 rng(options.seed ^ static_cast<std::uint64_t>(i));
    SynthTile tile = generate_tile(mode, options.size, rng.next());
    std::ostringstream id;
    id << "tile_" << std::setw(width) << std::setfill('0') << i;
    tile.truth.tile_id = id.str();
    if (defective) {
      const DefectKind kind =
          options.kinds[static_cast<std::size_t>(defect_index++) % options.kinds.size()];
      const DefectSpec spec = place_defect(kind, mode, options.size, rng);
      tile.image = inject_defect(tile.image, spec);
      tile.truth.defects.push_back(spec);
      tile.truth.defective = true;
    }
    const std::string file = tile.truth.tile_id + ".png";
    save_image(tile.image, options.out_dir / file);
    std::vector<DefectKind> kinds;
    for (const DefectSpec& s : tile.truth.defects) {
      kinds.push_back(s.kind);
    }
    manifest << tile.truth.tile_id << '\t' << file << '\t' << reference[mode] << '\t'
             << to_string(mode) << '\t' << (tile.truth.defective ? "true" : "false") << '\t'
             << format_kinds(kinds) << '\n';
  }

  const fs::path path = options.out_dir / "manifest.tsv";
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << manifest.str())) {
    throw IoError("cannot write '" + path.string() + "'");
  }
  return path;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::is_regular_file(path)) {
    throw FileNotFound("manifest '" + path.string() + "' not found");
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw ManifestError("cannot open manifest '" + path.string() + "'");
  }
  const fs::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) {
        break;
      }
      pos = tab + 1;
    }
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != 6) {
      throw ManifestError(where + ": expected 6 tab-separated fields, got " +
                          std::to_string(fields.size()));
    }
    ManifestEntry e;
    e.tile_id = fields[0];
    e.image_path = base / fields[1];
    e.reference_path = base / fields[2];
    try {
      e.mode = parse_tile_mode(fields[3]);
      e.kinds = parse_kinds(fields[5]);
    } catch (const Error& err) {
      throw ManifestError(where + ": " + err.what());
    }
    if (fields[4] == "true" || fields[4] == "1") {
      e.defective = true;
    } else if (fields[4] == "false" || fields[4] == "0") {
      e.defective = false;
    } else {
      throw ManifestError(where + ": bad defective flag '" + fields[4] + "'");
    }
    if (e.tile_id.empty()) {
      throw ManifestError(where + ": empty tile id");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace tileinspect
