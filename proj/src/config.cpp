#include "tileinspect/config.hpp"

#include "tileinspect/error.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace tileinspect {

void StretchParams::validate() const {
  if (midpoint && !(*midpoint > 0.0 && *midpoint <= 1.0)) {
    throw ParamError("stretch midpoint M must lie in (0, 1]");
  }
  if (!(slope > 0.0)) {
    throw ParamError("stretch slope E must be positive");
  }
  if (levels < 2) {
    throw ParamError("stretch levels n_i must be at least 2");
  }
  if (initial < 0 || initial > levels - 1) {
    throw ParamError("stretch initial level i must lie in [0, n_i - 1]");
  }
}

bool operator==(const StretchParams& a, const StretchParams& b) {
  return a.midpoint == b.midpoint && a.slope == b.slope && a.levels == b.levels &&
         a.initial == b.initial && a.literal_scale == b.literal_scale;
}

bool operator==(const ClassifierConfig& a, const ClassifierConfig& b) {
  return a.c_range == b.c_range && a.e_range == b.e_range && a.c_length == b.c_length &&
         a.blob_matx == b.blob_matx && a.spot_matx == b.spot_matx && a.tau == b.tau &&
         a.median_window == b.median_window && a.stretch_variant == b.stretch_variant &&
         a.stretch == b.stretch && a.detect_margin == b.detect_margin &&
         a.ref_dilate == b.ref_dilate;
}

void ClassifierConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(c_range >= 1, "c_range must be >= 1");
  require(e_range >= 1, "e_range must be >= 1");
  require(c_length >= 1, "c_length must be >= 1");
  require(blob_matx >= 3 && blob_matx % 2 == 1, "blob_matx must be odd and >= 3");
  require(spot_matx >= 3 && spot_matx % 2 == 1, "spot_matx must be odd and >= 3");
  require(spot_matx < blob_matx, "spot_matx must be smaller than blob_matx");
  require(tau > 0.0 && tau <= 1.0, "tau must lie in (0, 1]");
  require(median_window >= 3 && median_window % 2 == 1, "median_window must be odd and >= 3");
  require(detect_margin >= 0, "detect_margin must be >= 0");
  require(ref_dilate >= 0, "ref_dilate must be >= 0");
  try {
    stretch.validate();
  } catch (const ParamError& e) {
    throw ConfigError(e.what());
  }
}

void ClassifierConfig::validate_for(long rows, long cols) const {
  if (2L * c_range >= std::min(rows, cols)) {
    throw ConfigError("corner zones overlap: 2*c_range must be < min(rows, cols)");
  }
}

std::string to_string(StretchVariant v) { return v == StretchVariant::Linear ? "linear" : "sigmoid"; }

StretchVariant parse_stretch_variant(std::string_view s) {
  if (s == "linear") return StretchVariant::Linear;
  if (s == "sigmoid") return StretchVariant::Sigmoid;
  throw ConfigError("stretch_variant must be linear or sigmoid, got '" + std::string(s) + "'");
}

namespace {

std::string_view strip(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  // from_chars for double is missing from older libstdc++, so go through strtod.
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + s + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(std::string(key) + ": expected true/false, got '" + std::string(v) + "'");
}

}  // namespace

void ClassifierConfig::set(std::string_view key, std::string_view value) {
  value = strip(value);
  if (key == "c_range") c_range = to_int(key, value);
  else if (key == "e_range") e_range = to_int(key, value);
  else if (key == "c_length") c_length = to_int(key, value);
  else if (key == "blob_matx") blob_matx = to_int(key, value);
  else if (key == "spot_matx") spot_matx = to_int(key, value);
  else if (key == "tau") tau = to_double(key, value);
  else if (key == "median_window") median_window = to_int(key, value);
  else if (key == "stretch_variant") stretch_variant = parse_stretch_variant(value);
  else if (key == "stretch.M") {
    if (value == "auto") stretch.midpoint.reset();
    else stretch.midpoint = to_double(key, value);
  }
  else if (key == "stretch.E") stretch.slope = to_double(key, value);
  else if (key == "stretch.n_i") stretch.levels = to_int(key, value);
  else if (key == "stretch.i") stretch.initial = to_int(key, value);
  else if (key == "stretch.literal_scale") stretch.literal_scale = to_bool(key, value);
  else if (key == "detect_margin") detect_margin = to_int(key, value);
  else if (key == "ref_dilate") ref_dilate = to_int(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

ClassifierConfig parse_config(std::string_view text, ClassifierConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    base.set(strip(line.substr(0, eq)), line.substr(eq + 1));
  }
  base.validate();
  return base;
}

ClassifierConfig load_config(const std::filesystem::path& path, ClassifierConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string format_config(const ClassifierConfig& cfg) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "c_range = " << cfg.c_range << '\n'
      << "e_range = " << cfg.e_range << '\n'
      << "c_length = " << cfg.c_length << '\n'
      << "blob_matx = " << cfg.blob_matx << '\n'
      << "spot_matx = " << cfg.spot_matx << '\n'
      << "tau = " << cfg.tau << '\n'
      << "median_window = " << cfg.median_window << '\n'
      << "stretch_variant = " << to_string(cfg.stretch_variant) << '\n';
  if (cfg.stretch.midpoint) {
    out << "stretch.M = " << *cfg.stretch.midpoint << '\n';
  } else {
    out << "stretch.M = auto\n";
  }
  out << "stretch.E = " << cfg.stretch.slope << '\n'
      << "stretch.n_i = " << cfg.stretch.levels << '\n'
      << "stretch.i = " << cfg.stretch.initial << '\n'
      << "stretch.literal_scale = " << (cfg.stretch.literal_scale ? "true" : "false") << '\n'
      << "detect_margin = " << cfg.detect_margin << '\n'
      << "ref_dilate = " << cfg.ref_dilate << '\n';
  return out.str();
}

}  // namespace tileinspect
