#include "tileinspect/raster.hpp"

#include "tileinspect/error.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace tileinspect {

RasterImage::RasterImage(Index width, Index height, Rgb fill)
    : red_(GrayImage::Constant(height, width, fill.r)),
      green_(GrayImage::Constant(height, width, fill.g)),
      blue_(GrayImage::Constant(height, width, fill.b)) {
  if (width < 1 || height < 1) {
    throw DimensionError("raster dimensions must be at least 1x1");
  }
}

RasterImage RasterImage::from_interleaved(Index width, Index height, const std::uint8_t* data) {
  RasterImage img(width, height);
  for (Index r = 0; r < height; ++r) {
    for (Index c = 0; c < width; ++c) {
      const std::uint8_t* px = data + 3 * (r * width + c);
      img.set(r, c, {px[0], px[1], px[2]});
    }
  }
  return img;
}

std::vector<std::uint8_t> RasterImage::interleaved() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(width() * height() * 3));
  auto it = out.begin();
  for (Index r = 0; r < height(); ++r) {
    for (Index c = 0; c < width(); ++c) {
      *it++ = red_(r, c);
      *it++ = green_(r, c);
      *it++ = blue_(r, c);
    }
  }
  return out;
}

bool operator==(const RasterImage& a, const RasterImage& b) {
  return a.width() == b.width() && a.height() == b.height() && (a.red_ == b.red_).all() &&
         (a.green_ == b.green_).all() && (a.blue_ == b.blue_).all();
}

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RasterImage decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
    throw DecodeError(name + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
    std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError(name + ": " + msg);
  }
  return RasterImage::from_interleaved(image.width, image.height, buffer.data());
}

std::uint32_t le32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}
std::uint16_t le16(const std::uint8_t* p) { return std::uint16_t(p[0] | p[1] << 8); }

RasterImage decode_bmp(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  auto fail = [&](const char* why) { return DecodeError(name + ": " + why); };
  if (bytes.size() < 54) {
    throw fail("truncated BMP header");
  }
  const std::uint32_t pixel_offset = le32(&bytes[10]);
  const std::uint32_t header_size = le32(&bytes[14]);
  if (header_size < 40 || 14 + header_size > bytes.size()) {
    throw fail("unsupported BMP header");
  }
  const auto width = static_cast<std::int32_t>(le32(&bytes[18]));
  const auto raw_height = static_cast<std::int32_t>(le32(&bytes[22]));
  const std::uint16_t bpp = le16(&bytes[28]);
  const std::uint32_t compression = le32(&bytes[30]);
  const bool top_down = raw_height < 0;
  const std::int64_t height = top_down ? -std::int64_t(raw_height) : raw_height;
  if (width < 1 || height < 1) {
    throw fail("invalid BMP dimensions");
  }
  if (!(compression == 0 || (compression == 3 && bpp == 32))) {
    throw fail("compressed BMP not supported");
  }
  if (bpp != 8 && bpp != 24 && bpp != 32) {
    throw fail("unsupported BMP bit depth");
  }
  std::vector<Rgb> palette;
  if (bpp == 8) {
    std::uint32_t colors = le32(&bytes[46]);
    if (colors == 0) colors = 256;
    const std::size_t pal_off = 14 + header_size;
    if (colors > 256 || pal_off + 4 * std::size_t(colors) > bytes.size()) {
      throw fail("truncated BMP palette");
    }
    for (std::uint32_t i = 0; i < colors; ++i) {
      const std::uint8_t* p = &bytes[pal_off + 4 * i];
      palette.push_back({p[2], p[1], p[0]});
    }
  }
  const std::size_t stride = (std::size_t(width) * bpp / 8 + 3) & ~std::size_t(3);
  if (pixel_offset + stride * std::size_t(height) > bytes.size()) {
    throw fail("truncated BMP pixel data");
  }
  RasterImage img(width, height);
  for (std::int64_t r = 0; r < height; ++r) {
    const std::int64_t src_row = top_down ? r : height - 1 - r;
    const std::uint8_t* row = &bytes[pixel_offset + stride * std::size_t(src_row)];
    for (std::int32_t c = 0; c < width; ++c) {
      if (bpp == 8) {
        const std::uint8_t idx = row[c];
        if (idx >= palette.size()) {
          throw fail("BMP palette index out of range");
        }
        img.set(r, c, palette[idx]);
      } else {
        const std::uint8_t* p = row + std::size_t(c) * (bpp / 8);
        img.set(r, c, {p[2], p[1], p[0]});
      }
    }
  }
  return img;
}

void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}
void put_le16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
}

std::vector<std::uint8_t> encode_bmp(const RasterImage& img) {
  const auto w = static_cast<std::uint32_t>(img.width());
  const auto h = static_cast<std::uint32_t>(img.height());
  const std::uint32_t stride = (w * 3 + 3) & ~3u;
  std::vector<std::uint8_t> out;
  out.reserve(54 + stride * h);
  out.push_back('B');
  out.push_back('M');
  put_le32(out, 54 + stride * h);
  put_le32(out, 0);
  put_le32(out, 54);
  put_le32(out, 40);
  put_le32(out, w);
  put_le32(out, h);
  put_le16(out, 1);
  put_le16(out, 24);
  put_le32(out, 0);
  put_le32(out, stride * h);
  put_le32(out, 2835);
  put_le32(out, 2835);
  put_le32(out, 0);
  put_le32(out, 0);
  for (std::uint32_t i = 0; i < h; ++i) {
    const Index r = h - 1 - i;
    for (Index c = 0; c < img.width(); ++c) {
      const Rgb px = img.at(r, c);
      out.push_back(px.b);
      out.push_back(px.g);
      out.push_back(px.r);
    }
    for (std::uint32_t pad = w * 3; pad < stride; ++pad) out.push_back(0);
  }
  return out;
}

}  // namespace

RasterImage load_image(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw FileNotFound("no such image: " + path.string());
  }
  const auto bytes = read_file(path);
  static constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngMagic, 8) == 0) {
    return decode_png(bytes, path.string());
  }
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
    return decode_bmp(bytes, path.string());
  }
  throw DecodeError(path.string() + ": not a PNG or BMP file");
}

void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format) {
  if (format == ImageFormat::Png) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    const auto data = img.interleaved();
    if (png_image_write_to_file(&image, path.string().c_str(), 0, data.data(), 0, nullptr) == 0) {
      throw IoError(path.string() + ": " + image.message);
    }
    return;
  }
  const auto bytes = encode_bmp(img);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
}

void save_image(const RasterImage& img, const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".png") {
    save_image(img, path, ImageFormat::Png);
  } else if (ext == ".bmp") {
    save_image(img, path, ImageFormat::Bmp);
  } else {
    throw ParamError("cannot infer image format from " + path.string());
  }
}

RasterImage trim(const RasterImage& img, Index width, Index height) {
  if (width < 1 || height < 1 || width > img.width() || height > img.height()) {
    throw DimensionError("trim " + std::to_string(width) + "x" + std::to_string(height) +
                         " does not fit " + std::to_string(img.width()) + "x" +
                         std::to_string(img.height()));
  }
  const Index col0 = (img.width() - width) / 2;
  const Index row0 = (img.height() - height) / 2;
  RasterImage out(width, height);
  out.red() = img.red().block(row0, col0, height, width);
  out.green() = img.green().block(row0, col0, height, width);
  out.blue() = img.blue().block(row0, col0, height, width);
  return out;
}

GrayImage to_gray(const RasterImage& img) {
  const Grid<double> luma = 0.299 * img.red().cast<double>() + 0.587 * img.green().cast<double>() +
                            0.114 * img.blue().cast<double>();
  return (luma + 0.5).floor().min(255.0).max(0.0).cast<std::uint8_t>();
}

}  // namespace tileinspect
