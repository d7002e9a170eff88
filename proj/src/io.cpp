// SPDX-License-Identifier: Apache-2.0
#include "vtc/io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace vtc {

namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 8> kRawMagic = {'V', 'T', 'T', 'E', 'N', 'S', 'O', 'R'};
constexpr std::uint32_t kRawVersion = 1;

std::vector<unsigned char> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool has_prefix(const std::vector<unsigned char>& bytes, std::string_view prefix) {
  return bytes.size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), bytes.begin(),
                    [](char a, unsigned char b) { return static_cast<unsigned char>(a) == b; });
}

std::uint64_t load_le(const unsigned char* p, int bytes) {
  std::uint64_t x = 0;
  for (int b = bytes - 1; b >= 0; --b) x = (x << 8) | p[b];
  return x;
}

void store_le(std::vector<unsigned char>& out, std::uint64_t x, int bytes) {
  for (int b = 0; b < bytes; ++b) out.push_back(static_cast<unsigned char>((x >> (8 * b)) & 0xffU));
}

// ---- PNM ----

class PnmTokens {
 public:
  explicit PnmTokens(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  unsigned long next_number(const fs::path& path) {
    skip_space();
    unsigned long value = 0;
    const auto* first = reinterpret_cast<const char*>(bytes_.data()) + pos_;
    const auto* last = reinterpret_cast<const char*>(bytes_.data()) + bytes_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw IngestError("malformed PNM header in " + path.string());
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  /// Skips the single whitespace byte that ends a binary header.
  std::size_t raster_start() const { return pos_ + 1; }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_]) != 0) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 2;
};

Image decode_pnm(const std::vector<unsigned char>& bytes, const fs::path& path) {
  const char kind = static_cast<char>(bytes[1]);
  const bool ascii = kind == '2' || kind == '3';
  const Index channels = (kind == '3' || kind == '6') ? 3 : 1;
  PnmTokens tok(bytes);
  Image img;
  img.width = static_cast<Index>(tok.next_number(path));
  img.height = static_cast<Index>(tok.next_number(path));
  const unsigned long maxval = tok.next_number(path);
  if (img.width < 1 || img.height < 1) throw IngestError("empty image " + path.string());
  if (maxval < 1 || maxval > 65535) throw IngestError("unsupported PNM maxval in " + path.string());
  img.channels = channels;
  const auto count = static_cast<std::size_t>(img.width * img.height * channels);
  img.samples.resize(count);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (ascii) {
    for (auto& s : img.samples) s = static_cast<double>(std::min(tok.next_number(path), maxval)) * scale;
    return img;
  }
  const std::size_t width = maxval > 255 ? 2 : 1;
  const std::size_t start = tok.raster_start();
  if (bytes.size() < start + count * width) throw IngestError("truncated PNM raster in " + path.string());
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned char* p = bytes.data() + start + i * width;
    const unsigned long raw = width == 2 ? (static_cast<unsigned long>(p[0]) << 8) | p[1] : p[0];
    img.samples[i] = static_cast<double>(std::min(raw, maxval)) * scale;
  }
  return img;
}

// ---- BMP ----

Image decode_bmp(const std::vector<unsigned char>& bytes, const fs::path& path) {
  if (bytes.size() < 54) throw IngestError("truncated BMP header in " + path.string());
  const auto offset = static_cast<std::size_t>(load_le(bytes.data() + 10, 4));
  const auto header = load_le(bytes.data() + 14, 4);
  const auto width = static_cast<std::int32_t>(load_le(bytes.data() + 18, 4));
  const auto height = static_cast<std::int32_t>(load_le(bytes.data() + 22, 4));
  const auto bpp = load_le(bytes.data() + 28, 2);
  const auto compression = load_le(bytes.data() + 30, 4);
  if (header < 40) throw IngestError("unsupported BMP header in " + path.string());
  if ((bpp != 24 && bpp != 32) || compression != 0) {
    throw IngestError("only uncompressed 24/32-bit BMP is supported: " + path.string());
  }
  if (width < 1 || height == 0) throw IngestError("empty image " + path.string());
  const bool top_down = height < 0;
  Image img;
  img.width = width;
  img.height = top_down ? -static_cast<Index>(height) : height;
  img.channels = 3;
  const std::size_t pixel = bpp / 8;
  const std::size_t stride = (static_cast<std::size_t>(width) * pixel + 3) / 4 * 4;
  if (bytes.size() < offset + stride * static_cast<std::size_t>(img.height)) {
    throw IngestError("truncated BMP raster in " + path.string());
  }
  img.samples.resize(static_cast<std::size_t>(img.width * img.height * 3));
  for (Index r = 0; r < img.height; ++r) {
    const Index src_row = top_down ? r : img.height - 1 - r;
    const unsigned char* row = bytes.data() + offset + stride * static_cast<std::size_t>(src_row);
    for (Index c = 0; c < img.width; ++c) {
      const unsigned char* px = row + static_cast<std::size_t>(c) * pixel;
      const auto base = static_cast<std::size_t>((r * img.width + c) * 3);
      img.samples[base + 0] = px[2] / 255.0;
      img.samples[base + 1] = px[1] / 255.0;
      img.samples[base + 2] = px[0] / 255.0;
    }
  }
  return img;
}

// ---- PNG ----

Image decode_png(const std::vector<unsigned char>& bytes, const fs::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&png, bytes.data(), bytes.size()) == 0) {
    throw IngestError("PNG decode failed for " + path.string() + ": " + png.message);
  }
  // Bit depth from IHDR. 16-bit files are read as 16-bit linear samples,
  // which libpng leaves unconverted for files without a gamma chunk.
  const bool sixteen = bytes.size() > 24 && bytes[24] == 16;
  const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  const bool alpha = (png.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  png.format = (color ? PNG_FORMAT_FLAG_COLOR : 0U) | (alpha ? PNG_FORMAT_FLAG_ALPHA : 0U) |
               (sixteen ? PNG_FORMAT_FLAG_LINEAR : 0U);
  const std::size_t stored = PNG_IMAGE_PIXEL_CHANNELS(png.format);
  const std::size_t count = static_cast<std::size_t>(png.width) * png.height * stored;
  std::vector<std::uint16_t> wide(sixteen ? count : 0);
  std::vector<unsigned char> narrow(sixteen ? 0 : count);
  void* buffer = sixteen ? static_cast<void*>(wide.data()) : static_cast<void*>(narrow.data());
  if (png_image_finish_read(&png, nullptr, buffer, 0, nullptr) == 0) {
    throw IngestError("PNG decode failed for " + path.string() + ": " + png.message);
  }
  Image img;
  img.width = png.width;
  img.height = png.height;
  img.channels = color ? 3 : 1;
  img.samples.resize(static_cast<std::size_t>(img.width * img.height * img.channels));
  const double scale = sixteen ? 1.0 / 65535.0 : 1.0 / 255.0;
  std::size_t dst = 0;
  for (std::size_t px = 0; px < static_cast<std::size_t>(png.width) * png.height; ++px) {
    for (Index ch = 0; ch < img.channels; ++ch) {
      const std::size_t src = px * stored + static_cast<std::size_t>(ch);
      img.samples[dst++] = (sixteen ? wide[src] : narrow[src]) * scale;
    }
  }
  return img;
}

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".pnm" || ext == ".bmp";
}

std::vector<fs::path> image_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IngestError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IngestError("no image files in " + dir.string());
  return files;
}

Tensor3 stack_gray(const fs::path& dir, std::optional<Index> max_slices) {
  auto files = image_files(dir);
  if (max_slices && static_cast<std::size_t>(*max_slices) < files.size()) {
    files.resize(static_cast<std::size_t>(*max_slices));
  }
  Tensor3 out;
  for (std::size_t k = 0; k < files.size(); ++k) {
    const Image img = to_grayscale(read_image(files[k]));
    if (k == 0) {
      out = Tensor3(img.height, img.width, static_cast<Index>(files.size()));
    } else if (img.height != out.rows() || img.width != out.cols()) {
      throw IngestError("frame size mismatch at " + files[k].string());
    }
    for (Index r = 0; r < img.height; ++r) {
      for (Index c = 0; c < img.width; ++c) out(r, c, static_cast<Index>(k)) = img.at(r, c, 0);
    }
  }
  return out;
}

}  // namespace

DataKind parse_data_kind(std::string_view name) {
  if (name == "color-image") return DataKind::kColorImage;
  if (name == "gray-video") return DataKind::kGrayVideo;
  if (name == "multispectral") return DataKind::kMultispectral;
  if (name == "raw-tensor") return DataKind::kRawTensor;
  throw std::invalid_argument("unknown data kind: " + std::string(name));
}

std::string_view to_string(DataKind kind) {
  switch (kind) {
    case DataKind::kColorImage: return "color-image";
    case DataKind::kGrayVideo: return "gray-video";
    case DataKind::kMultispectral: return "multispectral";
    case DataKind::kRawTensor: return "raw-tensor";
  }
  return "unknown";
}

Image read_image(const fs::path& path) {
  const auto bytes = read_file(path);
  if (has_prefix(bytes, "\x89PNG")) return decode_png(bytes, path);
  if (has_prefix(bytes, "BM")) return decode_bmp(bytes, path);
  if (bytes.size() > 2 && bytes[0] == 'P' && bytes[1] >= '2' && bytes[1] <= '6' && bytes[1] != '4') {
    return decode_pnm(bytes, path);
  }
  throw IngestError("unrecognized image format: " + path.string());
}

void write_pnm(const fs::path& path, const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw std::invalid_argument("write_pnm: need 1 or 3 channels");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << (image.channels == 1 ? "P5\n" : "P6\n") << image.width << ' ' << image.height << "\n255\n";
  for (double s : image.samples) {
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(s, 0.0, 1.0) * 255.0))));
  }
}

Image to_grayscale(const Image& image) {
  if (image.channels == 1) return image;
  if (image.channels < 3) throw IngestError("cannot convert a 2-channel image to grayscale");
  Image out{image.width, image.height, 1, {}};
  out.samples.resize(static_cast<std::size_t>(image.width * image.height));
  for (Index r = 0; r < image.height; ++r) {
    for (Index c = 0; c < image.width; ++c) {
      out.samples[static_cast<std::size_t>(r * image.width + c)] =
          0.299 * image.at(r, c, 0) + 0.587 * image.at(r, c, 1) + 0.114 * image.at(r, c, 2);
    }
  }
  return out;
}

void write_raw_tensor(const fs::path& path, const Tensor3& t) {
  std::vector<unsigned char> bytes(kRawMagic.begin(), kRawMagic.end());
  store_le(bytes, kRawVersion, 4);
  store_le(bytes, 0, 4);
  store_le(bytes, static_cast<std::uint64_t>(t.rows()), 8);
  store_le(bytes, static_cast<std::uint64_t>(t.cols()), 8);
  store_le(bytes, static_cast<std::uint64_t>(t.tubes()), 8);
  bytes.reserve(bytes.size() + static_cast<std::size_t>(t.size()) * 8);
  for (Index k = 0; k < t.tubes(); ++k) {
    for (Index i = 0; i < t.rows(); ++i) {
      for (Index j = 0; j < t.cols(); ++j) store_le(bytes, std::bit_cast<std::uint64_t>(t(i, j, k)), 8);
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Tensor3 read_raw_tensor(const fs::path& path) {
  const auto bytes = read_file(path);
  constexpr std::size_t kHeader = 8 + 4 + 4 + 3 * 8;
  if (bytes.size() < kHeader || !std::equal(kRawMagic.begin(), kRawMagic.end(), bytes.begin(),
                                             [](char a, unsigned char b) { return static_cast<unsigned char>(a) == b; })) {
    throw IngestError("not a raw tensor file: " + path.string());
  }
  if (load_le(bytes.data() + 8, 4) != kRawVersion) throw IngestError("unsupported raw tensor version in " + path.string());
  if (load_le(bytes.data() + 12, 4) != 0) throw IngestError("unsupported raw tensor flags in " + path.string());
  const auto m = load_le(bytes.data() + 16, 8);
  const auto n = load_le(bytes.data() + 24, 8);
  const auto p = load_le(bytes.data() + 32, 8);
  constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 31;
  if (m == 0 || n == 0 || p == 0 || m > kMaxDim || n > kMaxDim || p > kMaxDim) {
    throw IngestError("invalid raw tensor dims in " + path.string());
  }
  const std::uint64_t payload = bytes.size() - kHeader;
  if (payload % 8 != 0 || (payload / 8) % (m * n) != 0 || payload / 8 / (m * n) != p) {
    throw IngestError("raw tensor payload size mismatch in " + path.string());
  }
  Tensor3 t(static_cast<Index>(m), static_cast<Index>(n), static_cast<Index>(p));
  const unsigned char* cursor = bytes.data() + kHeader;
  for (Index k = 0; k < t.tubes(); ++k) {
    for (Index i = 0; i < t.rows(); ++i) {
      for (Index j = 0; j < t.cols(); ++j, cursor += 8) t(i, j, k) = std::bit_cast<double>(load_le(cursor, 8));
    }
  }
  return t;
}

Tensor3 ingest(const fs::path& path, DataKind kind, std::optional<Index> max_slices) {
  if (!fs::exists(path)) throw IngestError("no such file or directory: " + path.string());
  switch (kind) {
    case DataKind::kRawTensor: return read_raw_tensor(path);
    case DataKind::kGrayVideo:
    case DataKind::kMultispectral: return stack_gray(path, max_slices);
    case DataKind::kColorImage: {
      const Image img = read_image(path);
      Tensor3 out(img.height, img.width, 3);
      for (Index r = 0; r < img.height; ++r) {
        for (Index c = 0; c < img.width; ++c) {
          for (Index ch = 0; ch < 3; ++ch) out(r, c, ch) = img.at(r, c, img.channels == 1 ? 0 : ch);
        }
      }
      return out;
    }
  }
  throw IngestError("unsupported data kind");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), ptr};
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

}  // namespace vtc
