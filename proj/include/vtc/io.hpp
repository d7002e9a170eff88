// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/tensor.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vtc {

/// Unreadable, malformed or unsupported input data.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DataKind { kColorImage, kGrayVideo, kMultispectral, kRawTensor };

/// Parses "color-image", "gray-video", "multispectral", "raw-tensor".
DataKind parse_data_kind(std::string_view name);
std::string_view to_string(DataKind kind);

/// Decoded raster with samples scaled to [0, 1], stored row-major and
/// channel-interleaved: value (r, c, ch) at (r * width + c) * channels + ch.
struct Image {
  Index width = 0;
  Index height = 0;
  Index channels = 0;
  std::vector<double> samples;

  [[nodiscard]] double at(Index r, Index c, Index ch) const {
    return samples[static_cast<std::size_t>((r * width + c) * channels + ch)];
  }
};

/// Reads PNG, binary or ASCII PPM/PGM (8 or 16 bit) and uncompressed 24/32-bit BMP,
/// chosen by file signature.
Image read_image(const std::filesystem::path& path);

/// Writes an 8-bit binary PGM (1 channel) or PPM (3 channels); samples are clamped to [0, 1].
void write_pnm(const std::filesystem::path& path, const Image& image);

/// Rec. 601 luma for 3- or 4-channel images; 1-channel images are returned unchanged.
Image to_grayscale(const Image& image);

/// Raw tensor interchange format, see docs/raw_tensor_format.md.
void write_raw_tensor(const std::filesystem::path& path, const Tensor3& t);
Tensor3 read_raw_tensor(const std::filesystem::path& path);

/// Loads data as an m x n x p tensor with entries in [0, 1]:
///   color-image   one image file, p = 3 channels;
///   gray-video    directory of frame images in name order, p = frames;
///   multispectral directory of single-band images in name order, p = bands;
///   raw-tensor    a raw tensor file, values taken as stored.
/// `max_slices` keeps only the first frames or bands.
Tensor3 ingest(const std::filesystem::path& path, DataKind kind,
               std::optional<Index> max_slices = std::nullopt);

/// Shortest round-trip decimal form, "inf"/"-inf"/"nan" for non-finite values,
/// independent of the global locale.
std::string format_double(double x);

/// Writes one CSV row; fields containing ',', '"' or a newline are quoted.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace vtc
