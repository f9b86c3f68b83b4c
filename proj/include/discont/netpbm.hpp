#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "discont/raster.hpp"

namespace discont {

using Bytes = std::vector<std::uint8_t>;

/// Which component of a color image becomes the intensity. Gray on a color
/// image is the integer luma (77 R + 150 G + 29 B) >> 8.
enum class Channel { Gray, Red, Green, Blue };

/// Decodes PGM (P2/P5) or PPM (P3/P6). A PGM only accepts Channel::Gray.
/// Malformed input throws FormatError naming the byte offset.
IntensityGrid decode_image(std::span<const std::uint8_t> bytes, Channel channel = Channel::Gray);

/// Binary PGM (P5) by default, plain P2 otherwise. Two-byte big-endian samples
/// when max_value > 255. Needs a single-frame grid with 1 <= max_value <= 65535.
Bytes encode_pgm(const IntensityGrid& grid, bool binary = true);

/// PBM with 1 (black) for set pixels: packed P4 by default, plain P1 otherwise.
Bytes encode_pbm(const Mask& mask, bool binary = true);
Mask decode_pbm(std::span<const std::uint8_t> bytes);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace discont
