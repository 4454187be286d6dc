#pragma once

#include "facekit/image.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace facekit {

/// Loads an 8-bit PNG or PGM (P5/P2) file, sniffing the format from the
/// leading bytes. Color PNGs are reduced with ITU-R 601 luma weights
/// (0.299 R + 0.587 G + 0.114 B); alpha is ignored.
/// Throws IoFailure on unreadable or undecodable input.
GrayImage load_image(const std::string& path);

/// Decoders working on in-memory bytes.
GrayImage decode_png(const std::vector<std::uint8_t>& bytes);
GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes);

/// Writers (grayscale). PNG output is color type 0, bit depth 8.
void save_png(const GrayImage& img, const std::string& path);
void save_pgm(const GrayImage& img, const std::string& path);

std::vector<std::uint8_t> encode_png(const GrayImage& img);

} // namespace facekit
