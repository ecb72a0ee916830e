#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rotary/attention.hpp"

namespace rotary {

/// Affine map of [min, max] onto [0, 255], row-major. A constant raster maps to 0.
std::vector<std::uint8_t> normalizeToBytes(const MatrixXd& values);

/// Binary PGM: "P5\n<width> <height>\n255\n" followed by width*height bytes.
std::string encodePgm(const AttentionPattern& pattern);
void writePgm(const std::filesystem::path& path, const AttentionPattern& pattern);

/// CSV "i,j,p_x,p_y,value" with one row per pixel (row-major) and raw scores.
std::string encodePatternCsv(const AttentionPattern& pattern);
void writePatternCsv(const std::filesystem::path& path, const AttentionPattern& pattern);

/// Shortest round-trip decimal, always with a '.' or exponent ("1.0", "0.31622776601683794").
std::string formatDouble(double v);

}  // namespace rotary
