#include "rotary/image.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "rotary/grid.hpp"

namespace rotary {

std::vector<std::uint8_t> normalizeToBytes(const MatrixXd& values) {
  const double lo = values.minCoeff(), hi = values.maxCoeff();
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double t = hi > lo ? (values(r, c) - lo) / (hi - lo) : 0.0;
      out.push_back(static_cast<std::uint8_t>(std::lround(255.0 * t)));
    }
  }
  return out;
}

std::string encodePgm(const AttentionPattern& pattern) {
  const auto bytes = normalizeToBytes(pattern.values);
  std::string out = "P5\n" + std::to_string(pattern.width) + " " + std::to_string(pattern.height) +
                    "\n255\n";
  out.append(bytes.begin(), bytes.end());
  return out;
}

namespace {

void writeFile(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void writePgm(const std::filesystem::path& path, const AttentionPattern& pattern) {
  writeFile(path, encodePgm(pattern));
}

std::string formatDouble(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string encodePatternCsv(const AttentionPattern& pattern) {
  std::string out = "i,j,p_x,p_y,value\n";
  for (int j = 0; j < pattern.height; ++j) {
    const double py = gridCoordinate(j, pattern.height, std::numbers::pi);
    for (int i = 0; i < pattern.width; ++i) {
      const double px = gridCoordinate(i, pattern.width, std::numbers::pi);
      out += std::to_string(i) + "," + std::to_string(j) + "," + formatDouble(px) + "," +
             formatDouble(py) + "," + formatDouble(pattern.values(j, i)) + "\n";
    }
  }
  return out;
}

void writePatternCsv(const std::filesystem::path& path, const AttentionPattern& pattern) {
  writeFile(path, encodePatternCsv(pattern));
}

}  // namespace rotary
