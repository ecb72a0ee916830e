#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotary/encodings.hpp"

namespace rotary {

/// JSON encoder description:
///
///   { "scheme": "mixed", "dim": 16, "axes": 2, "base": 100.0 }
///   { "scheme": "mixed", "dim": 4,  "axes": 2, "freqs": [[1.0, 0.5], [0.1, 0.2]] }
///   { "scheme": "uniform", "dim": 16, "axes": 2, "uniform_freq": 1.0 }
///   { "scheme": "liere", "dim": 4, "axes": 2, "generators": [[[...]], [[...]]] }
///
/// Only fields that were present are written back, so read -> write -> read
/// is exact.
struct EncoderConfig {
  std::string scheme;
  int dim = 0;
  int axes = 0;
  std::optional<double> base;
  std::optional<std::vector<std::vector<double>>> freqs;
  std::optional<double> uniformFreq;
  std::optional<std::vector<std::vector<std::vector<double>>>> generators;

  bool operator==(const EncoderConfig&) const = default;
};

/// Throws std::invalid_argument on missing or inconsistent fields.
EncoderConfig configFromJson(const nlohmann::json& j);
nlohmann::json configToJson(const EncoderConfig& config);

EncoderConfig parseConfig(const std::string& text);
std::string dumpConfig(const EncoderConfig& config);
EncoderConfig readConfigFile(const std::filesystem::path& path);

/// Builds the encoder; a table scheme without "freqs" uses the fixed schedule
/// with "base" (default 100).
Encoder makeEncoder(const EncoderConfig& config);

}  // namespace rotary
