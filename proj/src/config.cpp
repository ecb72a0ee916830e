#include "rotary/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rotary {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("encoder config: " + msg);
}

int positionAxes(Scheme s) {
  switch (s) {
    case Scheme::Rope1d:
    case Scheme::SinusoidalAPE:
      return 1;
    case Scheme::LieRE:
      return -1;
    default:
      return 2;
  }
}

double number(const json& j, const char* key) {
  if (!j.is_number()) fail(std::string("'") + key + "' must be a number");
  return j.get<double>();
}

std::vector<std::vector<double>> numberGrid(const json& j, const char* key) {
  if (!j.is_array()) fail(std::string("'") + key + "' must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& row : j) {
    if (!row.is_array()) fail(std::string("'") + key + "' must be an array of arrays");
    auto& r = out.emplace_back();
    for (const auto& v : row) r.push_back(number(v, key));
  }
  return out;
}

MatrixXd toMatrix(const std::vector<std::vector<double>>& rows, Eigen::Index r, Eigen::Index c,
                  const char* what) {
  if (static_cast<Eigen::Index>(rows.size()) != r) {
    fail(std::string(what) + " must have " + std::to_string(r) + " rows");
  }
  MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c) {
      fail(std::string(what) + " rows must have " + std::to_string(c) + " entries");
    }
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = rows[i][k];
  }
  return m;
}

void validate(const EncoderConfig& c) {
  Scheme s;
  try {
    s = schemeFromString(c.scheme);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (c.dim < 1) fail("'dim' must be >= 1");
  if (c.axes < 1) fail("'axes' must be >= 1");
  if (c.uniformFreq && s != Scheme::Uniform) fail("'uniform_freq' only applies to uniform");
  if (c.generators && s != Scheme::LieRE) fail("'generators' only applies to liere");
  if (c.base && c.freqs) fail("give either 'base' or 'freqs', not both");

  if (s == Scheme::LieRE) {
    if (!c.generators) fail("liere needs 'generators'");
    if (c.base || c.freqs) fail("liere takes generators, not frequencies");
    if (static_cast<int>(c.generators->size()) != c.axes) fail("need one generator per axis");
    return;
  }
  if (positionAxes(s) != c.axes) {
    fail("scheme '" + c.scheme + "' has " + std::to_string(positionAxes(s)) + " axes");
  }
  if (c.dim % blockSize(s) != 0) {
    fail("'dim' must be a multiple of " + std::to_string(blockSize(s)) + " for " + c.scheme);
  }
  if (c.base && !(*c.base > 0.0)) fail("'base' must be positive");
  if (s == Scheme::Uniform && c.freqs) fail("uniform takes 'uniform_freq', not 'freqs'");
}

}  // namespace

EncoderConfig configFromJson(const json& j) {
  if (!j.is_object()) fail("expected a JSON object");
  static const std::set<std::string> known{"scheme", "dim",          "axes",      "base",
                                           "freqs",  "uniform_freq", "generators"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) fail("unknown field '" + key + "'");
  for (const char* key : {"scheme", "dim", "axes"})
    if (!j.contains(key)) fail(std::string("missing '") + key + "'");

  EncoderConfig c;
  if (!j["scheme"].is_string()) fail("'scheme' must be a string");
  c.scheme = j["scheme"].get<std::string>();
  if (!j["dim"].is_number_integer()) fail("'dim' must be an integer");
  if (!j["axes"].is_number_integer()) fail("'axes' must be an integer");
  c.dim = j["dim"].get<int>();
  c.axes = j["axes"].get<int>();
  if (j.contains("base")) c.base = number(j["base"], "base");
  if (j.contains("freqs")) c.freqs = numberGrid(j["freqs"], "freqs");
  if (j.contains("uniform_freq")) c.uniformFreq = number(j["uniform_freq"], "uniform_freq");
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) fail("'generators' must be an array of matrices");
    c.generators.emplace();
    for (const auto& g : j["generators"]) c.generators->push_back(numberGrid(g, "generators"));
  }
  validate(c);
  return c;
}

json configToJson(const EncoderConfig& c) {
  json j;
  j["scheme"] = c.scheme;
  j["dim"] = c.dim;
  j["axes"] = c.axes;
  if (c.base) j["base"] = *c.base;
  if (c.freqs) j["freqs"] = *c.freqs;
  if (c.uniformFreq) j["uniform_freq"] = *c.uniformFreq;
  if (c.generators) j["generators"] = *c.generators;
  return j;
}

EncoderConfig parseConfig(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return configFromJson(j);
}

std::string dumpConfig(const EncoderConfig& config) { return configToJson(config).dump(); }

EncoderConfig readConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseConfig(ss.str());
}

Encoder makeEncoder(const EncoderConfig& c) {
  validate(c);
  const Scheme s = schemeFromString(c.scheme);
  if (s == Scheme::LieRE) {
    std::vector<SkewMatrixXd> gens;
    for (const auto& g : *c.generators) gens.emplace_back(toMatrix(g, c.dim, c.dim, "generator"));
    return Encoder::liere(LieREParams(std::move(gens)));
  }
  const Eigen::Index blocks = c.dim / blockSize(s);
  if (s == Scheme::Uniform) return Encoder::uniform(blocks, c.uniformFreq.value_or(1.0));
  if (c.freqs) {
    return Encoder::fromTable(
        s, FrequencyTable(s, toMatrix(*c.freqs, blocks, tableAxes(s), "'freqs'")));
  }
  return Encoder::fromTable(s, FrequencyTable::fixed(s, blocks, c.base.value_or(100.0)));
}

}  // namespace rotary
