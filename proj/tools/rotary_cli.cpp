// rotary: render attention patterns, print frequency schedules, run the
// verification suite and time the encoders.
//
// Exit codes: 0 success / all checks passed, 1 a check failed, 2 usage or I/O error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotary/attention.hpp"
#include "rotary/config.hpp"
#include "rotary/encodings.hpp"
#include "rotary/grid.hpp"
#include "rotary/image.hpp"
#include "rotary/random.hpp"
#include "rotary/verify.hpp"

namespace {

using namespace rotary;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct EncoderFlags {
  std::string configPath;
  std::string scheme = "axial";
  int dim = 16;
  std::optional<double> base;
  std::optional<double> uniformFreq;
};

void addEncoderFlags(CLI::App* cmd, EncoderFlags& f) {
  cmd->add_option("--config", f.configPath, "Encoder JSON config (overrides inline flags)");
  cmd->add_option("--scheme", f.scheme, "Encoder scheme")
      ->check(CLI::IsMember({"ape", "rope1d", "trivial2d", "axial", "mixed", "spherical",
                             "spherical-fast", "uniform", "liere"}));
  cmd->add_option("--dim", f.dim, "Embedding dimension N");
  cmd->add_option("--base", f.base, "Base of the fixed frequency schedule");
  cmd->add_option("--uniform-freq", f.uniformFreq, "Shared frequency for the uniform scheme");
}

Encoder buildEncoder(const EncoderFlags& f, std::uint64_t seed) {
  if (!f.configPath.empty()) return makeEncoder(readConfigFile(f.configPath));
  const Scheme s = schemeFromString(f.scheme);
  if (s == Scheme::LieRE) {
    CounterRng rng(seed, 3);
    return Encoder::liere(LieREParams({rng.skew(f.dim), rng.skew(f.dim)}));
  }
  EncoderConfig c;
  c.scheme = f.scheme;
  c.dim = f.dim;
  c.axes = (s == Scheme::Rope1d || s == Scheme::SinusoidalAPE) ? 1 : 2;
  c.base = f.base;
  c.uniformFreq = f.uniformFreq;
  return makeEncoder(c);
}

int cmdPattern(const EncoderFlags& ef, int width, int height, std::optional<int> block,
               std::uint64_t seed, bool matched, const std::string& outPath, bool raw) {
  const Encoder enc = buildEncoder(ef, seed);
  CounterRng rng(seed);
  const VectorXd zq = rng.unitVector(enc.dim());
  const VectorXd zk = matched ? zq : rng.unitVector(enc.dim());
  const AttentionPattern pat = renderPattern(enc, zq, zk, width, height, block);
  writePgm(outPath, pat);
  if (raw) {
    std::filesystem::path csv(outPath);
    csv.replace_extension(".csv");
    writePatternCsv(csv, pat);
  }
  return 0;
}

int cmdFreqs(int blocks, double base) {
  const FrequencyTable t = frequencySchedule(blocks, base);
  std::cout << "d,omega\n";
  for (Eigen::Index d = 0; d < t.blocks(); ++d) std::cout << d << "," << formatDouble(t(d, 0)) << "\n";
  return 0;
}

int cmdVerify(const std::vector<std::string>& only, std::uint64_t seed, bool list) {
  if (list) {
    for (const auto& c : checkRegistry())
      std::cout << c.name << (c.inDefaultRun ? "" : " (not in default run)") << "\n";
    return 0;
  }
  std::vector<std::string> names;
  for (const auto& item : only) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) names.push_back(part);
  }
  const auto reports = runChecks(names, seed);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.toJsonLine() << "\n";
    ok = ok && r.passed;
  }
  std::cout.flush();
  return ok ? 0 : kExitCheckFailed;
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

int cmdBench(int batch, int tokens, int dim, int reps, bool includeLiere, std::uint64_t seed) {
  if (batch < 1 || tokens < 1 || dim < 4 || reps < 1) {
    throw std::invalid_argument("bench: batch, tokens, reps must be >= 1 and dim >= 4");
  }
  constexpr int kLiereDefaultLimit = 256;
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(tokens))));
  const PatchGrid grid = makeGrid(side, side);

  std::vector<Encoder> encoders;
  for (Scheme s : {Scheme::SinusoidalAPE, Scheme::Rope1d, Scheme::Trivial2d, Scheme::Axial,
                   Scheme::Mixed, Scheme::Spherical, Scheme::SphericalFast, Scheme::Uniform}) {
    const Eigen::Index blocks = dim / blockSize(s);
    encoders.push_back(s == Scheme::Uniform ? Encoder::uniform(blocks)
                                            : Encoder::fromTable(s, FrequencyTable::fixed(s, blocks)));
  }
  if (includeLiere || dim <= kLiereDefaultLimit) {
    CounterRng rng(seed, 3);
    encoders.push_back(Encoder::liere(LieREParams({rng.skew(dim), rng.skew(dim)})));
  }

  std::cout << "scheme,median_ns_per_token,iqr\n";
  for (const Encoder& enc : encoders) {
    CounterRng rng(seed);
    const auto count = static_cast<std::size_t>(batch) * static_cast<std::size_t>(tokens);
    std::vector<VectorXd> zs;
    std::vector<Position> ps;
    zs.reserve(count);
    ps.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      zs.push_back(rng.normalVector(enc.dim()));
      const Eigen::Vector2d p = grid.positions()[i % static_cast<std::size_t>(tokens)];
      ps.push_back(enc.axes() == 1 ? Position::Constant(1, static_cast<double>(i % tokens))
                                   : patternPosition(enc, p.x(), p.y()));
    }
    std::vector<double> perToken;
    volatile double sink = 0.0;
    for (int r = 0; r < reps; ++r) {
      const auto start = std::chrono::steady_clock::now();
      double acc = 0.0;
      for (std::size_t i = 0; i < count; ++i) acc += enc.encode(zs[i], ps[i])(0);
      const auto stop = std::chrono::steady_clock::now();
      sink = sink + acc;
      const double ns = std::chrono::duration<double, std::nano>(stop - start).count();
      perToken.push_back(std::max(ns, 1.0) / static_cast<double>(count));
    }
    std::cout << toString(enc.scheme()) << "," << formatDouble(percentile(perToken, 0.5)) << ","
              << formatDouble(percentile(perToken, 0.75) - percentile(perToken, 0.25)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotary positional-encoding toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;

  EncoderFlags patternFlags;
  int width = 64, height = 64;
  std::optional<int> block;
  bool matched = false, raw = false;
  std::string outPath = "pattern.pgm";
  auto* pattern = app.add_subcommand("pattern", "Render an attention pattern as PGM");
  addEncoderFlags(pattern, patternFlags);
  pattern->add_option("--width", width, "Raster width")->check(CLI::PositiveNumber);
  pattern->add_option("--height", height, "Raster height")->check(CLI::PositiveNumber);
  pattern->add_option("--block", block, "Restrict to one component (pair/triple)");
  pattern->add_option("--seed", seed, "Seed for the random query/key");
  pattern->add_flag("--matched", matched, "Use the same vector for query and key");
  pattern->add_option("--out,-o", outPath, "Output PGM path");
  pattern->add_flag("--raw", raw, "Also write raw scores as CSV next to the PGM");

  int blocks = 8;
  double base = 100.0;
  auto* freqs = app.add_subcommand("freqs", "Print the fixed frequency schedule as CSV");
  freqs->add_option("--blocks,-D", blocks, "Number of blocks D");
  freqs->add_option("--base", base, "Schedule base");

  std::vector<std::string> only;
  bool list = false;
  auto* verify = app.add_subcommand("verify", "Run the verification checks (JSON lines)");
  verify->add_option("--only", only, "Check names to run (comma separated or repeated)");
  verify->add_option("--seed", seed, "Base seed");
  verify->add_flag("--list", list, "List check names");

  int batch = 4, tokens = 196, dim = 60, reps = 5;
  bool includeLiere = false;
  auto* bench = app.add_subcommand("bench", "Time every encoder, CSV output");
  bench->add_option("--batch", batch, "Batch size B");
  bench->add_option("--tokens", tokens, "Tokens per sequence T");
  bench->add_option("--dim", dim, "Embedding dimension N");
  bench->add_option("--reps", reps, "Timed repetitions");
  bench->add_flag("--include-liere", includeLiere, "Time LieRE even above N = 256");
  bench->add_option("--seed", seed, "Seed for inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*pattern) return cmdPattern(patternFlags, width, height, block, seed, matched, outPath, raw);
    if (*freqs) return cmdFreqs(blocks, base);
    if (*verify) return cmdVerify(only, seed, list);
    if (*bench) return cmdBench(batch, tokens, dim, reps, includeLiere, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
