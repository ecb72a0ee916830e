#include "rotary/encodings.hpp"

#include <array>
#include <utility>

namespace rotary {

namespace {

struct SchemeInfo {
  Scheme scheme;
  std::string_view name;
  int blockSize;
  int tableAxes;
  bool abelian;
};

constexpr std::array<SchemeInfo, 9> kSchemes{{
    {Scheme::Rope1d, "rope1d", 2, 1, true},
    {Scheme::Trivial2d, "trivial2d", 2, 1, true},
    {Scheme::Axial, "axial", 4, 2, true},
    {Scheme::Mixed, "mixed", 2, 2, true},
    {Scheme::Spherical, "spherical", 3, 2, false},
    {Scheme::SphericalFast, "spherical-fast", 3, 2, false},
    {Scheme::Uniform, "uniform", 4, 2, true},
    {Scheme::LieRE, "liere", 1, 0, false},
    {Scheme::SinusoidalAPE, "ape", 2, 1, false},
}};

const SchemeInfo& info(Scheme s) {
  for (const auto& i : kSchemes)
    if (i.scheme == s) return i;
  throw std::invalid_argument("unknown scheme");
}

}  // namespace

std::string_view toString(Scheme scheme) { return info(scheme).name; }

Scheme schemeFromString(std::string_view name) {
  for (const auto& i : kSchemes)
    if (i.name == name) return i.scheme;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

int blockSize(Scheme scheme) { return info(scheme).blockSize; }
int tableAxes(Scheme scheme) { return info(scheme).tableAxes; }
bool isAbelian(Scheme scheme) { return info(scheme).abelian; }

FrequencyTable::FrequencyTable(Scheme scheme, MatrixXd freqs)
    : scheme_(scheme), freqs_(std::move(freqs)) {
  if (scheme == Scheme::LieRE) {
    throw std::invalid_argument("FrequencyTable: LieRE is parameterized by generators");
  }
  if (freqs_.rows() == 0) throw std::invalid_argument("FrequencyTable: need at least one block");
  if (freqs_.cols() != tableAxes(scheme)) {
    throw std::invalid_argument("FrequencyTable: scheme '" + std::string(toString(scheme)) +
                                "' expects " + std::to_string(tableAxes(scheme)) +
                                " frequency columns, got " + std::to_string(freqs_.cols()));
  }
  if (!freqs_.allFinite()) throw std::invalid_argument("FrequencyTable: non-finite frequency");
  if (scheme == Scheme::Uniform && (freqs_.array() != freqs_(0, 0)).any()) {
    throw std::invalid_argument("FrequencyTable: uniform table entries must all be equal");
  }
}

FrequencyTable frequencySchedule(Eigen::Index blocks, double base) {
  if (blocks < 1) throw std::invalid_argument("frequencySchedule: D must be >= 1");
  if (!(base > 0.0) || !std::isfinite(base)) {
    throw std::invalid_argument("frequencySchedule: base must be positive");
  }
  MatrixXd f(blocks, 1);
  for (Eigen::Index d = 0; d < blocks; ++d) {
    f(d, 0) = std::pow(base, -2.0 * static_cast<double>(d) / static_cast<double>(blocks));
  }
  return FrequencyTable(Scheme::Rope1d, std::move(f));
}

FrequencyTable FrequencyTable::fixed(Scheme scheme, Eigen::Index blocks, double base) {
  const VectorXd schedule = frequencySchedule(blocks, base).freqs().col(0);
  return FrequencyTable(scheme, schedule.replicate(1, tableAxes(scheme)));
}

FrequencyTable FrequencyTable::uniform(Eigen::Index blocks, double omega) {
  return FrequencyTable(Scheme::Uniform, MatrixXd::Constant(blocks, 2, omega));
}

LieREParams::LieREParams(std::vector<SkewMatrixXd> gens) : generators(std::move(gens)) {
  if (generators.empty()) throw std::invalid_argument("LieREParams: need at least one generator");
  for (const auto& g : generators) generators.front().checkSameDim(g, "LieREParams");
}

SkewMatrixXd LieREParams::combined(const Position& p) const {
  detail::checkPosition(p, axes(), "LieREParams::combined");
  MatrixXd sum = MatrixXd::Zero(dim(), dim());
  for (Eigen::Index m = 0; m < axes(); ++m) sum += p(m) * generators[m].matrix();
  return SkewMatrixXd::project(sum);
}

namespace detail {

void partitionError(const char* what, Eigen::Index n, Eigen::Index block,
                    Eigen::Index tableBlocks) {
  throw std::invalid_argument(std::string(what) + ": vector of length " + std::to_string(n) +
                              " does not match " + std::to_string(tableBlocks) +
                              " blocks of size " + std::to_string(block));
}

void axesError(const char* what, Eigen::Index got, Eigen::Index expected) {
  throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                              " axes, got " + std::to_string(got));
}

}  // namespace detail

Encoder Encoder::fromTable(Scheme scheme, FrequencyTable table) {
  if (scheme == Scheme::LieRE) throw std::invalid_argument("Encoder: LieRE needs generators");
  if (scheme == Scheme::Uniform) {
    table = FrequencyTable(Scheme::Uniform, table.freqs());
  } else if (table.axes() != tableAxes(scheme)) {
    throw std::invalid_argument("Encoder: scheme '" + std::string(toString(scheme)) +
                                "' needs a table with " + std::to_string(tableAxes(scheme)) +
                                " columns");
  }
  Encoder e;
  e.scheme_ = scheme;
  e.table_ = std::move(table);
  return e;
}

Encoder Encoder::rope1d(FrequencyTable t) { return fromTable(Scheme::Rope1d, std::move(t)); }
Encoder Encoder::trivial2d(FrequencyTable t) { return fromTable(Scheme::Trivial2d, std::move(t)); }
Encoder Encoder::axial(FrequencyTable t) { return fromTable(Scheme::Axial, std::move(t)); }
Encoder Encoder::mixed(FrequencyTable t) { return fromTable(Scheme::Mixed, std::move(t)); }
Encoder Encoder::spherical(FrequencyTable t) { return fromTable(Scheme::Spherical, std::move(t)); }
Encoder Encoder::sphericalFast(FrequencyTable t) {
  return fromTable(Scheme::SphericalFast, std::move(t));
}
Encoder Encoder::sinusoidal(FrequencyTable t) {
  return fromTable(Scheme::SinusoidalAPE, std::move(t));
}
Encoder Encoder::uniform(Eigen::Index blocks, double omega) {
  return fromTable(Scheme::Uniform, FrequencyTable::uniform(blocks, omega));
}

Encoder Encoder::liere(LieREParams params) {
  if (params.generators.empty()) throw std::invalid_argument("Encoder: LieRE needs generators");
  Encoder e;
  e.scheme_ = Scheme::LieRE;
  e.liere_ = std::move(params);
  return e;
}

Eigen::Index Encoder::dim() const {
  if (liere_) return liere_->dim();
  return table_->blocks() * blockSize();
}

Eigen::Index Encoder::axes() const {
  switch (scheme_) {
    case Scheme::Rope1d:
    case Scheme::SinusoidalAPE:
      return 1;
    case Scheme::LieRE:
      return liere_->axes();
    default:
      return 2;
  }
}

const FrequencyTable& Encoder::table() const {
  if (!table_) throw std::logic_error("Encoder: LieRE has no frequency table");
  return *table_;
}

const LieREParams& Encoder::liereParams() const {
  if (!liere_) throw std::logic_error("Encoder: not a LieRE encoder");
  return *liere_;
}

Encoder Encoder::withTable(FrequencyTable table) const { return fromTable(scheme_, std::move(table)); }

VectorXd Encoder::encode(const VectorXd& z, const Position& p) const {
  switch (scheme_) {
    case Scheme::Rope1d:
      detail::checkPosition(p, 1, "rope1d");
      return rotary::rope1d(z, p(0), *table_);
    case Scheme::Trivial2d:
      return rotary::trivial2d(z, p, *table_);
    case Scheme::Axial:
    case Scheme::Uniform:
      return rotary::axial(z, p, *table_);
    case Scheme::Mixed:
      return rotary::mixed(z, p, *table_);
    case Scheme::Spherical:
      return rotary::spherical(z, p, *table_);
    case Scheme::SphericalFast:
      return rotary::sphericalFast(z, p, *table_);
    case Scheme::LieRE:
      return rotary::liere(z, p, *liere_);
    case Scheme::SinusoidalAPE:
      detail::checkPosition(p, 1, "sinusoidalAPE");
      return rotary::sinusoidalAPE(z, p(0), *table_);
  }
  throw std::logic_error("Encoder::encode: unhandled scheme");
}

namespace {

// d/dphi of <q, R(phi) k> for 2-vectors, phi = theta_k - theta_q.
double pairAngleDerivative(const Eigen::Ref<const Eigen::Vector2d>& q,
                           const Eigen::Ref<const Eigen::Vector2d>& k, double phi) {
  const double dot = q.dot(k);
  const double cross = q(1) * k(0) - q(0) * k(1);
  return -std::sin(phi) * dot + std::cos(phi) * cross;
}

VectorXd pairGradient(const VectorXd& zq, const VectorXd& zk, Eigen::Index pairs,
                      const auto& angleQ, const auto& angleK, const auto& weightQ,
                      const auto& weightK, Eigen::Index axes) {
  VectorXd g = VectorXd::Zero(pairs * axes);
  for (Eigen::Index d = 0; d < pairs; ++d) {
    const double phi = angleK(d) - angleQ(d);
    const double dphi = pairAngleDerivative(zq.segment<2>(2 * d), zk.segment<2>(2 * d), phi);
    for (Eigen::Index m = 0; m < axes; ++m) g(d * axes + m) = dphi * (weightK(d, m) - weightQ(d, m));
  }
  return g;
}

}  // namespace

VectorXd gradFrequencies(Scheme scheme, const VectorXd& zq, const VectorXd& zk, const Position& pq,
                         const Position& pk, const FrequencyTable& t) {
  if (zq.size() != zk.size()) throw std::invalid_argument("gradFrequencies: q/k size mismatch");
  switch (scheme) {
    case Scheme::Rope1d:
    case Scheme::Trivial2d: {
      detail::checkPartition(zq, 2, t, 1, "gradFrequencies");
      const Eigen::Index posAxes = scheme == Scheme::Rope1d ? 1 : 2;
      detail::checkPosition(pq, posAxes, "gradFrequencies");
      detail::checkPosition(pk, posAxes, "gradFrequencies");
      const double sq = pq.sum(), sk = pk.sum();
      return pairGradient(
          zq, zk, t.blocks(), [&](Eigen::Index d) { return t(d, 0) * sq; },
          [&](Eigen::Index d) { return t(d, 0) * sk; }, [&](Eigen::Index, Eigen::Index) { return sq; },
          [&](Eigen::Index, Eigen::Index) { return sk; }, 1);
    }
    case Scheme::Mixed: {
      detail::checkPartition(zq, 2, t, 2, "gradFrequencies");
      detail::checkPosition(pq, 2, "gradFrequencies");
      detail::checkPosition(pk, 2, "gradFrequencies");
      return pairGradient(
          zq, zk, t.blocks(), [&](Eigen::Index d) { return t(d, 0) * pq(0) + t(d, 1) * pq(1); },
          [&](Eigen::Index d) { return t(d, 0) * pk(0) + t(d, 1) * pk(1); },
          [&](Eigen::Index, Eigen::Index m) { return pq(m); },
          [&](Eigen::Index, Eigen::Index m) { return pk(m); }, 2);
    }
    case Scheme::Axial:
    case Scheme::Uniform: {
      detail::checkPartition(zq, 4, t, 2, "gradFrequencies");
      detail::checkPosition(pq, 2, "gradFrequencies");
      detail::checkPosition(pk, 2, "gradFrequencies");
      VectorXd g(2 * t.blocks());
      for (Eigen::Index d = 0; d < t.blocks(); ++d) {
        for (Eigen::Index m = 0; m < 2; ++m) {
          const Eigen::Index off = 4 * d + 2 * m;
          const double phi = t(d, m) * (pk(m) - pq(m));
          g(2 * d + m) = (pk(m) - pq(m)) *
                         pairAngleDerivative(zq.segment<2>(off), zk.segment<2>(off), phi);
        }
      }
      if (scheme == Scheme::Uniform) return VectorXd::Constant(1, g.sum());
      return g;
    }
    case Scheme::Spherical:
    case Scheme::SphericalFast: {
      detail::checkPartition(zq, 3, t, 2, "gradFrequencies");
      detail::checkPosition(pq, 2, "gradFrequencies");
      detail::checkPosition(pk, 2, "gradFrequencies");
      Eigen::Matrix3d yawGen, rollGen;
      yawGen << 0, -1, 0, 1, 0, 0, 0, 0, 0;
      rollGen << 0, 0, 0, 0, 0, -1, 0, 1, 0;
      VectorXd g(2 * t.blocks());
      for (Eigen::Index d = 0; d < t.blocks(); ++d) {
        const Eigen::Vector3d q = zq.segment<3>(3 * d);
        const Eigen::Vector3d k = zk.segment<3>(3 * d);
        const Eigen::Matrix3d yq = yawMatrix(t(d, 0) * pq(0)), rq = rollMatrix(t(d, 1) * pq(1));
        const Eigen::Matrix3d yk = yawMatrix(t(d, 0) * pk(0)), rk = rollMatrix(t(d, 1) * pk(1));
        const Eigen::Vector3d eq = yq * rq * q;
        const Eigen::Vector3d ek = yk * rk * k;
        g(2 * d) = pq(0) * (yawGen * eq).dot(ek) + pk(0) * eq.dot(yawGen * ek);
        g(2 * d + 1) = pq(1) * (yq * rollGen * rq * q).dot(ek) + pk(1) * eq.dot(yk * rollGen * rk * k);
      }
      return g;
    }
    case Scheme::LieRE:
    case Scheme::SinusoidalAPE:
      break;
  }
  throw std::invalid_argument("gradFrequencies: scheme '" + std::string(toString(scheme)) +
                              "' has no frequency gradient");
}

}  // namespace rotary
