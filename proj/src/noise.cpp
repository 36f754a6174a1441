#include "phasescat/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phasescat {

namespace {

template <class Perturb>
PhaselessMatrix perturb(const PhaselessMatrix& m, const NoiseSpec& spec, std::uint64_t matrix_index, Perturb f) {
  spec.validate();
  PhaselessMatrix out = m;
  if (spec.level == 0.0) return out;
  UniformStream stream(spec.seed + matrix_index);
  for (Eigen::Index j = 0; j < out.values.rows(); ++j) {
    for (Eigen::Index l = 0; l < out.values.cols(); ++l) out.values(j, l) = f(out.values(j, l), stream.next());
  }
  return out;
}

}  // namespace

std::string_view to_string(NoiseModel model) {
  switch (model) {
    case NoiseModel::none: return "none";
    case NoiseModel::relative: return "relative";
    case NoiseModel::absolute: return "absolute";
  }
  return "none";
}

NoiseModel parse_noise_model(std::string_view name) {
  if (name == "none") return NoiseModel::none;
  if (name == "relative") return NoiseModel::relative;
  if (name == "absolute") return NoiseModel::absolute;
  throw std::invalid_argument("unknown noise model '" + std::string(name) + "'");
}

void NoiseSpec::validate() const {
  if (!std::isfinite(level) || level < 0.0) throw std::invalid_argument("noise level must be a nonnegative number");
}

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

double UniformStream::next() {
  // Top 53 bits, centred in their cell, so both endpoints are excluded.
  const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

PhaselessMatrix add_relative_noise(const PhaselessMatrix& m, const NoiseSpec& spec, std::uint64_t matrix_index) {
  if (spec.level > 1.0) throw std::invalid_argument("relative noise level must not exceed 1");
  const double delta = spec.level;
  return perturb(m, spec, matrix_index, [delta](double v, double e) { return v * (1.0 + delta * e); });
}

PhaselessMatrix add_absolute_noise(const PhaselessMatrix& m, const NoiseSpec& spec, std::uint64_t matrix_index) {
  const double delta = spec.level;
  return perturb(m, spec, matrix_index, [delta](double v, double e) { return std::max(0.0, v + delta * e); });
}

PhaselessMatrix add_noise(const PhaselessMatrix& m, const NoiseSpec& spec, std::uint64_t matrix_index) {
  switch (spec.model) {
    case NoiseModel::none: return m;
    case NoiseModel::relative: return add_relative_noise(m, spec, matrix_index);
    case NoiseModel::absolute: return add_absolute_noise(m, spec, matrix_index);
  }
  return m;
}

}  // namespace phasescat
