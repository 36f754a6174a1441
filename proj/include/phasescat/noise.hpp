#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "phasescat/farfield.hpp"

namespace phasescat {

enum class NoiseModel { none, relative, absolute };

std::string_view to_string(NoiseModel model);
NoiseModel parse_noise_model(std::string_view name);

struct NoiseSpec {
  NoiseModel model = NoiseModel::none;
  double level = 0.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for a negative or non-finite level.
  void validate() const;
};

/// Uniform draws on the open interval (-1, 1) from a seeded mt19937_64 stream.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
};

/// entry * (1 + delta e), one draw per entry in row-major order.
/// The stream is seeded with spec.seed + matrix_index.
PhaselessMatrix add_relative_noise(const PhaselessMatrix& m, const NoiseSpec& spec, std::uint64_t matrix_index = 0);
/// max(0, entry + delta e), same stream discipline.
PhaselessMatrix add_absolute_noise(const PhaselessMatrix& m, const NoiseSpec& spec, std::uint64_t matrix_index = 0);
/// Dispatches on spec.model; `none` and a zero level return the input unchanged.
PhaselessMatrix add_noise(const PhaselessMatrix& m, const NoiseSpec& spec, std::uint64_t matrix_index = 0);

}  // namespace phasescat
