#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasescat/farfield.hpp"
#include "phasescat/forward.hpp"
#include "phasescat/geometry.hpp"
#include "phasescat/indicators.hpp"
#include "phasescat/noise.hpp"

namespace phasescat {

enum class IndicatorKind { iz0, itheta, i2, i3 };

std::string_view to_string(IndicatorKind kind);
IndicatorKind parse_indicator_kind(std::string_view name);
std::string_view to_string(CombinedModel model);
CombinedModel parse_combined_model(std::string_view name);

/// Everything a reconstruction pipeline needs.
struct ScenarioConfig {
  double k = 8.0;
  int n = 128;
  int nodes_per_curve = kDefaultNodesPerCurve;
  Scene scene;
  Point z0 = Point(12.0, 12.0);
  /// Reference strengths; empty selects the scheme default.
  std::vector<Complex> tau;
  NoiseSpec noise;
  GridSpec grid;
  std::optional<IndicatorKind> indicator;
  std::vector<Eigen::Vector2d> theta;
  std::optional<Eigen::Vector2d> incidence;
  CombinedModel model = CombinedModel::coupled;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Parse errors carry the 1-based line number.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Flat `key = value` lines; `#` starts a comment. A line reading `scatterer` opens a block
/// whose `kind`, `center`, `radius` and `bc` keys describe one obstacle. See README for keys.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Whitespace-separated complex numbers, each `re` or `re,im`.
std::vector<Complex> parse_complex_list(std::string_view text);
/// Whitespace-separated `x,y` pairs.
std::vector<Eigen::Vector2d> parse_point_list(std::string_view text);
Eigen::Vector2d parse_point(std::string_view text);

}  // namespace phasescat
