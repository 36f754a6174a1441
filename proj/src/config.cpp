#include "phasescat/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

namespace phasescat {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  }
  return v;
}

int integer(std::string_view s) {
  const double v = number(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  return static_cast<int>(v);
}

std::uint64_t unsigned_integer(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed seed '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::pair<double, double> interval(std::string_view s) {
  const Eigen::Vector2d v = parse_point(s);
  if (!(v.y() >= v.x())) throw std::invalid_argument("interval must satisfy lo <= hi");
  return {v.x(), v.y()};
}

struct PendingScatterer {
  int line = 0;
  bool has_kind = false;
  CurveKind kind = CurveKind::circle;
  Point center = Point::Zero();
  double radius = 1.0;
  BoundaryCondition bc = BoundaryCondition::dirichlet;
};

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : std::invalid_argument("config line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view to_string(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::iz0: return "iz0";
    case IndicatorKind::itheta: return "itheta";
    case IndicatorKind::i2: return "i2";
    case IndicatorKind::i3: return "i3";
  }
  return "iz0";
}

IndicatorKind parse_indicator_kind(std::string_view name) {
  if (name == "iz0") return IndicatorKind::iz0;
  if (name == "itheta") return IndicatorKind::itheta;
  if (name == "i2") return IndicatorKind::i2;
  if (name == "i3") return IndicatorKind::i3;
  throw std::invalid_argument("unknown indicator '" + std::string(name) + "'");
}

std::string_view to_string(CombinedModel model) {
  return model == CombinedModel::additive ? "additive" : "coupled";
}

CombinedModel parse_combined_model(std::string_view name) {
  if (name == "additive") return CombinedModel::additive;
  if (name == "coupled") return CombinedModel::coupled;
  throw std::invalid_argument("unknown forward model '" + std::string(name) + "'");
}

Eigen::Vector2d parse_point(std::string_view text) {
  text = trim(text);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw std::invalid_argument("expected 'x,y', got '" + std::string(text) + "'");
  }
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (std::string_view w : words(text)) {
    if (w.find(',') == std::string_view::npos) {
      out.emplace_back(number(w), 0.0);
    } else {
      const Eigen::Vector2d v = parse_point(w);
      out.emplace_back(v.x(), v.y());
    }
  }
  return out;
}

std::vector<Eigen::Vector2d> parse_point_list(std::string_view text) {
  std::vector<Eigen::Vector2d> out;
  for (std::string_view w : words(text)) out.push_back(parse_point(w));
  return out;
}

void ScenarioConfig::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("N must be an even integer >= 4");
  if (nodes_per_curve < 16 || nodes_per_curve % 2 != 0) {
    throw std::invalid_argument("M must be an even integer >= 16");
  }
  scene.validate();
  if (scene.contains(z0) || (!scene.empty() && scene.distance_to_boundary(z0) == 0.0)) {
    throw std::invalid_argument("z0 must lie outside every scatterer");
  }
  noise.validate();
  grid.validate();
  for (const auto& d : theta) {
    if (!(d.norm() > 0.0)) throw std::invalid_argument("theta directions must be nonzero");
  }
  if (incidence && !(incidence->norm() > 0.0)) throw std::invalid_argument("incidence must be nonzero");
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  bool in_block = false;
  PendingScatterer block;
  auto close_block = [&]() {
    if (!in_block) return;
    in_block = false;
    if (!block.has_kind) throw ConfigError(block.line, "scatterer block without 'kind'");
    try {
      cfg.scene.scatterers.push_back({BoundaryCurve(block.kind, block.center, block.radius), block.bc});
    } catch (const std::exception& e) {
      throw ConfigError(block.line, e.what());
    }
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "scatterer") {
      close_block();
      block = PendingScatterer{};
      block.line = line_no;
      in_block = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "kind" || key == "center" || key == "radius" || key == "bc") {
        if (!in_block) throw std::invalid_argument("'" + key + "' outside a scatterer block");
        if (key == "kind") {
          block.kind = parse_curve_kind(value);
          block.has_kind = true;
        }
        if (key == "center") block.center = parse_point(value);
        if (key == "radius") block.radius = number(value);
        if (key == "bc") block.bc = parse_boundary_condition(value);
        continue;
      }
      close_block();
      if (key == "k") {
        cfg.k = number(value);
      } else if (key == "N") {
        cfg.n = integer(value);
      } else if (key == "M") {
        cfg.nodes_per_curve = integer(value);
      } else if (key == "z0") {
        cfg.z0 = parse_point(value);
      } else if (key == "tau") {
        cfg.tau = parse_complex_list(value);
      } else if (key == "noise") {
        cfg.noise.model = parse_noise_model(value);
      } else if (key == "delta") {
        cfg.noise.level = number(value);
      } else if (key == "seed") {
        cfg.noise.seed = unsigned_integer(value);
      } else if (key == "grid_x") {
        std::tie(cfg.grid.x_min, cfg.grid.x_max) = interval(value);
      } else if (key == "grid_y") {
        std::tie(cfg.grid.y_min, cfg.grid.y_max) = interval(value);
      } else if (key == "spacing") {
        cfg.grid.spacing = number(value);
      } else if (key == "indicator") {
        cfg.indicator = parse_indicator_kind(value);
      } else if (key == "theta") {
        cfg.theta = parse_point_list(value);
      } else if (key == "incidence") {
        cfg.incidence = parse_point(value);
      } else if (key == "model") {
        cfg.model = parse_combined_model(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(line_no, e.what());
    }
  }
  close_block();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace phasescat
