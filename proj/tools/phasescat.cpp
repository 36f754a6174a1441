#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "phasescat/config.hpp"
#include "phasescat/forward.hpp"
#include "phasescat/indicators.hpp"
#include "phasescat/io.hpp"
#include "phasescat/noise.hpp"
#include "phasescat/phase_retrieval.hpp"
#include "phasescat/schemes.hpp"

namespace ps = phasescat;

namespace {

// Scenario flags; each one overrides the matching config key when given.
struct ScenarioFlags {
  std::string config;
  std::optional<double> k;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<std::string> z0;
  std::optional<std::string> tau;
  std::vector<std::string> scatterers;
  std::optional<std::string> noise;
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> grid_x;
  std::optional<std::string> grid_y;
  std::optional<double> spacing;
  std::optional<std::string> indicator;
  std::optional<std::string> theta;
  std::optional<std::string> incidence;
  std::optional<std::string> model;
};

void add_scene_flags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--config", f.config, "Scenario config file")->check(CLI::ExistingFile);
  app->add_option("--k", f.k, "Wavenumber");
  app->add_option("--N", f.n, "Number of directions");
  app->add_option("--M", f.m, "Quadrature nodes per curve");
  app->add_option("--z0", f.z0, "Reference point 'x,y'");
  app->add_option("--tau", f.tau, "Strengths, e.g. '-1 1 0,1'");
  app->add_option("--scatterer", f.scatterers, "Obstacle 'kind:x,y[:radius[:bc]]'; replaces the config scene");
  app->add_option("--model", f.model, "additive | coupled");
  app->add_option("--noise", f.noise, "none | relative | absolute");
  app->add_option("--delta", f.delta, "Noise level");
  app->add_option("--seed", f.seed, "Noise seed");
}

void add_grid_flags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--grid-x", f.grid_x, "x range 'lo,hi'");
  app->add_option("--grid-y", f.grid_y, "y range 'lo,hi'");
  app->add_option("--spacing", f.spacing, "Grid spacing");
  app->add_option("--indicator", f.indicator, "iz0 | itheta | i2 | i3");
  app->add_option("--theta", f.theta, "Incident directions for itheta, e.g. '1,0 0,1'");
  app->add_option("--incidence", f.incidence, "Incident direction for i3 'x,y'");
}

ps::Scatterer parse_scatterer(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = spec.find(':', start);
    parts.push_back(spec.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  if (parts.size() < 2 || parts.size() > 4) throw std::invalid_argument("scatterer must be 'kind:x,y[:radius[:bc]]'");
  const double radius = parts.size() > 2 ? std::stod(parts[2]) : 1.0;
  const auto bc = parts.size() > 3 ? ps::parse_boundary_condition(parts[3]) : ps::BoundaryCondition::dirichlet;
  return {ps::BoundaryCurve(ps::parse_curve_kind(parts[0]), ps::parse_point(parts[1]), radius), bc};
}

std::pair<double, double> parse_range(const std::string& text) {
  const Eigen::Vector2d v = ps::parse_point(text);
  return {v.x(), v.y()};
}

ps::ScenarioConfig build_config(const ScenarioFlags& f) {
  ps::ScenarioConfig c = f.config.empty() ? ps::ScenarioConfig{} : ps::load_config(f.config);
  if (f.k) c.k = *f.k;
  if (f.n) c.n = *f.n;
  if (f.m) c.nodes_per_curve = *f.m;
  if (f.z0) c.z0 = ps::parse_point(*f.z0);
  if (f.tau) c.tau = ps::parse_complex_list(*f.tau);
  if (!f.scatterers.empty()) {
    c.scene.scatterers.clear();
    for (const auto& s : f.scatterers) c.scene.scatterers.push_back(parse_scatterer(s));
  }
  if (f.model) c.model = ps::parse_combined_model(*f.model);
  if (f.noise) c.noise.model = ps::parse_noise_model(*f.noise);
  if (f.delta) c.noise.level = *f.delta;
  if (f.seed) c.noise.seed = *f.seed;
  if (f.grid_x) std::tie(c.grid.x_min, c.grid.x_max) = parse_range(*f.grid_x);
  if (f.grid_y) std::tie(c.grid.y_min, c.grid.y_max) = parse_range(*f.grid_y);
  if (f.spacing) c.grid.spacing = *f.spacing;
  if (f.indicator) c.indicator = ps::parse_indicator_kind(*f.indicator);
  if (f.theta) c.theta = ps::parse_point_list(*f.theta);
  if (f.incidence) c.incidence = ps::parse_point(*f.incidence);
  c.validate();
  return c;
}

ps::GridFormat format_for(const std::string& path, const std::string& format) {
  if (!format.empty()) return ps::parse_grid_format(format);
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0 ? ps::GridFormat::pgm
                                                                            : ps::GridFormat::csv;
}

void report_grid(const ps::GridField& g, const std::string& path) {
  Eigen::Index iy = 0;
  Eigen::Index ix = 0;
  const double peak = g.values.maxCoeff(&iy, &ix);
  const ps::Point z = g.node(static_cast<int>(ix), static_cast<int>(iy));
  std::printf("%s: %dx%d grid, max %.6g at (%.4f, %.4f)\n", path.c_str(), g.nx(), g.ny(), peak, z.x(), z.y());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phaseless inverse scattering toolkit"};
  app.require_subcommand(1);

  // synth
  ScenarioFlags synth_flags;
  std::vector<std::string> synth_out;
  std::string synth_kind = "modulus";
  auto* synth = app.add_subcommand("synth", "Synthesize far-field data, one file per strength");
  add_scene_flags(synth, synth_flags);
  synth->add_option("--out,-o", synth_out, "Output files, one per strength (one file when no tau is given)")
      ->required();
  synth->add_option("--kind", synth_kind, "complex | modulus")->check(CLI::IsMember({"complex", "modulus"}));

  // noise
  std::string noise_in;
  std::string noise_out;
  std::string noise_model = "relative";
  double noise_delta = 0.0;
  std::uint64_t noise_seed = 0;
  std::uint64_t noise_index = 0;
  auto* noise = app.add_subcommand("noise", "Perturb a modulus file");
  noise->add_option("--in,-i", noise_in, "Input modulus file")->required()->check(CLI::ExistingFile);
  noise->add_option("--out,-o", noise_out, "Output modulus file")->required();
  noise->add_option("--noise", noise_model, "relative | absolute");
  noise->add_option("--delta", noise_delta, "Noise level")->required();
  noise->add_option("--seed", noise_seed, "Seed");
  noise->add_option("--index", noise_index, "Stream index added to the seed");

  // retrieve
  std::vector<std::string> retrieve_in;
  std::string retrieve_out;
  std::optional<std::string> retrieve_tau;
  std::optional<std::string> retrieve_z0;
  auto* retrieve = app.add_subcommand("retrieve", "Recover the phased obstacle far field from three modulus files");
  retrieve->add_option("--in,-i", retrieve_in, "Three modulus files")->required()->expected(3)->check(CLI::ExistingFile);
  retrieve->add_option("--out,-o", retrieve_out, "Output complex file")->required();
  retrieve->add_option("--tau", retrieve_tau, "Three strengths (default: from file headers)");
  retrieve->add_option("--z0", retrieve_z0, "Reference point (default: from file headers)");

  // indicate
  ScenarioFlags indicate_flags;
  std::string indicate_phased;
  std::string indicate_combined;
  std::string indicate_bare;
  std::string indicate_out;
  std::string indicate_format;
  auto* indicate = app.add_subcommand("indicate", "Evaluate an indicator from data files");
  add_grid_flags(indicate, indicate_flags);
  indicate->add_option("--phased", indicate_phased, "Complex far-field file (i2, i3)")->check(CLI::ExistingFile);
  indicate->add_option("--combined", indicate_combined, "Modulus file with the point scatterer (iz0, itheta)")
      ->check(CLI::ExistingFile);
  indicate->add_option("--bare", indicate_bare, "Modulus file without it (iz0, itheta)")->check(CLI::ExistingFile);
  indicate->add_option("--tau", indicate_flags.tau, "Strength of the combined data (default: from header)");
  indicate->add_option("--out,-o", indicate_out, "Output grid file")->required();
  indicate->add_option("--format", indicate_format, "csv | pgm (default: by extension)");

  // scheme-one / scheme-two
  ScenarioFlags scheme_flags;
  std::string scheme_out;
  std::string scheme_format;
  auto* scheme_one = app.add_subcommand("scheme-one", "Phaseless data -> I_z0 or I^Theta_z0");
  auto* scheme_two = app.add_subcommand("scheme-two", "Phase retrieval -> I_2 or I_3");
  for (auto* sub : {scheme_one, scheme_two}) {
    add_scene_flags(sub, scheme_flags);
    add_grid_flags(sub, scheme_flags);
    sub->add_option("--out,-o", scheme_out, "Output grid file")->required();
    sub->add_option("--format", scheme_format, "csv | pgm (default: by extension)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      const ps::ScenarioConfig c = build_config(synth_flags);
      const ps::DirectionGrid grid(c.n);
      std::vector<ps::FarFieldMatrix> fields;
      if (c.tau.empty()) {
        fields.push_back(ps::far_field_obstacle(c.scene, c.k, grid, c.nodes_per_curve));
        fields.back().meta.z0.reset();
      } else {
        fields = ps::far_field_combined(c.scene, c.z0, c.tau, c.k, grid, c.model, c.nodes_per_curve);
      }
      if (synth_out.size() != fields.size()) {
        throw std::invalid_argument("synth: " + std::to_string(fields.size()) + " output files required");
      }
      for (std::size_t m = 0; m < fields.size(); ++m) {
        if (synth_kind == "complex") {
          ps::write_far_field(fields[m], synth_out[m]);
        } else {
          ps::write_far_field(ps::add_noise(ps::PhaselessMatrix::from(fields[m]), c.noise, m), synth_out[m]);
        }
        std::printf("%s\n", synth_out[m].c_str());
      }
    } else if (noise->parsed()) {
      const ps::NoiseSpec spec{ps::parse_noise_model(noise_model), noise_delta, noise_seed};
      ps::write_far_field(ps::add_noise(ps::read_phaseless_far_field(noise_in), spec, noise_index), noise_out);
      std::printf("%s\n", noise_out.c_str());
    } else if (retrieve->parsed()) {
      std::vector<ps::PhaselessMatrix> data;
      for (const auto& path : retrieve_in) data.push_back(ps::read_phaseless_far_field(path));
      ps::RetrievalTriple triple;
      triple.k = data[0].meta.k;
      if (retrieve_tau) {
        const auto tau = ps::parse_complex_list(*retrieve_tau);
        if (tau.size() != 3) throw std::invalid_argument("retrieve: --tau needs three strengths");
        triple.tau = {tau[0], tau[1], tau[2]};
      } else {
        for (int m = 0; m < 3; ++m) {
          if (!data[m].meta.tau) throw std::invalid_argument("retrieve: " + retrieve_in[m] + " has no #tau header");
          triple.tau[m] = *data[m].meta.tau;
        }
      }
      if (retrieve_z0) {
        triple.z0 = ps::parse_point(*retrieve_z0);
      } else if (data[0].meta.z0) {
        triple.z0 = *data[0].meta.z0;
      } else {
        throw std::invalid_argument("retrieve: no z0 given and none in the headers");
      }
      ps::write_far_field(ps::retrieve_far_field(data[0], data[1], data[2], triple), retrieve_out);
      std::printf("%s\n", retrieve_out.c_str());
    } else if (indicate->parsed()) {
      ps::ScenarioConfig c = build_config(indicate_flags);
      ps::GridField g;
      if (!indicate_phased.empty()) {
        const ps::FarFieldMatrix u = ps::read_complex_far_field(indicate_phased);
        c.n = u.size();
        g = ps::phased_indicator(u, c);
      } else {
        if (indicate_combined.empty() || indicate_bare.empty()) {
          throw std::invalid_argument("indicate: give --phased, or both --combined and --bare");
        }
        const ps::PhaselessMatrix combined = ps::read_phaseless_far_field(indicate_combined);
        const ps::PhaselessMatrix bare = ps::read_phaseless_far_field(indicate_bare);
        ps::Complex tau;
        if (!c.tau.empty()) {
          tau = c.tau.back();
        } else if (combined.meta.tau) {
          tau = *combined.meta.tau;
        } else {
          throw std::invalid_argument("indicate: no tau given and none in the header");
        }
        c.n = combined.size();
        g = ps::phaseless_indicator(ps::f_matrix(combined, bare, tau), c);
      }
      ps::write_grid(g, indicate_out, format_for(indicate_out, indicate_format));
      report_grid(g, indicate_out);
    } else {
      const ps::ScenarioConfig c = build_config(scheme_flags);
      const ps::GridField g = scheme_one->parsed() ? ps::run_scheme_one(c) : ps::run_scheme_two(c);
      ps::write_grid(g, scheme_out, format_for(scheme_out, scheme_format));
      report_grid(g, scheme_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
