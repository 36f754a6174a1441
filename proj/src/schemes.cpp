#include "phasescat/schemes.hpp"

#include <stdexcept>

#include "phasescat/forward.hpp"
#include "phasescat/noise.hpp"

namespace phasescat {

std::vector<PhaselessMatrix> synthesize_phaseless(const ScenarioConfig& config, const std::vector<Complex>& strengths) {
  config.validate();
  const DirectionGrid grid(config.n);
  const std::vector<FarFieldMatrix> fields =
      far_field_combined(config.scene, config.z0, strengths, config.k, grid, config.model, config.nodes_per_curve);
  std::vector<PhaselessMatrix> out;
  out.reserve(fields.size());
  for (std::size_t m = 0; m < fields.size(); ++m) out.push_back(add_noise(PhaselessMatrix::from(fields[m]), config.noise, m));
  return out;
}

std::vector<Complex> scheme_one_strengths(const ScenarioConfig& config) {
  Complex tau1 = 1.0;
  if (config.tau.size() == 1) {
    tau1 = config.tau[0];
  } else if (config.tau.size() == 2 && config.tau[0] == 0.0) {
    tau1 = config.tau[1];
  } else if (!config.tau.empty()) {
    throw std::invalid_argument("scheme one takes tau = tau_1 or tau = 0 tau_1");
  }
  if (tau1 == 0.0) throw std::invalid_argument("scheme one needs a nonzero tau_1");
  return {0.0, tau1};
}

RetrievalTriple scheme_two_triple(const ScenarioConfig& config) {
  RetrievalTriple triple;
  if (!config.tau.empty()) {
    if (config.tau.size() != 3) throw std::invalid_argument("scheme two takes exactly three strengths");
    triple.tau = {config.tau[0], config.tau[1], config.tau[2]};
  }
  triple.z0 = config.z0;
  triple.k = config.k;
  triple.validate();
  return triple;
}

int incidence_index(const ScenarioConfig& config) {
  const Eigen::Vector2d d = config.incidence.value_or(Eigen::Vector2d(1.0, 0.0));
  const auto index = DirectionGrid(config.n).index_of(d.normalized());
  if (!index) throw std::invalid_argument("incidence direction is not on the direction grid");
  return *index;
}

GridField phaseless_indicator(const FMatrix& f, const ScenarioConfig& config) {
  IndicatorKind kind = config.indicator.value_or(config.theta.empty() ? IndicatorKind::iz0 : IndicatorKind::itheta);
  if (kind == IndicatorKind::iz0) return indicator_iz0(f, config.grid);
  if (kind == IndicatorKind::itheta) {
    if (config.theta.empty()) throw std::invalid_argument("indicator itheta needs a theta list");
    return indicator_itheta(f, ThetaSet::from_directions(config.theta, DirectionGrid(config.n)), config.grid);
  }
  throw std::invalid_argument("phaseless data supports the iz0 and itheta indicators only");
}

GridField phased_indicator(const FarFieldMatrix& u, const ScenarioConfig& config) {
  IndicatorKind kind = config.indicator.value_or(config.incidence ? IndicatorKind::i3 : IndicatorKind::i2);
  if (kind == IndicatorKind::i2) return indicator_i2(u, config.grid);
  if (kind == IndicatorKind::i3) return indicator_i3(u, incidence_index(config), config.grid);
  throw std::invalid_argument("phased data supports the i2 and i3 indicators only");
}

GridField run_scheme_one(const ScenarioConfig& config) {
  const std::vector<Complex> strengths = scheme_one_strengths(config);
  const std::vector<PhaselessMatrix> data = synthesize_phaseless(config, strengths);
  return phaseless_indicator(f_matrix(data[1], data[0], strengths[1]), config);
}

GridField run_scheme_two(const ScenarioConfig& config) {
  const RetrievalTriple triple = scheme_two_triple(config);
  const std::vector<PhaselessMatrix> data =
      synthesize_phaseless(config, std::vector<Complex>(triple.tau.begin(), triple.tau.end()));
  return phased_indicator(retrieve_far_field(data[0], data[1], data[2], triple), config);
}

}  // namespace phasescat
