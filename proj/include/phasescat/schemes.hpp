#pragma once

#include <vector>

#include "phasescat/config.hpp"
#include "phasescat/farfield.hpp"
#include "phasescat/indicators.hpp"
#include "phasescat/phase_retrieval.hpp"

namespace phasescat {

/// Moduli of the combined far field for each strength; the m-th matrix gets noise
/// stream index m.
std::vector<PhaselessMatrix> synthesize_phaseless(const ScenarioConfig& config, const std::vector<Complex>& strengths);

/// {0, tau_1}; `tau` may hold {tau_1} or {0, tau_1}, and defaults to {1}.
std::vector<Complex> scheme_one_strengths(const ScenarioConfig& config);
/// Three strengths from `tau`, defaulting to -1, 1, i.
RetrievalTriple scheme_two_triple(const ScenarioConfig& config);

/// Incidence index of config.incidence (default (1,0)) on the N-point grid.
int incidence_index(const ScenarioConfig& config);

/// I_z0, or I^Theta_z0 when selected or when theta is given.
GridField phaseless_indicator(const FMatrix& f, const ScenarioConfig& config);
/// I_2, or I_3 when selected or when an incidence is given.
GridField phased_indicator(const FarFieldMatrix& u, const ScenarioConfig& config);

/// Synthesize {0, tau_1} data, add noise, form F and evaluate the phaseless indicator.
GridField run_scheme_one(const ScenarioConfig& config);
/// Synthesize three phaseless data sets, add noise, retrieve the phase and evaluate the
/// phased indicator.
GridField run_scheme_two(const ScenarioConfig& config);

}  // namespace phasescat
