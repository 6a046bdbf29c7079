#pragma once

#include <string>

#include "eclc/sim.hpp"

namespace eclc {

/// JSON document with fields in declaration order of ScenarioReport,
/// indented by two spaces, trailing newline.
std::string report_to_json(const ScenarioReport& report);

/// world,kappa,pi,access_fraction,entropy,mean_proof_depth
std::string per_world_csv(const ScenarioReport& report);

/// trial,direction,success,proof_depth,failure_reason
std::string trials_csv(const ScenarioReport& report);

}  // namespace eclc
