#pragma once

#include "cellwave/config.hpp"
#include "cellwave/report.hpp"

namespace cellwave::harness {

/// Runs a validated scenario to completion: integrates / evaluates, fills the
/// sampled rows and summary, and evaluates every built-in oracle the scenario
/// kind defines. Throws cellwave::NumericFailure if a tracked observable goes
/// non-finite mid-run; other std::exception subclasses indicate misuse that
/// config validation should have caught.
RunReport run_scenario(const ScenarioConfig& cfg);

}  // namespace cellwave::harness
