#pragma once

#include <string>
#include <vector>

#include "sdsc/harness/report.hpp"
#include "sdsc/harness/run_config.hpp"
#include "sdsc/sensitivity.hpp"
#include "sdsc/signal.hpp"

namespace sdsc::harness {

/// A named reference/candidate construction: r = perturb(generate(base), spec).
struct Fixture {
  std::string label;
  BaseSignalSpec base;
  PerturbationSpec spec;
};

/// The seven metric-panel rows: Inverted (at inverted_amplitude), 0.5x and
/// 2x Scaled, Zero, Noise Sample, Positive and Negative Shifted.
std::vector<Fixture> panel_fixtures(const RunConfig &cfg);

/// The seven gradient rows: Inverted, 0.5x and 2x Scaled, Zero, Noise
/// Sample, Shifted, Jittered; all on the amplitude-`amplitude` base signal.
std::vector<PerturbationCase> gradient_cases(const RunConfig &cfg);

BaseSignalSpec base_spec(const RunConfig &cfg);

/// True when the fixtures match the reconstruction that the embedded
/// expected values were derived for; checks are only armed then.
bool reconstruction_defaults(const RunConfig &cfg);

Report run_table1(const RunConfig &cfg);
Report run_sensitivity(const RunConfig &cfg);
Report run_alpha_sweep(const RunConfig &cfg);
Report run_stats(const RunConfig &cfg);
Report run_compare(const RunConfig &cfg);

/// Dispatches on cfg.command.
Report run(const RunConfig &cfg);

} // namespace sdsc::harness
