#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "erasim/config.hpp"
#include "erasim/harness.hpp"
#include "erasim/results.hpp"

namespace erasim {

struct RunOutput {
    std::vector<nlohmann::ordered_json> records;
    std::optional<ExperimentResult> experiment;  // passive_ite, reset, capacitor_ite
    std::optional<SweepResult> sweep;            // error_vs_dissipation
    std::optional<MfptResult> mfpt;              // mfpt
};

// True for experiments that scan an axis and emit one record per grid point.
bool is_sweep_experiment(const std::string& experiment);

// Single entry point behind both the CLI and the self-check suite: resolves
// auto parameters, dispatches to the experiment, and builds the persisted
// records.
RunOutput run_experiment(const RunConfig& config, int workers = 0);

}  // namespace erasim
