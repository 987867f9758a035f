#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erasim/dynamics.hpp"
#include "erasim/model.hpp"

namespace erasim {

// Fully resolved run description. Fields with value 0 where 0 is not a legal
// physical value mean "auto": dt (0.4 * stability guard), tau0 (analytic
// quartic prefactor), tilt_peak (twice the barrier height).
struct RunConfig {
    std::string experiment;  // passive_ite | reset | capacitor_ite | mfpt | error_vs_dissipation
    Backend backend = Backend::langevin;
    BathParams bath;
    PotentialSpec potential;
    CapacitorSpec capacitor;
    TwoStateSpec two_state;

    std::size_t n_trajectories = 10000;
    std::uint64_t master_seed = 1;
    std::string out_path;

    double dt = 0.0;
    double wait_multiplier = 20.0;
    double tau0 = 0.0;
    double duration = 100.0;
    double lower_fraction = 0.9;
    double tilt_peak = 0.0;
    double settle_multiplier = 10.0;
    double initial_p1 = -1.0;  // -1 = auto: 1.0 for passive_ite, 0.5 for reset
    std::uint64_t budget_steps = 100000000;

    std::string sweep_axis;
    std::vector<double> sweep_values;

    double resolved_initial_p1() const;
};

// Parses the flat sectioned key-value format described in the README.
// Strict: unknown sections or keys, malformed values, and constraint
// violations all throw usage_error naming the offending key.
RunConfig parse_config(const std::string& text);

// Cross-field constraint checks shared by the parser and programmatic
// callers; fills in sweep-axis defaults, hence the mutable reference.
void validate_config(RunConfig& config);

RunConfig load_config_file(const std::string& path);

}  // namespace erasim
