#pragma once

#include <cstddef>
#include <optional>

namespace erasim {

// Aggregate statistics over one trajectory ensemble. All stderr fields are
// sample standard deviation / sqrt(n). final_p1 and error_probability are
// absent for backends without a bit readout (the capacitor reports energy
// only). wall_time_seconds is diagnostic and never persisted, so repeated
// runs stay byte-identical.
struct EnsembleStats {
    std::size_t n_trajectories = 0;
    double mean_work = 0.0;
    double stderr_work = 0.0;
    double mean_heat_to_bath = 0.0;
    double stderr_heat_to_bath = 0.0;
    std::optional<double> final_p1;
    std::optional<double> stderr_final_p1;
    std::optional<double> error_probability;
    std::optional<double> stderr_error_probability;
    double wall_time_seconds = 0.0;
};

}  // namespace erasim
