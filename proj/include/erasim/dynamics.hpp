#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "erasim/model.hpp"
#include "erasim/rng.hpp"
#include "erasim/schedule.hpp"

namespace erasim {

enum class Backend { langevin, capacitor, two_state };

struct SeedPath {
    std::uint64_t master_seed = 0;
    std::uint64_t trajectory_index = 0;
};

struct StepParams {
    double dt = 1e-3;
    std::uint64_t record_stride = 1;  // store every k-th sample

    void validate() const;
};

// dt <= 0.01 * gamma * x0^2 / E keeps Euler-Maruyama stable in the stiffest
// part of the well (curvature 8E/x0^2 at the minima).
void check_langevin_stability(const StepParams& step, const PotentialSpec& spec,
                              const BathParams& bath);

// Default Langevin step when none is requested: 40% of the stability guard.
double default_step_dt(const PotentialSpec& spec, const BathParams& bath);

struct PhysicsSpec {
    Backend backend = Backend::langevin;
    PotentialSpec potential;
    CapacitorSpec capacitor;
    TwoStateSpec two_state;
};

// Per-trajectory energy ledger. Work accrues when the control moves, heat
// when the state relaxes at fixed control, so u_final - u_initial =
// work - heat_to_bath holds to machine precision by construction.
struct TrajectoryLedger {
    std::vector<double> times;
    std::vector<double> states;
    double work = 0.0;
    double heat_to_bath = 0.0;
    double u_initial = 0.0;
    double u_final = 0.0;
    double final_state = 0.0;
    std::uint64_t n_steps = 0;
    SeedPath seed_path;
};

// One Euler-Maruyama update of the overdamped Langevin equation,
// x' = x + F(x) dt / gamma + sqrt(2 kbt dt / gamma) * xi.
// Hot path: no validation, caller guarantees StepParams invariants.
inline double em_step(double x, const PotentialSpec& spec, const ControlState& control,
                      const BathParams& bath, double dt, double xi) {
    const double drift = potential_force_unchecked(spec, control, x) * dt / bath.gamma;
    return x + drift + std::sqrt(2.0 * bath.kbt * dt / bath.gamma) * xi;
}

// Exact Ornstein-Uhlenbeck transition for the RC circuit: no discretization
// bias for any dt >= 0.
inline double ou_step(double v, const CapacitorSpec& spec, const BathParams& bath, double dt,
                      double xi) {
    const double decay = std::exp(-dt / spec.rc());
    const double stationary_var = bath.kbt / spec.capacitance;
    return v * decay + std::sqrt(stationary_var * (1.0 - decay * decay)) * xi;
}

// Two-state hop: flips with probability 1 - exp(-rate*dt). Throws
// precision_error when rate*dt > 0.1 (caller must subdivide the interval).
int jump_step(int state, double rate, double dt, double uniform);

TrajectoryLedger evolve_trajectory(double initial, const ProtocolSchedule& schedule,
                                   const PhysicsSpec& physics, const StepParams& step,
                                   const BathParams& bath, const SeedPath& seed_path,
                                   RngStream& rng);

}  // namespace erasim
