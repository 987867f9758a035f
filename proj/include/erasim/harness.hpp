#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erasim/dynamics.hpp"
#include "erasim/ensemble.hpp"
#include "erasim/entropy.hpp"
#include "erasim/model.hpp"
#include "erasim/protocols.hpp"
#include "erasim/rng.hpp"
#include "erasim/schedule.hpp"
#include "erasim/stats.hpp"

namespace erasim {

enum class InitialKind {
    fixed_value,     // start every trajectory at `value` (position/voltage/bit)
    gibbs_in_well,   // draw a bit with P(1) = p1, then sample the matching
                     // well's restricted Boltzmann distribution exactly
};

struct InitialCondition {
    InitialKind kind = InitialKind::fixed_value;
    double value = 0.0;
    double p1 = 0.5;
};

// Exact sampler for the Boltzmann distribution restricted to one branch
// (sign of x) of the double well at a fixed control: uniform proposals over
// the region within 40 kbt of the branch minimum, accepted with
// exp(-(U - U_min)/kbt). No dynamics, so nothing leaks over the barrier.
class RestrictedGibbsSampler {
  public:
    RestrictedGibbsSampler(const PotentialSpec& spec, const ControlState& control,
                           const BathParams& bath, int bit);

    double sample(RngStream& rng) const;

    double window_lo() const { return lo_; }
    double window_hi() const { return hi_; }
    double u_min() const { return u_min_; }

  private:
    double energy_at(double x) const;

    PotentialSpec spec_;
    ControlState control_;
    BathParams bath_;
    double lo_ = 0.0;
    double hi_ = 0.0;
    double u_min_ = 0.0;
};

struct EnsembleSpec {
    PhysicsSpec physics;
    BathParams bath;
    ProtocolSchedule schedule = ProtocolSchedule::constant({1.0, 0.0});
    StepParams step;
    InitialCondition initial;
    std::size_t n_trajectories = 2;
    std::optional<int> target_bit;  // enables error_probability against this bit
    // Added to each trajectory index before deriving its stream: grid
    // experiments give every grid point a disjoint block of streams.
    std::uint64_t trajectory_index_offset = 0;

    void validate() const;
};

struct EnsembleDetail {
    EnsembleStats stats;
    std::vector<std::int8_t> initial_bits;  // -1 when the backend has no bit readout
    std::vector<std::int8_t> final_bits;
    std::vector<double> final_states;
};

// Runs n independent trajectories with per-trajectory streams derived from
// (master_seed, trajectory_index) and aggregates with a canonical pairwise
// reduction, so results are bit-identical for any worker count. workers = 0
// uses the OpenMP default.
EnsembleStats run_ensemble(const EnsembleSpec& spec, std::uint64_t master_seed, int workers = 0);
EnsembleDetail run_ensemble_detailed(const EnsembleSpec& spec, std::uint64_t master_seed,
                                     int workers = 0);

// Single-threaded reference implementation; must match run_ensemble bitwise.
EnsembleStats run_ensemble_serial(const EnsembleSpec& spec, std::uint64_t master_seed);

struct SweepRow {
    double axis_value = 0.0;
    EnsembleStats stats;
};

struct SweepResult {
    std::string axis;
    std::vector<SweepRow> rows;
};

struct MfptRow {
    double barrier = 0.0;
    double mean_fpt = 0.0;
    double stderr_fpt = 0.0;
    double tau0 = 0.0;  // analytic quartic prefactor used to normalize the fit
    std::size_t n_crossed = 0;
    std::size_t n_total = 0;
    bool inconclusive = false;
};

struct MfptResult {
    std::vector<MfptRow> rows;
    // Least-squares fit of ln(mean_fpt / tau0) against barrier/kbt; Arrhenius
    // scaling gives slope 1.
    LinearFit fit;
    bool inconclusive = false;
};

struct MfptParams {
    std::vector<double> barriers;      // in kbt units, grid within [2, 10]
    PotentialSpec potential;           // barrier_height overridden per grid point
    BathParams bath;
    std::size_t n_per_point = 500;
    std::uint64_t budget_steps = 100000000;
    double dt_guard_fraction = 0.4;    // dt = fraction * 0.01 * gamma * x0^2 / E
};

// Mean first-passage time from +x0 to -x0 under the static full barrier,
// per barrier height.
MfptResult mfpt_experiment(const MfptParams& params, std::uint64_t master_seed, int workers = 0);

struct ResetParams {
    PotentialSpec potential;
    BathParams bath;
    double duration = 100.0;
    double lower_fraction = 0.9;
    double tilt_peak = 0.0;  // 0 = auto: twice the barrier height
    double initial_p1 = 0.5;
    double dt = 0.0;         // 0 = auto: 0.4 * stability guard
    std::size_t n_trajectories = 10000;
};

struct ErrorVsDissipationParams {
    std::vector<double> durations;  // strictly increasing protocol times
    ResetParams reset;              // duration field overridden per grid point
};

// Reset heat and residual error probability across protocol durations.
SweepResult error_vs_dissipation_experiment(const ErrorVsDissipationParams& params,
                                            std::uint64_t master_seed, int workers = 0);

struct PassiveIteParams {
    PotentialSpec potential;
    BathParams bath;
    AttemptTime tau0;         // tau0.tau0 = 0 selects the analytic quartic prefactor
    double wait_multiplier = 20.0;
    double initial_p1 = 1.0;
    double dt = 0.0;          // 0 = auto: 0.4 * stability guard
    std::size_t n_trajectories = 10000;
    Backend backend = Backend::langevin;
    TwoStateSpec two_state;   // used when backend = two_state (rate only)
};

struct ExperimentResult {
    EnsembleStats stats;
    ErasureReport report;
};

// The three headline scenarios: erasure by passive thermalization, driven
// reset to bit 0, and capacitor discharge into the thermal resistor.
ExperimentResult passive_ite_experiment(const PassiveIteParams& params, std::uint64_t master_seed,
                                        int workers = 0);
ExperimentResult reset_experiment(const ResetParams& params, std::uint64_t master_seed,
                                  int workers = 0);
ExperimentResult capacitor_experiment(const CapacitorSpec& spec, const BathParams& bath,
                                      double settle_multiplier, std::size_t n_trajectories,
                                      std::uint64_t master_seed, int workers = 0);

}  // namespace erasim
