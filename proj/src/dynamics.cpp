#include "erasim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "erasim/errors.hpp"
#include "erasim/stats.hpp"

namespace erasim {

void StepParams::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw usage_error("step: dt must be positive and finite, got " + std::to_string(dt));
    }
    if (record_stride < 1) {
        throw usage_error("step: record_stride must be >= 1");
    }
}

void check_langevin_stability(const StepParams& step, const PotentialSpec& spec,
                              const BathParams& bath) {
    step.validate();
    spec.validate();
    bath.validate();
    const double guard =
        0.01 * bath.gamma * spec.well_halfwidth * spec.well_halfwidth / spec.barrier_height;
    if (step.dt > guard) {
        throw usage_error("step: dt = " + std::to_string(step.dt) +
                          " exceeds stability guard 0.01*gamma*x0^2/E = " + std::to_string(guard));
    }
}

double default_step_dt(const PotentialSpec& spec, const BathParams& bath) {
    return 0.4 * 0.01 * bath.gamma * spec.well_halfwidth * spec.well_halfwidth /
           spec.barrier_height;
}

int jump_step(int state, double rate, double dt, double uniform) {
    const double p = rate * dt;
    if (p > 0.1) {
        throw precision_error("jump_step: rate*dt = " + std::to_string(p) +
                              " > 0.1, subdivide the step");
    }
    const double flip_prob = -std::expm1(-p);
    return uniform < flip_prob ? 1 - state : state;
}

namespace {

std::uint64_t step_count(double duration, double dt) {
    if (duration <= 0.0) {
        return 0;
    }
    return static_cast<std::uint64_t>(std::ceil(duration / dt - 1e-9));
}

[[noreturn]] void throw_blowup(const SeedPath& seed_path, std::uint64_t step) {
    throw integration_blowup("trajectory diverged (non-finite state)", seed_path.master_seed,
                             seed_path.trajectory_index, step);
}

}  // namespace

TrajectoryLedger evolve_trajectory(double initial, const ProtocolSchedule& schedule,
                                   const PhysicsSpec& physics, const StepParams& step,
                                   const BathParams& bath, const SeedPath& seed_path,
                                   RngStream& rng) {
    step.validate();
    bath.validate();
    switch (physics.backend) {
        case Backend::langevin:
            check_langevin_stability(step, physics.potential, bath);
            break;
        case Backend::capacitor:
            physics.capacitor.validate();
            break;
        case Backend::two_state:
            physics.two_state.validate();
            if (physics.two_state.rate * step.dt > 0.1) {
                throw precision_error("evolve_trajectory: rate*dt > 0.1 for two-state backend");
            }
            if (initial != 0.0 && initial != 1.0) {
                throw usage_error("evolve_trajectory: two-state initial must be 0 or 1");
            }
            break;
    }

    const double duration = schedule.duration();
    const std::uint64_t n_steps = step_count(duration, step.dt);

    // Energy at the current state under the given control. The capacitor and
    // two-state backends ignore the control entirely, which is what makes
    // their work identically zero below.
    const auto energy = [&](double state, const ControlState& control) {
        switch (physics.backend) {
            case Backend::langevin:
                return potential_energy_unchecked(physics.potential, control, state);
            case Backend::capacitor:
                return 0.5 * physics.capacitor.capacitance * state * state;
            case Backend::two_state:
                return 0.0;
        }
        return 0.0;
    };

    TrajectoryLedger ledger;
    ledger.seed_path = seed_path;
    ledger.n_steps = n_steps;
    ledger.times.reserve(n_steps / step.record_stride + 2);
    ledger.states.reserve(n_steps / step.record_stride + 2);

    double x = initial;
    ControlState control = schedule.at(0.0);
    double u_prev = energy(x, control);
    ledger.u_initial = u_prev;
    ledger.times.push_back(0.0);
    ledger.states.push_back(x);

    NeumaierSum work;
    NeumaierSum heat;
    if (physics.backend == Backend::capacitor) {
        // Closing the switch costs a fixed amount of control work that is
        // dissipated in the switch itself, so it enters both ledgers and
        // leaves the first law intact. Free (zero) by default.
        work.add(physics.capacitor.switch_cost);
        heat.add(physics.capacitor.switch_cost);
    }
    double t = 0.0;
    for (std::uint64_t i = 0; i < n_steps; ++i) {
        const double t_next = std::min(static_cast<double>(i + 1) * step.dt, duration);
        const double dt_i = t_next - t;

        // Substep 1: move the control at frozen state; the energy shift is work.
        const ControlState control_next = schedule.at(t_next);
        double u_mid = u_prev;
        if (physics.backend == Backend::langevin) {
            u_mid = energy(x, control_next);
            work.add(u_mid - u_prev);
        }

        // Substep 2: relax the state at frozen control; the energy drop is
        // heat delivered to the bath.
        double x_next = x;
        switch (physics.backend) {
            case Backend::langevin:
                x_next = em_step(x, physics.potential, control_next, bath, dt_i, rng.normal());
                break;
            case Backend::capacitor:
                x_next = ou_step(x, physics.capacitor, bath, dt_i, rng.normal());
                break;
            case Backend::two_state:
                x_next = static_cast<double>(jump_step(static_cast<int>(x),
                                                       physics.two_state.rate, dt_i,
                                                       rng.uniform()));
                break;
        }
        if (!std::isfinite(x_next)) {
            throw_blowup(seed_path, i);
        }
        const double u_next = energy(x_next, control_next);
        if (physics.backend != Backend::two_state) {
            heat.add(u_mid - u_next);
        }

        x = x_next;
        u_prev = u_next;
        t = t_next;
        control = control_next;
        if ((i + 1) % step.record_stride == 0) {
            ledger.times.push_back(t);
            ledger.states.push_back(x);
        }
    }
    if (ledger.times.back() != t) {
        ledger.times.push_back(t);
        ledger.states.push_back(x);
    }

    ledger.work = work.value();
    ledger.heat_to_bath = heat.value();
    ledger.u_final = u_prev;
    ledger.final_state = x;
    return ledger;
}

}  // namespace erasim
