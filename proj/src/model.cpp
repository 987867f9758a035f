#include "erasim/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "erasim/errors.hpp"

namespace erasim {

void BathParams::validate() const {
    if (!(kbt > 0.0) || !std::isfinite(kbt)) {
        throw usage_error("bath: kbt must be positive and finite, got " + std::to_string(kbt));
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw usage_error("bath: gamma must be positive and finite, got " + std::to_string(gamma));
    }
}

void PotentialSpec::validate() const {
    if (!(barrier_height > 0.0) || !std::isfinite(barrier_height)) {
        throw usage_error("potential: barrier_height must be positive and finite, got " +
                          std::to_string(barrier_height));
    }
    if (!(well_halfwidth > 0.0) || !std::isfinite(well_halfwidth)) {
        throw usage_error("potential: well_halfwidth must be positive and finite, got " +
                          std::to_string(well_halfwidth));
    }
}

void ControlState::validate() const {
    if (barrier_scale < 0.0 || barrier_scale > 1.0 || !std::isfinite(barrier_scale)) {
        throw usage_error("control: barrier_scale must lie in [0, 1], got " +
                          std::to_string(barrier_scale));
    }
    if (!std::isfinite(tilt)) {
        throw usage_error("control: tilt must be finite");
    }
}

void CapacitorSpec::validate() const {
    if (!(capacitance > 0.0) || !std::isfinite(capacitance)) {
        throw usage_error("capacitor: capacitance must be positive and finite, got " +
                          std::to_string(capacitance));
    }
    if (!(resistance > 0.0) || !std::isfinite(resistance)) {
        throw usage_error("capacitor: resistance must be positive and finite, got " +
                          std::to_string(resistance));
    }
    if (!std::isfinite(setpoint_voltage)) {
        throw usage_error("capacitor: setpoint_voltage must be finite");
    }
    if (switch_cost < 0.0 || !std::isfinite(switch_cost)) {
        throw usage_error("capacitor: switch_cost must be nonnegative and finite, got " +
                          std::to_string(switch_cost));
    }
}

void TwoStateSpec::validate() const {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw usage_error("two_state: rate must be positive and finite, got " +
                          std::to_string(rate));
    }
    if (p1_initial < 0.0 || p1_initial > 1.0 || !std::isfinite(p1_initial)) {
        throw usage_error("two_state: p1_initial must lie in [0, 1], got " +
                          std::to_string(p1_initial));
    }
}

void AttemptTime::validate() const {
    if (!(tau0 > 0.0) || !std::isfinite(tau0)) {
        throw usage_error("attempt_time: tau0 must be positive and finite, got " +
                          std::to_string(tau0));
    }
}

double potential_energy(const PotentialSpec& spec, const ControlState& control, double x) {
    spec.validate();
    control.validate();
    return potential_energy_unchecked(spec, control, x);
}

double potential_force(const PotentialSpec& spec, const ControlState& control, double x) {
    spec.validate();
    control.validate();
    return potential_force_unchecked(spec, control, x);
}

double kramers_time(const AttemptTime& tau0, double barrier, const BathParams& bath) {
    tau0.validate();
    bath.validate();
    if (!(barrier >= 0.0) || !std::isfinite(barrier)) {
        throw usage_error("kramers_time: barrier must be nonnegative and finite");
    }
    const double exponent = barrier / bath.kbt;
    // exp overflows past ~709.78; report the exponent so the caller can see
    // how far out of range the request was.
    if (exponent > 700.0) {
        throw std::range_error("kramers_time: exponent " + std::to_string(exponent) +
                               " exceeds 700, exp would overflow");
    }
    return tau0.tau0 * std::exp(exponent);
}

double quartic_kramers_prefactor(const PotentialSpec& spec, const BathParams& bath) {
    spec.validate();
    bath.validate();
    // U''(+-x0) = 8E/x0^2 at the minima, U''(0) = -4E/x0^2 at the top, so
    // sqrt(U''(x0)*|U''(0)|) = 4*sqrt(2)*E/x0^2.
    const double x0 = spec.well_halfwidth;
    return 2.0 * std::numbers::pi * bath.gamma * x0 * x0 /
           (4.0 * std::numbers::sqrt2 * spec.barrier_height);
}

double two_state_relaxation(const TwoStateSpec& spec, double t) {
    spec.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw usage_error("two_state_relaxation: t must be nonnegative and finite");
    }
    return 0.5 + (spec.p1_initial - 0.5) * std::exp(-2.0 * spec.rate * t);
}

}  // namespace erasim
