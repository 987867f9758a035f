#pragma once

#include <cmath>

namespace erasim {

// Natural units throughout: k_B*T is carried as the single number `kbt`,
// and the defaults kbt = gamma = x0 = 1 make every energy read in units of
// k_B*T and every time in units of gamma*x0^2/k_B*T.

struct BathParams {
    double kbt = 1.0;    // thermal energy k_B*T
    double gamma = 1.0;  // friction coefficient (energy*time/length^2)

    void validate() const;
};

// Controllable quartic double well
//   U(x; b, a) = b*E*((x/x0)^2 - 1)^2 + a*(x/x0)
// with minima at +-x0 when untilted and barrier height E at x = 0.
struct PotentialSpec {
    double barrier_height = 10.0;  // E
    double well_halfwidth = 1.0;   // x0

    void validate() const;
};

struct ControlState {
    double barrier_scale = 1.0;  // b in [0, 1]; b = 0 flattens the quartic term
    double tilt = 0.0;           // a, linear bias; a > 0 favors the bit-0 well (x < 0)

    void validate() const;
};

struct CapacitorSpec {
    double capacitance = 1.0;       // C
    double resistance = 1.0;        // R
    double setpoint_voltage = 0.0;  // V_s, the deterministic stored level
    double switch_cost = 0.0;       // work spent closing the switch, dissipated in the switch

    double rc() const { return resistance * capacitance; }
    double stored_energy() const { return 0.5 * capacitance * setpoint_voltage * setpoint_voltage; }

    void validate() const;
};

// Symmetric discrete two-state cell with hop rate r per direction, so the
// occupation relaxes toward 1/2 at rate 2r.
struct TwoStateSpec {
    double rate = 1.0;        // well-to-well hop rate r (1/time)
    double p1_initial = 1.0;  // probability the bit starts as 1

    void validate() const;
};

struct AttemptTime {
    double tau0 = 1.0;  // Kramers prefactor

    void validate() const;
};

double potential_energy(const PotentialSpec& spec, const ControlState& control, double x);
double potential_force(const PotentialSpec& spec, const ControlState& control, double x);

// tau0 * exp(barrier / kbt); throws std::range_error when the exponent
// would overflow a double.
double kramers_time(const AttemptTime& tau0, double barrier, const BathParams& bath);

// Overdamped Kramers prefactor for the quartic well at full barrier:
// 2*pi*gamma / sqrt(U''(x0) * |U''(0)|). Handy default for tau0 so that
// kramers_time matches what the trajectory engine actually measures.
double quartic_kramers_prefactor(const PotentialSpec& spec, const BathParams& bath);

// Closed-form occupation p1(t) = 1/2 + (p1(0) - 1/2) * exp(-2*r*t).
double two_state_relaxation(const TwoStateSpec& spec, double t);

// --- inline hot-path definitions -----------------------------------------

inline double potential_energy_unchecked(const PotentialSpec& spec, const ControlState& control,
                                         double x) {
    const double u = x / spec.well_halfwidth;
    const double q = u * u - 1.0;
    return control.barrier_scale * spec.barrier_height * q * q + control.tilt * u;
}

inline double potential_force_unchecked(const PotentialSpec& spec, const ControlState& control,
                                        double x) {
    const double x0 = spec.well_halfwidth;
    const double u = x / x0;
    return -(4.0 * control.barrier_scale * spec.barrier_height * x * (u * u - 1.0) / (x0 * x0) +
             control.tilt / x0);
}

}  // namespace erasim
