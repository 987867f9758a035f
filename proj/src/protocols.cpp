#include "erasim/protocols.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "erasim/entropy.hpp"
#include "erasim/errors.hpp"
#include "erasim/harness.hpp"

namespace erasim {

ProtocolSchedule make_reset_schedule(double duration, double lower_fraction, double tilt_peak) {
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw usage_error("reset schedule: duration must be positive, got " +
                          std::to_string(duration));
    }
    if (lower_fraction < 0.0 || lower_fraction > 1.0 || !std::isfinite(lower_fraction)) {
        throw usage_error("reset schedule: lower_fraction must lie in [0, 1], got " +
                          std::to_string(lower_fraction));
    }
    if (!std::isfinite(tilt_peak)) {
        throw usage_error("reset schedule: tilt_peak must be finite");
    }
    const double b_low = 1.0 - lower_fraction;
    return ProtocolSchedule({
        {0.0, {1.0, 0.0}},
        {duration * 0.25, {b_low, 0.0}},
        {duration * 0.5, {b_low, tilt_peak}},
        {duration * 0.75, {1.0, tilt_peak}},
        {duration, {1.0, 0.0}},
    });
}

ProtocolSchedule make_passive_ite_schedule(double wait_multiplier, const AttemptTime& tau0,
                                           const PotentialSpec& spec, const BathParams& bath) {
    if (!(wait_multiplier > 0.0) || !std::isfinite(wait_multiplier)) {
        throw usage_error("passive schedule: wait_multiplier must be positive, got " +
                          std::to_string(wait_multiplier));
    }
    const double wait = wait_multiplier * kramers_time(tau0, spec.barrier_height, bath);
    return ProtocolSchedule::constant_hold({1.0, 0.0}, wait);
}

EnsembleStats run_capacitor_ite(const CapacitorSpec& spec, const BathParams& bath,
                                std::size_t ensemble_size, double settle_multiplier,
                                std::uint64_t master_seed, int workers) {
    spec.validate();
    bath.validate();
    if (!(settle_multiplier >= 10.0)) {
        throw usage_error("capacitor ite: settle_multiplier must be >= 10 (got " +
                          std::to_string(settle_multiplier) + "), the cell must fully thermalize");
    }
    EnsembleSpec ensemble;
    ensemble.physics.backend = Backend::capacitor;
    ensemble.physics.capacitor = spec;
    ensemble.bath = bath;
    const double duration = settle_multiplier * spec.rc();
    ensemble.schedule = ProtocolSchedule::constant_hold({1.0, 0.0}, duration);
    // The transition kernel is exact for any dt; eight steps keep the loop
    // shape shared with the other backends without costing anything.
    ensemble.step.dt = duration / 8.0;
    ensemble.step.record_stride = 8;
    ensemble.initial.kind = InitialKind::fixed_value;
    ensemble.initial.value = spec.setpoint_voltage;
    ensemble.n_trajectories = ensemble_size;
    return run_ensemble(ensemble, master_seed, workers);
}

double write_over_cost_bits(std::uint64_t memory_size_n) {
    if (memory_size_n == 0) {
        throw std::domain_error("write_over_cost_bits: memory size must be >= 1");
    }
    return std::log2(static_cast<double>(memory_size_n));
}

void IceCubeSpec::validate() const {
    if (!(latent_heat_per_bit > 0.0) || !std::isfinite(latent_heat_per_bit)) {
        throw usage_error("ice cube: latent_heat_per_bit must be positive");
    }
    if (!(melt_temperature > 0.0) || !std::isfinite(melt_temperature)) {
        throw usage_error("ice cube: melt_temperature must be positive");
    }
}

IceCubeResult ice_cube_reset(const IceCubeSpec& spec) {
    spec.validate();
    const double absorbed = static_cast<double>(spec.n_bits) * spec.latent_heat_per_bit;
    return {-absorbed, absorbed / spec.melt_temperature};
}

namespace {

constexpr std::uint64_t kMaxPiBits = 1000000;

// 16^e mod m by binary exponentiation; m stays small (< 2^22 at the digit
// cap) so plain 64-bit products never overflow.
std::uint64_t pow16_mod(std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    std::uint64_t base = 16 % m;
    while (e > 0) {
        if (e & 1) {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    return result;
}

// Fractional part of 16^d * sum_k 16^{-k}/(8k+c) in 2^-64 fixed point.
std::uint64_t bbp_series(std::uint64_t d, std::uint64_t c) {
    std::uint64_t acc = 0;
    for (std::uint64_t k = 0; k <= d; ++k) {
        const std::uint64_t m = 8 * k + c;
        const std::uint64_t r = pow16_mod(d - k, m);
        acc += static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) << 64) / m);
    }
    // Tail k > d: terms shrink by 16x each; past 17 terms they vanish in
    // 64-bit fixed point.
    for (std::uint64_t j = 1; j <= 17; ++j) {
        const unsigned __int128 denom = static_cast<unsigned __int128>(8 * (d + j) + c) << (4 * j);
        acc += static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / denom);
    }
    return acc;
}

// Six hex digits of pi starting at fractional position d+1. 24 bits are
// read per evaluation, leaving 40 guard bits against carries truncated off
// the series tails.
std::uint32_t bbp_digits(std::uint64_t d) {
    const std::uint64_t frac = 4 * bbp_series(d, 1) - 2 * bbp_series(d, 4) - bbp_series(d, 5) -
                               bbp_series(d, 6);
    return static_cast<std::uint32_t>(frac >> 40);
}

}  // namespace

std::vector<std::uint8_t> pi_bits(std::uint64_t n) {
    if (n < 1) {
        throw usage_error("pi_bits: n must be >= 1");
    }
    if (n > kMaxPiBits) {
        throw usage_error("pi_bits: n = " + std::to_string(n) + " exceeds the bound " +
                          std::to_string(kMaxPiBits));
    }
    const std::uint64_t n_digits = (n + 3) / 4;
    const std::uint64_t n_anchors = (n_digits + 5) / 6;
    std::vector<std::uint8_t> digits(n_anchors * 6);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(n_anchors); ++a) {
        const std::uint32_t packed = bbp_digits(static_cast<std::uint64_t>(a) * 6);
        for (int i = 0; i < 6; ++i) {
            digits[static_cast<std::uint64_t>(a) * 6 + static_cast<std::uint64_t>(i)] =
                static_cast<std::uint8_t>((packed >> (20 - 4 * i)) & 0xF);
        }
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint8_t digit = digits[i / 4];
        bits.push_back((digit >> (3 - i % 4)) & 1);
    }
    return bits;
}

DeterministicDataAudit deterministic_data_audit(std::uint64_t n) {
    if (n < 1000) {
        throw usage_error("deterministic_data_audit: n must be >= 1000 for a stable frequency "
                          "estimate, got " + std::to_string(n));
    }
    const std::vector<std::uint8_t> bits = pi_bits(n);
    std::uint64_t ones = 0;
    for (std::uint8_t b : bits) {
        ones += b;
    }
    const double p1 = static_cast<double>(ones) / static_cast<double>(n);
    DeterministicDataAudit audit;
    audit.empirical_entropy_bits_per_bit = shannon_entropy_bits(BitEnsemble{{p1}});
    audit.description_cost_bits = std::log2(static_cast<double>(n));
    return audit;
}

}  // namespace erasim
