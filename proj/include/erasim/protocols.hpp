#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "erasim/ensemble.hpp"
#include "erasim/model.hpp"
#include "erasim/schedule.hpp"

namespace erasim {

// Standard reset-to-zero profile over five control points:
//   (0, b=1, a=0) -> (d/4, 1-lower_fraction, 0) -> (d/2, 1-lower_fraction, tilt_peak)
//   -> (3d/4, 1, tilt_peak) -> (d, 1, 0)
// Positive tilt_peak biases toward the bit-0 well at -x0.
ProtocolSchedule make_reset_schedule(double duration, double lower_fraction, double tilt_peak);

// Passive erasure-by-thermalization: hold the symmetric full barrier for
// wait_multiplier Kramers times and let the bath randomize the bit. The
// control never moves, so the ledger reports exactly zero work.
ProtocolSchedule make_passive_ite_schedule(double wait_multiplier, const AttemptTime& tau0,
                                           const PotentialSpec& spec, const BathParams& bath);

// Connects a charged capacitor to its thermal resistor for
// settle_multiplier*RC and measures the heat ledger over the ensemble. The
// mean approaches stored_energy - kbt/2: negative (net absorption from the
// environment) whenever the stored energy is below the equipartition share.
EnsembleStats run_capacitor_ite(const CapacitorSpec& spec, const BathParams& bath,
                                std::size_t ensemble_size, double settle_multiplier,
                                std::uint64_t master_seed, int workers = 0);

// Address bits needed to designate one block out of n: the whole bookkeeping
// cost of erasure by marking blocks free and writing over them later.
double write_over_cost_bits(std::uint64_t memory_size_n);

struct IceCubeSpec {
    std::uint64_t n_bits = 1;
    double latent_heat_per_bit = 1.0;
    double melt_temperature = 1.0;

    void validate() const;
};

struct IceCubeResult {
    double heat_to_bath = 0.0;     // negative: melting absorbs heat
    double delta_s_thermo = 0.0;   // entropy gained by the memory
};

// Reset by environmental melting: all ice-phase bits absorb latent heat and
// end in the water phase.
IceCubeResult ice_cube_reset(const IceCubeSpec& spec);

// First n bits of the hexadecimal fractional expansion of pi (4 bits per
// digit, most significant first), via digit extraction; no earlier digits
// are materialized at full precision. n is capped at 10^6.
std::vector<std::uint8_t> pi_bits(std::uint64_t n);

struct DeterministicDataAudit {
    double empirical_entropy_bits_per_bit = 0.0;
    double description_cost_bits = 0.0;
};

// Juxtaposes the statistical entropy rate of the pi bit stream (maximal,
// about 1 bit/bit) with the cost of describing the stream deterministically
// (log2 n address bits).
DeterministicDataAudit deterministic_data_audit(std::uint64_t n);

}  // namespace erasim
