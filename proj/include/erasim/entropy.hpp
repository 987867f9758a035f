#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "erasim/ensemble.hpp"
#include "erasim/model.hpp"

namespace erasim {

// Bit-probability assignment over a register of memory cells: p1[j] is the
// probability that cell j reads 1.
struct BitEnsemble {
    std::vector<double> p1;
};

struct EstimatedBitEnsemble {
    BitEnsemble ensemble;
    std::vector<double> stderrs;  // binomial plug-in sqrt(p(1-p)/n) per cell
};

// Shannon information entropy in bits, summed over cells; p = 0 and p = 1
// contribute zero by the usual limit convention.
double shannon_entropy_bits(const BitEnsemble& ensemble);

// Plug-in frequency estimates from raw bit samples, one sample vector per
// cell.
EstimatedBitEnsemble estimate_bit_probabilities(const std::vector<std::vector<int>>& samples);

// Minimum heat that must flow to the bath when the information entropy
// changes by delta_s_info_bits: -kbt * ln(2) * delta_s. Negative (a heat
// absorption allowance, i.e. no constraint) when entropy grows.
double landauer_min_heat(double delta_s_info_bits, const BathParams& bath);

struct Histogram {
    std::vector<std::uint64_t> counts;
    double bin_width = 1.0;
};

// Differential-entropy estimate in nats: -sum p_i ln p_i + ln(bin width).
double gibbs_entropy_from_histogram(const Histogram& histogram);

enum class Verdict { consistent, violates_bound, bound_vacuous };

std::string to_string(Verdict verdict);

struct ErasureReport {
    double delta_s_info_bits = 0.0;
    double measured_work = 0.0;
    double measured_heat_to_bath = 0.0;
    double heat_stderr = 0.0;
    double landauer_min_heat = 0.0;
    double kbt = 1.0;
    Verdict verdict = Verdict::consistent;
};

// Confronts measured dissipation with the bound implied by the information
// entropy change between two bit ensembles. bound-vacuous marks the case
// where entropy grew (negative bound) while no heat flowed within
// resolution: the inequality holds but constrains nothing.
ErasureReport make_erasure_report(const BitEnsemble& before, const BitEnsemble& after,
                                  const EnsembleStats& stats, const BathParams& bath);

}  // namespace erasim
