#include "erasim/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "erasim/errors.hpp"
#include "erasim/stats.hpp"

namespace erasim {

namespace {

double binary_entropy_bits(double p) {
    double h = 0.0;
    if (p > 0.0) {
        h -= p * std::log2(p);
    }
    const double q = 1.0 - p;
    if (q > 0.0) {
        h -= q * std::log2(q);
    }
    return h;
}

}  // namespace

double shannon_entropy_bits(const BitEnsemble& ensemble) {
    NeumaierSum total;
    for (double p : ensemble.p1) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::domain_error("shannon_entropy_bits: probability " + std::to_string(p) +
                                    " outside [0, 1]");
        }
        total.add(binary_entropy_bits(p));
    }
    return total.value();
}

EstimatedBitEnsemble estimate_bit_probabilities(const std::vector<std::vector<int>>& samples) {
    if (samples.empty()) {
        throw usage_error("estimate_bit_probabilities: no cells given");
    }
    EstimatedBitEnsemble out;
    out.ensemble.p1.reserve(samples.size());
    out.stderrs.reserve(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const auto& cell = samples[j];
        if (cell.empty()) {
            throw usage_error("estimate_bit_probabilities: cell " + std::to_string(j) +
                              " has no samples");
        }
        std::uint64_t ones = 0;
        for (int bit : cell) {
            if (bit != 0 && bit != 1) {
                throw usage_error("estimate_bit_probabilities: sample is not a bit");
            }
            ones += static_cast<std::uint64_t>(bit);
        }
        const double n = static_cast<double>(cell.size());
        const double p = static_cast<double>(ones) / n;
        out.ensemble.p1.push_back(p);
        out.stderrs.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    return out;
}

double landauer_min_heat(double delta_s_info_bits, const BathParams& bath) {
    bath.validate();
    return -bath.kbt * std::numbers::ln2 * delta_s_info_bits;
}

double gibbs_entropy_from_histogram(const Histogram& histogram) {
    if (!(histogram.bin_width > 0.0) || !std::isfinite(histogram.bin_width)) {
        throw usage_error("gibbs_entropy_from_histogram: bin width must be positive");
    }
    std::uint64_t total = 0;
    for (std::uint64_t c : histogram.counts) {
        total += c;
    }
    if (total == 0) {
        throw usage_error("gibbs_entropy_from_histogram: empty histogram");
    }
    NeumaierSum sum;
    const double n = static_cast<double>(total);
    for (std::uint64_t c : histogram.counts) {
        if (c == 0) {
            continue;
        }
        const double p = static_cast<double>(c) / n;
        sum.add(-p * std::log(p));
    }
    return sum.value() + std::log(histogram.bin_width);
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::consistent:
            return "consistent";
        case Verdict::violates_bound:
            return "violates-bound";
        case Verdict::bound_vacuous:
            return "bound-vacuous";
    }
    return "consistent";
}

ErasureReport make_erasure_report(const BitEnsemble& before, const BitEnsemble& after,
                                  const EnsembleStats& stats, const BathParams& bath) {
    if (before.p1.size() != after.p1.size()) {
        throw usage_error("make_erasure_report: cell counts differ (" +
                          std::to_string(before.p1.size()) + " vs " +
                          std::to_string(after.p1.size()) + ")");
    }
    ErasureReport report;
    report.delta_s_info_bits = shannon_entropy_bits(after) - shannon_entropy_bits(before);
    report.measured_work = stats.mean_work;
    report.measured_heat_to_bath = stats.mean_heat_to_bath;
    report.heat_stderr = stats.stderr_heat_to_bath;
    report.landauer_min_heat = landauer_min_heat(report.delta_s_info_bits, bath);
    report.kbt = bath.kbt;

    const double band = 3.0 * report.heat_stderr;
    // The vacuous case first: a negative bound that a zero heat flow
    // satisfies trivially must not be announced as a meaningful pass.
    if (report.landauer_min_heat < 0.0 && std::abs(report.measured_heat_to_bath) <= band) {
        report.verdict = Verdict::bound_vacuous;
    } else if (report.measured_heat_to_bath >= report.landauer_min_heat - band) {
        report.verdict = Verdict::consistent;
    } else {
        report.verdict = Verdict::violates_bound;
    }
    return report;
}

}  // namespace erasim
