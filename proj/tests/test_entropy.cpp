#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "erasim/entropy.hpp"
#include "erasim/errors.hpp"
#include "erasim/rng.hpp"

using namespace erasim;

TEST_SUITE("entropy") {

TEST_CASE("shannon entropy at landmark assignments") {
    CHECK(shannon_entropy_bits({{0.5}}) == doctest::Approx(1.0));
    CHECK(shannon_entropy_bits({{0.5, 0.5, 0.5}}) == doctest::Approx(3.0));
    CHECK(shannon_entropy_bits({{0.0, 1.0}}) == 0.0);
    CHECK(shannon_entropy_bits({{0.25}}) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
    CHECK(shannon_entropy_bits({{}}) == 0.0);
}

TEST_CASE("shannon entropy is symmetric and maximal at 1/2") {
    for (double p = 0.0; p <= 0.5; p += 0.05) {
        CHECK(shannon_entropy_bits({{p}}) == doctest::Approx(shannon_entropy_bits({{1.0 - p}})));
        CHECK(shannon_entropy_bits({{p}}) <= 1.0);
    }
}

TEST_CASE("shannon entropy is additive over cells") {
    const double sum = shannon_entropy_bits({{0.1}}) + shannon_entropy_bits({{0.7}}) +
                       shannon_entropy_bits({{0.4}});
    CHECK(shannon_entropy_bits({{0.1, 0.7, 0.4}}) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("shannon entropy rejects probabilities outside the unit interval") {
    CHECK_THROWS_AS(shannon_entropy_bits({{1.2}}), std::domain_error);
    CHECK_THROWS_AS(shannon_entropy_bits({{-0.1}}), std::domain_error);
}

TEST_CASE("bit probability estimates with binomial errors") {
    const EstimatedBitEnsemble all_ones = estimate_bit_probabilities({{1, 1, 1, 1}});
    CHECK(all_ones.ensemble.p1.at(0) == 1.0);
    CHECK(all_ones.stderrs.at(0) == 0.0);

    const EstimatedBitEnsemble half = estimate_bit_probabilities({{0, 1, 0, 1}});
    CHECK(half.ensemble.p1.at(0) == 0.5);
    CHECK(half.stderrs.at(0) == doctest::Approx(0.25));  // sqrt(0.25/4)

    const EstimatedBitEnsemble two_cells = estimate_bit_probabilities({{1, 1}, {0, 1, 1, 1}});
    CHECK(two_cells.ensemble.p1.at(0) == 1.0);
    CHECK(two_cells.ensemble.p1.at(1) == 0.75);
}

TEST_CASE("bit probability estimates reject bad input") {
    CHECK_THROWS_AS(estimate_bit_probabilities({}), usage_error);
    CHECK_THROWS_AS(estimate_bit_probabilities({{}}), usage_error);
    CHECK_THROWS_AS(estimate_bit_probabilities({{0, 2}}), usage_error);
    CHECK_THROWS_AS(estimate_bit_probabilities({{0, -1}}), usage_error);
}

TEST_CASE("landauer bound in kbt units") {
    const BathParams bath{1.0, 1.0};
    CHECK(landauer_min_heat(-1.0, bath) == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
    CHECK(landauer_min_heat(0.0, bath) == 0.0);
    CHECK(landauer_min_heat(2.0, bath) == doctest::Approx(-2.0 * std::numbers::ln2));
    // linear in delta_s and in kbt
    CHECK(landauer_min_heat(-3.0, bath) == doctest::Approx(3.0 * landauer_min_heat(-1.0, bath)));
    CHECK(landauer_min_heat(-1.0, {2.0, 1.0}) == doctest::Approx(2.0 * std::numbers::ln2));
}

TEST_CASE("histogram entropy: exact small cases") {
    CHECK(gibbs_entropy_from_histogram({{100}, 0.5}) == doctest::Approx(std::log(0.5)));
    CHECK(gibbs_entropy_from_histogram({{7, 7, 7, 7}, 0.25}) == doctest::Approx(std::log(1.0)));
    // empty bins contribute nothing
    CHECK(gibbs_entropy_from_histogram({{5, 0, 5}, 1.0}) ==
          doctest::Approx(std::log(2.0) + std::log(1.0)));
}

TEST_CASE("histogram entropy of a gaussian sample") {
    RngStream rng(321, 0);
    Histogram histogram;
    histogram.bin_width = 0.05;
    histogram.counts.assign(400, 0);  // covers +-10 sigma
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        const int bin = static_cast<int>((z + 10.0) / histogram.bin_width);
        REQUIRE(bin >= 0);
        REQUIRE(bin < 400);
        ++histogram.counts[static_cast<std::size_t>(bin)];
    }
    const double expected = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    CHECK(gibbs_entropy_from_histogram(histogram) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("erasure report: consistent when heat covers the bound") {
    EnsembleStats stats;
    stats.mean_heat_to_bath = 0.8;
    stats.stderr_heat_to_bath = 0.01;
    const ErasureReport report =
        make_erasure_report({{1.0}}, {{0.0}}, stats, {1.0, 1.0});  // erase 1 -> 0 det.
    CHECK(report.delta_s_info_bits == 0.0);
    // deterministic before and after: no information change, bound is zero
    CHECK(report.landauer_min_heat == 0.0);
    CHECK(report.verdict == Verdict::consistent);
}

TEST_CASE("erasure report: full erasure demands ln 2") {
    EnsembleStats stats;
    stats.mean_heat_to_bath = 0.8;
    stats.stderr_heat_to_bath = 0.01;
    const ErasureReport report = make_erasure_report({{0.5}}, {{0.0}}, stats, {1.0, 1.0});
    CHECK(report.delta_s_info_bits == doctest::Approx(-1.0));
    CHECK(report.landauer_min_heat == doctest::Approx(std::numbers::ln2));
    CHECK(report.verdict == Verdict::consistent);

    stats.mean_heat_to_bath = 0.3;  // below ln 2 by many sigma
    const ErasureReport violating = make_erasure_report({{0.5}}, {{0.0}}, stats, {1.0, 1.0});
    CHECK(violating.verdict == Verdict::violates_bound);

    // within 3 sigma of the bound it stays consistent
    stats.mean_heat_to_bath = std::numbers::ln2 - 0.02;
    stats.stderr_heat_to_bath = 0.01;
    CHECK(make_erasure_report({{0.5}}, {{0.0}}, stats, {1.0, 1.0}).verdict ==
          Verdict::consistent);
}

TEST_CASE("erasure report: randomization makes the bound vacuous") {
    EnsembleStats stats;
    stats.mean_heat_to_bath = 0.001;
    stats.stderr_heat_to_bath = 0.01;
    const ErasureReport report = make_erasure_report({{1.0}}, {{0.5}}, stats, {1.0, 1.0});
    CHECK(report.delta_s_info_bits == doctest::Approx(1.0));
    CHECK(report.landauer_min_heat == doctest::Approx(-std::numbers::ln2));
    CHECK(report.verdict == Verdict::bound_vacuous);
}

TEST_CASE("erasure report: vacuous wins only while heat is unresolved") {
    EnsembleStats stats;
    stats.stderr_heat_to_bath = 0.01;
    stats.mean_heat_to_bath = -0.5;  // resolved heat absorption, negative bound
    const ErasureReport resolved = make_erasure_report({{1.0}}, {{0.5}}, stats, {1.0, 1.0});
    CHECK(resolved.verdict == Verdict::consistent);  // -0.5 >= -ln2 still holds

    stats.mean_heat_to_bath = -0.8;  // beats even the vacuous bound
    const ErasureReport breaking = make_erasure_report({{1.0}}, {{0.5}}, stats, {1.0, 1.0});
    CHECK(breaking.verdict == Verdict::violates_bound);
}

TEST_CASE("erasure report: kbt scales the bound") {
    EnsembleStats stats;
    stats.mean_heat_to_bath = 1.0;
    stats.stderr_heat_to_bath = 0.01;
    const ErasureReport report = make_erasure_report({{0.5}}, {{0.0}}, stats, {2.0, 1.0});
    CHECK(report.landauer_min_heat == doctest::Approx(2.0 * std::numbers::ln2));
    CHECK(report.kbt == 2.0);
    CHECK(report.verdict == Verdict::violates_bound);  // 1.0 < 2 ln 2 - 3 sigma
}

TEST_CASE("erasure report rejects mismatched registers") {
    EnsembleStats stats;
    CHECK_THROWS_AS(make_erasure_report({{0.5, 0.5}}, {{0.0}}, stats, {1.0, 1.0}), usage_error);
}

TEST_CASE("verdict names are stable") {
    CHECK(to_string(Verdict::consistent) == "consistent");
    CHECK(to_string(Verdict::violates_bound) == "violates-bound");
    CHECK(to_string(Verdict::bound_vacuous) == "bound-vacuous");
}

}  // TEST_SUITE
