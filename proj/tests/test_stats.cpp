#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "erasim/errors.hpp"
#include "erasim/stats.hpp"

using namespace erasim;

TEST_SUITE("stats") {

TEST_CASE("neumaier survives catastrophic cancellation") {
    NeumaierSum sum;
    sum.add(1.0);
    sum.add(1e100);
    sum.add(1.0);
    sum.add(-1e100);
    CHECK(sum.value() == 2.0);
}

TEST_CASE("neumaier matches plain addition on benign input") {
    NeumaierSum sum;
    double plain = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        sum.add(1.0 / i);
        plain += 1.0 / i;
    }
    CHECK(sum.value() == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("pairwise sum tracks a long-double reference") {
    std::vector<double> values;
    long double reference = 0.0L;
    for (int i = 0; i < 100000; ++i) {
        const double x = std::sin(0.1 * i) / (i + 1.0);
        values.push_back(x);
        reference += x;
    }
    CHECK(pairwise_sum(values) ==
          doctest::Approx(static_cast<double>(reference)).epsilon(1e-13));
}

TEST_CASE("pairwise sum is exact on integers") {
    std::vector<double> values(1000, 1.0);
    CHECK(pairwise_sum(values) == 1000.0);
}

TEST_CASE("mean and stderr of a known sample") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const MeanStderr ms = mean_stderr(v);
    CHECK(ms.mean == doctest::Approx(2.5));
    // sample variance 5/3, stderr sqrt(5/3)/2
    CHECK(ms.stderr_of_mean == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("mean of a single value has zero stderr") {
    const std::vector<double> v{7.0};
    const MeanStderr ms = mean_stderr(v);
    CHECK(ms.mean == 7.0);
    CHECK(ms.stderr_of_mean == 0.0);
}

TEST_CASE("mean of nothing is an error") {
    CHECK_THROWS_AS(mean_stderr(std::vector<double>{}), usage_error);
}

TEST_CASE("chi-squared tail probabilities at table anchors") {
    // Standard table values: P(X >= x) for given dof.
    CHECK(chi_squared_pvalue(3.841, 1) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(chi_squared_pvalue(6.635, 1) == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(chi_squared_pvalue(67.505, 50) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(chi_squared_pvalue(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("chi-squared pvalue is monotone in the statistic") {
    double last = 1.0;
    for (double chi2 = 0.0; chi2 <= 100.0; chi2 += 5.0) {
        const double p = chi_squared_pvalue(chi2, 49);
        CHECK(p <= last);
        last = p;
    }
}

TEST_CASE("least squares recovers an exact line") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> y;
    for (const double xi : x) y.push_back(3.0 - 2.0 * xi);
    const LinearFit fit = least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.slope_stderr == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("least squares slope error grows with residual scatter") {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> tight{0.0, 1.01, 1.99, 3.01, 3.99, 5.01};
    const std::vector<double> loose{0.0, 1.4, 1.6, 3.4, 3.6, 5.4};
    CHECK(least_squares(x, tight).slope_stderr < least_squares(x, loose).slope_stderr);
}

}  // TEST_SUITE
