#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace erasim {

// Neumaier compensated accumulator. Used for the per-trajectory work/heat
// ledgers so the discrete first law holds to ~1 ulp of the running sum.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

// Pairwise (tree) summation in ascending index order. This is the canonical
// reduction for ensemble aggregates: the result depends only on the values
// and their indices, never on worker count or scheduling.
double pairwise_sum(std::span<const double> values);

struct MeanStderr {
    double mean = 0.0;
    double stderr_of_mean = 0.0;  // sample stddev (n-1) / sqrt(n)
};

MeanStderr mean_stderr(std::span<const double> values);

// Upper tail probability P(X >= chi2) for a chi-squared variable with
// `dof` degrees of freedom.
double chi_squared_pvalue(double chi2, int dof);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

// Ordinary least squares y = a + b*x with the usual residual-based
// standard error on the slope.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace erasim
