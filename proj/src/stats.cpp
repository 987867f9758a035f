#include "erasim/stats.hpp"

#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "erasim/errors.hpp"

namespace erasim {

namespace {

// Fixed block size for the base case keeps the reduction tree identical for
// every caller, which is what makes aggregate bytes reproducible.
constexpr std::size_t kPairwiseBlock = 32;

double pairwise_sum_impl(const double* v, std::size_t n) {
    if (n <= kPairwiseBlock) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_impl(values.data(), values.size());
}

MeanStderr mean_stderr(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) throw usage_error("mean_stderr: empty sample set");
    MeanStderr out;
    out.mean = pairwise_sum(values) / static_cast<double>(n);
    if (n < 2) return out;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    out.stderr_of_mean = std::sqrt(var / static_cast<double>(n));
    return out;
}

double chi_squared_pvalue(double chi2, int dof) {
    if (dof < 1) throw usage_error("chi_squared_pvalue: dof must be >= 1");
    if (chi2 < 0.0) throw usage_error("chi_squared_pvalue: chi2 must be >= 0");
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, chi2));
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw usage_error("least_squares: need two equal-length samples");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw usage_error("least_squares: degenerate x grid");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += r * r;
        }
        fit.slope_stderr = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
    }
    return fit;
}

}  // namespace erasim
