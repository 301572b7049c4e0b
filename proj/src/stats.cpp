#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"

namespace phr {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double kolmogorov_survival(double lambda) {
    // Below 0.2 the survival function is 1 to better than 1e-12.
    if (!(lambda > 0.2)) return 1.0;
    const double a = -2.0 * lambda * lambda;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j < 100000; ++j) {
        double term = std::exp(a * static_cast<double>(j) * static_cast<double>(j));
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_standard_normal(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 8) {
        fail(ErrorCode::invalid_argument, "KS test requires at least 8 values");
    }
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(values[i])) {
            fail(ErrorCode::invalid_argument, "KS test input contains a non-finite value");
        }
        u[i] = normal_cdf(values[i]);
    }
    std::sort(u.begin(), u.end());

    const auto nd = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double above = static_cast<double>(i + 1) / nd - u[i];
        double below = u[i] - static_cast<double>(i) / nd;
        d = std::max({d, above, below});
    }

    const double lambda = (std::sqrt(nd) + 0.12 + 0.11 / std::sqrt(nd)) * d;
    return KsResult{d, kolmogorov_survival(lambda), n};
}

}  // namespace phr
