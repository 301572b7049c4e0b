#pragma once

#include <cstddef>
#include <span>

namespace phr {

// Standard normal CDF; absolute error well under 1e-12.
double normal_cdf(double x);

// Q(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2), the asymptotic
// survival function of the Kolmogorov statistic. Terms below 1e-12 are
// dropped; Q(0) = 1 by convention.
double kolmogorov_survival(double lambda);

struct KsResult {
    double d_statistic = 0.0;  // two-sided sup distance, in [0, 1]
    double p_value = 1.0;
    std::size_t n = 0;
};

// One-sample KS test of the values against the standard normal: each value
// is mapped through the normal CDF and the empirical CDF of the transforms
// is compared with the uniform. The p-value uses the asymptotic series at
// lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) D. Ties are kept as-is.
KsResult ks_standard_normal(std::span<const double> values);

}  // namespace phr
