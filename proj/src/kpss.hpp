#pragma once

#include <array>
#include <span>

#include "phr_test.hpp"
#include "timeseries.hpp"

namespace phr {

struct KpssConfig {
    int bandwidth = -1;   // Bartlett lags; -1 = floor(4 (T/100)^(1/4))
    double alpha = 0.05;  // one of 0.10, 0.05, 0.025, 0.01
};

struct KpssCritical {
    double alpha;
    double value;
};

// Level-stationarity critical values used by the decision rule. Validated
// by simulating the null distribution (see the acceptance suite).
std::span<const KpssCritical> kpss_critical_values();

int kpss_auto_bandwidth(std::size_t n);

// Bartlett-kernel long-run variance of the demeaned series:
// gamma(0) + 2 sum_{j=1}^{l} (1 - j/(l+1)) gamma(j), 1/T autocovariances.
double long_run_variance(std::span<const double> values, int bandwidth);
double long_run_variance(const TimeSeries& series, int bandwidth);

// Squared partial sums of the demeaned series over sigma^2 T^2.
double kpss_statistic(const TimeSeries& series, const KpssConfig& config);

struct KpssDecision {
    bool reject = false;
    double p_lower = 0.0;  // bracket between adjacent tabulated levels
    double p_upper = 1.0;
};

KpssDecision kpss_decision(double statistic, double alpha);

TestResult kpss_test(const TimeSeries& series, const KpssConfig& config);

}  // namespace phr
