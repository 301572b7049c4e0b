#pragma once

#include <limits>
#include <string>
#include <vector>

#include "spectral.hpp"
#include "stats.hpp"

namespace phr {

// Spectrum-normalized cumulant estimates and the pivotal quantity per pair.
// Under strict stationarity the real and imaginary parts of y are
// asymptotically standard normal.
struct YGrid {
    std::vector<FrequencyPair> pairs;
    std::vector<std::complex<double>> gamma_hat;  // K / sqrt(S S)
    std::vector<std::complex<double>> y;          // sqrt(2P) gamma_hat
};

// Shared result record for PHR and KPSS. PHR fills p_value and the frame
// echo; KPSS fills the p-value bracket and bandwidth.
struct TestResult {
    std::string test_name;
    double statistic = 0.0;
    double p_value = std::numeric_limits<double>::quiet_NaN();
    double p_lower = 0.0;
    double p_upper = 1.0;
    double alpha = 0.05;
    bool reject = false;
    int frame_length = 0;
    int frame_count = 0;
    int n_pairs = 0;
    int bandwidth = -1;
    std::vector<std::string> preprocessing;
    std::vector<std::string> warnings;  // advisory only, not serialized
};

// gamma(k1,k2) = K(k1,k2) / sqrt(S(|k1|) S(|k2|)), y = sqrt(2P) gamma.
// Any spectrum value used in a denominator must exceed 1e-9 of the mean
// spectrum level or the grid is reported as degenerate.
YGrid y_statistics(const CumulantGrid& grid);

// All real parts in pair order, then all imaginary parts in pair order.
std::vector<double> stack_components(const YGrid& ygrid);

struct PhrOutcome {
    TestResult result;
    YGrid ygrid;
    CumulantGrid grid;
};

// Full pipeline: partition, DFT, cumulant grid, pivot, KS against the
// standard normal. frame_length 0 picks the nearest even integer to
// sqrt(T). Rejects when the KS p-value falls below alpha.
PhrOutcome phr_test(const TimeSeries& series, int frame_length, double alpha);

}  // namespace phr
