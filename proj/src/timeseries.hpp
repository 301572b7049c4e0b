#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace phr {

// Ordered real-valued observations with a sampling interval and a log of
// the transforms that produced them. Immutable after construction; every
// transform returns a new series with one more log entry.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values, double sampling_interval = 1.0,
                        std::vector<std::string> preprocessing_log = {});

    const std::vector<double>& values() const noexcept { return values_; }
    std::span<const double> view() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double sampling_interval() const noexcept { return sampling_interval_; }
    double nyquist_frequency() const noexcept { return 0.5 / sampling_interval_; }
    const std::vector<std::string>& preprocessing_log() const noexcept {
        return preprocessing_log_;
    }

    // New series with the same sampling interval and the log extended by one tag.
    TimeSeries derive(std::vector<double> new_values, std::string log_entry) const;

private:
    std::vector<double> values_;
    double sampling_interval_;
    std::vector<std::string> preprocessing_log_;
};

struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0;   // n-1 denominator
    double min = 0.0;
    double max = 0.0;
    double skewness = 0.0;         // m3 / m2^(3/2)
    double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
};

// Autoregressive model fitted by prewhiten(); always causal.
struct ArModel {
    ArModel(int order, std::vector<double> coefficients, double residual_variance);

    int order;
    std::vector<double> coefficients;  // phi_1..phi_order
    double residual_variance;
};

// True if 1 - phi_1 z - ... - phi_p z^p has all roots outside the unit circle.
bool is_causal(std::span<const double> coefficients);

// CSV ingestion: comma-separated UTF-8, optional single header row, one
// numeric column selected by zero-based index or by name (a name implies a
// header). Rows whose cells are all empty are skipped; anything else
// malformed is an error that names the offending line.
TimeSeries load_csv(const std::string& path, const std::string& column, bool skip_header);

// r(t) = ln p(t+1) - ln p(t); output is one shorter than the input.
TimeSeries log_returns(const TimeSeries& prices);

// Deletes the floor(fraction*T) smallest and largest observations (ties
// resolved lowest-index-first); the survivors keep their original order.
TimeSeries trim(const TimeSeries& series, double fraction);

TimeSeries demean(const TimeSeries& series);

// Removes the least-squares line a + b*t, t = 0..T-1.
TimeSeries detrend(const TimeSeries& series);

// Yule-Walker AR(p) fits for p = 0..max_order, AIC order selection, and the
// filtered residuals (length T - p). Order 0 passes the input through.
std::pair<TimeSeries, ArModel> prewhiten(const TimeSeries& series, int max_order = 10);

// x(t) / s(t) with s(t) the sample standard deviation of the trailing
// window ending at t; the first window-1 entries reuse the first full
// window's s.
TimeSeries rolling_variance_standardize(const TimeSeries& series, int window);

DescriptiveStats describe(const TimeSeries& series);

}  // namespace phr
