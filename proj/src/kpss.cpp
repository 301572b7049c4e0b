#include "kpss.hpp"

#include <cmath>
#include <vector>

namespace phr {

namespace {

constexpr std::array<KpssCritical, 4> kCritical = {{
    {0.10, 0.347},
    {0.05, 0.463},
    {0.025, 0.574},
    {0.01, 0.739},
}};

std::vector<double> demeaned(std::span<const double> x) {
    std::vector<double> e(x.begin(), x.end());
    for (int pass = 0; pass < 2; ++pass) {
        double m = mean_of(e);
        for (double& v : e) v -= m;
    }
    return e;
}

double lrv_of_demeaned(std::span<const double> e, int bandwidth) {
    const auto n = static_cast<std::ptrdiff_t>(e.size());
    double s2 = 0.0;
    for (double v : e) s2 += v * v;
    s2 /= static_cast<double>(n);
    for (int j = 1; j <= bandwidth; ++j) {
        double g = 0.0;
        for (std::ptrdiff_t t = j; t < n; ++t) g += e[t] * e[t - j];
        g /= static_cast<double>(n);
        s2 += 2.0 * (1.0 - static_cast<double>(j) / (bandwidth + 1.0)) * g;
    }
    if (!(s2 > 0.0)) {
        fail(ErrorCode::numeric, "degenerate long-run variance (<= 0)");
    }
    return s2;
}

}  // namespace

std::span<const KpssCritical> kpss_critical_values() { return kCritical; }

int kpss_auto_bandwidth(std::size_t n) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double long_run_variance(std::span<const double> values, int bandwidth) {
    if (values.size() < 2) {
        fail(ErrorCode::invalid_argument, "long-run variance requires at least 2 observations");
    }
    if (bandwidth < 0 || static_cast<std::size_t>(bandwidth) >= values.size()) {
        fail(ErrorCode::invalid_argument, "bandwidth must lie in [0, T)");
    }
    return lrv_of_demeaned(demeaned(values), bandwidth);
}

double long_run_variance(const TimeSeries& series, int bandwidth) {
    if (bandwidth < 0) bandwidth = kpss_auto_bandwidth(series.size());
    return long_run_variance(series.view(), bandwidth);
}

double kpss_statistic(const TimeSeries& series, const KpssConfig& config) {
    const auto n = series.size();
    if (n < 10) {
        fail(ErrorCode::invalid_argument, "KPSS requires at least 10 observations");
    }
    const int bandwidth =
        config.bandwidth < 0 ? kpss_auto_bandwidth(n) : config.bandwidth;
    if (static_cast<std::size_t>(bandwidth) >= n) {
        fail(ErrorCode::invalid_argument, "bandwidth must lie in [0, T)");
    }
    const auto e = demeaned(series.view());
    const double s2 = lrv_of_demeaned(e, bandwidth);

    double partial = 0.0;
    double num = 0.0;
    for (double v : e) {
        partial += v;
        num += partial * partial;
    }
    const auto nd = static_cast<double>(n);
    return num / (s2 * nd * nd);
}

KpssDecision kpss_decision(double statistic, double alpha) {
    const KpssCritical* row = nullptr;
    for (const auto& c : kCritical) {
        if (std::abs(c.alpha - alpha) < 1e-9) row = &c;
    }
    if (row == nullptr) {
        fail(ErrorCode::invalid_argument,
             "KPSS alpha must be one of 0.10, 0.05, 0.025, 0.01");
    }

    KpssDecision d;
    d.reject = statistic > row->value;
    // Bracket the p-value between adjacent tabulated levels.
    d.p_lower = 0.0;
    d.p_upper = kCritical.back().alpha;  // statistic above every critical value
    for (std::size_t i = 0; i < kCritical.size(); ++i) {
        if (statistic <= kCritical[i].value) {
            d.p_lower = kCritical[i].alpha;
            d.p_upper = i == 0 ? 1.0 : kCritical[i - 1].alpha;
            break;
        }
    }
    return d;
}

TestResult kpss_test(const TimeSeries& series, const KpssConfig& config) {
    const int bandwidth =
        config.bandwidth < 0 ? kpss_auto_bandwidth(series.size()) : config.bandwidth;
    const double stat = kpss_statistic(series, config);
    const KpssDecision d = kpss_decision(stat, config.alpha);

    TestResult r;
    r.test_name = "KPSS";
    r.statistic = stat;
    r.p_lower = d.p_lower;
    r.p_upper = d.p_upper;
    r.alpha = config.alpha;
    r.reject = d.reject;
    r.bandwidth = bandwidth;
    r.preprocessing = series.preprocessing_log();
    return r;
}

}  // namespace phr
