#include "timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace phr {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void check_finite(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            fail(ErrorCode::invalid_argument,
                 "time series value at index " + std::to_string(i) + " is not finite");
        }
    }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values, double sampling_interval,
                       std::vector<std::string> preprocessing_log)
    : values_(std::move(values)),
      sampling_interval_(sampling_interval),
      preprocessing_log_(std::move(preprocessing_log)) {
    if (values_.empty()) {
        fail(ErrorCode::invalid_argument, "time series must contain at least one value");
    }
    if (!(sampling_interval_ > 0.0)) {
        fail(ErrorCode::invalid_argument, "sampling interval must be positive");
    }
    check_finite(values_);
}

TimeSeries TimeSeries::derive(std::vector<double> new_values, std::string log_entry) const {
    auto log = preprocessing_log_;
    log.push_back(std::move(log_entry));
    return TimeSeries(std::move(new_values), sampling_interval_, std::move(log));
}

ArModel::ArModel(int order_in, std::vector<double> coefficients_in, double residual_variance_in)
    : order(order_in),
      coefficients(std::move(coefficients_in)),
      residual_variance(residual_variance_in) {
    if (order < 0 || coefficients.size() != static_cast<std::size_t>(order)) {
        fail(ErrorCode::invalid_argument, "AR coefficient count must equal the order");
    }
    if (!(residual_variance > 0.0)) {
        fail(ErrorCode::invalid_argument, "AR residual variance must be positive");
    }
    if (!is_causal(coefficients)) {
        fail(ErrorCode::numeric, "fitted AR model is not causal");
    }
}

bool is_causal(std::span<const double> coefficients) {
    // Step-down (Schur-Cohn) recursion: all reflection coefficients must
    // have magnitude below one.
    std::vector<double> a(coefficients.begin(), coefficients.end());
    for (std::size_t p = a.size(); p > 0; --p) {
        double kappa = a[p - 1];
        if (!(std::abs(kappa) < 1.0)) return false;
        double denom = 1.0 - kappa * kappa;
        std::vector<double> b(p - 1);
        for (std::size_t i = 0; i + 1 < p; ++i) {
            b[i] = (a[i] + kappa * a[p - 2 - i]) / denom;
        }
        a = std::move(b);
    }
    return true;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.empty()) cells.emplace_back();
    return cells;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool all_empty(const std::vector<std::string>& cells) {
    return std::all_of(cells.begin(), cells.end(),
                       [](const std::string& c) { return strip(c).empty(); });
}

bool is_index(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

}  // namespace

TimeSeries load_csv(const std::string& path, const std::string& column, bool skip_header) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::io, "cannot open input file: " + path);
    }

    const bool by_name = !is_index(column);
    const bool expect_header = skip_header || by_name;
    std::size_t column_index = by_name ? 0 : std::stoul(column);

    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        auto cells = split_csv_line(line);
        if (all_empty(cells)) continue;

        if (expect_header && !header_seen) {
            header_seen = true;
            if (by_name) {
                auto it = std::find_if(cells.begin(), cells.end(), [&](const std::string& c) {
                    return strip(c) == column;
                });
                if (it == cells.end()) {
                    fail(ErrorCode::parse, "column '" + column + "' not found in header of " + path);
                }
                column_index = static_cast<std::size_t>(it - cells.begin());
            }
            continue;
        }

        if (column_index >= cells.size()) {
            fail(ErrorCode::parse, "row " + std::to_string(line_no) + ": missing column " +
                                       std::to_string(column_index));
        }
        std::string cell = strip(cells[column_index]);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
            fail(ErrorCode::parse, "row " + std::to_string(line_no) + ": cannot parse '" + cell +
                                       "' as a number");
        }
        values.push_back(v);
    }

    if (values.empty()) {
        fail(ErrorCode::parse, "no numeric data rows in " + path);
    }
    return TimeSeries(std::move(values));
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

TimeSeries log_returns(const TimeSeries& prices) {
    const auto& p = prices.values();
    if (p.size() < 2) {
        fail(ErrorCode::invalid_argument, "log returns require at least 2 prices");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0)) {
            fail(ErrorCode::invalid_argument,
                 "non-positive price at index " + std::to_string(i));
        }
    }
    std::vector<double> r(p.size() - 1);
    for (std::size_t t = 0; t + 1 < p.size(); ++t) {
        r[t] = std::log(p[t + 1]) - std::log(p[t]);
    }
    return prices.derive(std::move(r), "log_returns");
}

TimeSeries trim(const TimeSeries& series, double fraction) {
    if (!(fraction >= 0.0 && fraction < 0.5)) {
        fail(ErrorCode::invalid_argument,
             "trim fraction must be in [0, 0.5), got " + format_double(fraction));
    }
    const auto& x = series.values();
    const std::size_t n = x.size();
    const auto k = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(n) + 1e-9));
    const std::string tag = "trim(" + format_double(fraction) + ")";
    if (k == 0) {
        return series.derive(x, tag);
    }
    if (n < 2 * k + 1) {
        fail(ErrorCode::invalid_argument, "trim would remove every observation");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<char> removed(n, 0);

    // k smallest, ties broken by earliest index
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] != x[b] ? x[a] < x[b] : a < b;
    });
    for (std::size_t i = 0; i < k; ++i) removed[order[i]] = 1;

    // k largest among the rest, same tie rule
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] != x[b] ? x[a] > x[b] : a < b;
    });
    std::size_t taken = 0;
    for (std::size_t i = 0; i < n && taken < k; ++i) {
        if (!removed[order[i]]) {
            removed[order[i]] = 1;
            ++taken;
        }
    }

    std::vector<double> out;
    out.reserve(n - 2 * k);
    for (std::size_t i = 0; i < n; ++i) {
        if (!removed[i]) out.push_back(x[i]);
    }
    return series.derive(std::move(out), tag);
}

TimeSeries demean(const TimeSeries& series) {
    std::vector<double> v = series.values();
    // Two passes: the second removes the rounding residue of the first.
    for (int pass = 0; pass < 2; ++pass) {
        double m = mean_of(v);
        for (double& x : v) x -= m;
    }
    return series.derive(std::move(v), "demean");
}

TimeSeries detrend(const TimeSeries& series) {
    std::vector<double> v = series.values();
    const std::size_t n = v.size();
    if (n < 2) {
        fail(ErrorCode::invalid_argument, "detrend requires at least 2 observations");
    }
    const double t_bar = 0.5 * static_cast<double>(n - 1);
    double sxx = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double tc = static_cast<double>(t) - t_bar;
        sxx += tc * tc;
    }
    // Fit on centered time; one refinement pass removes rounding residue.
    for (int pass = 0; pass < 2; ++pass) {
        double a = mean_of(v);
        double sxy = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            sxy += (static_cast<double>(t) - t_bar) * (v[t] - a);
        }
        double b = sxy / sxx;
        for (std::size_t t = 0; t < n; ++t) {
            v[t] -= a + b * (static_cast<double>(t) - t_bar);
        }
    }
    return series.derive(std::move(v), "detrend");
}

std::pair<TimeSeries, ArModel> prewhiten(const TimeSeries& series, int max_order) {
    if (max_order < 0) {
        fail(ErrorCode::invalid_argument, "prewhiten max_order must be non-negative");
    }
    const auto& x = series.values();
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    if (n < 10 * std::max(1, max_order)) {
        fail(ErrorCode::invalid_argument,
             "series too short to fit AR(" + std::to_string(max_order) + "): need at least " +
                 std::to_string(10 * std::max(1, max_order)) + " observations");
    }

    // Sample autocovariances about the mean, 1/T denominator.
    const double m = mean_of(x);
    std::vector<double> gamma(static_cast<std::size_t>(max_order) + 1, 0.0);
    for (int j = 0; j <= max_order; ++j) {
        double s = 0.0;
        for (std::ptrdiff_t t = j; t < n; ++t) {
            s += (x[t] - m) * (x[t - j] - m);
        }
        gamma[j] = s / static_cast<double>(n);
    }
    if (!(gamma[0] > 0.0)) {
        fail(ErrorCode::numeric,
             "non-invertible autocovariance system: series has zero variance");
    }

    // Levinson-Durbin up through max_order, keeping every order's fit.
    std::vector<std::vector<double>> phi_by_order{{}};
    std::vector<double> sigma2_by_order{gamma[0]};
    std::vector<double> phi;
    double sigma2 = gamma[0];
    for (int j = 1; j <= max_order; ++j) {
        double acc = gamma[j];
        for (int i = 1; i < j; ++i) acc -= phi[i - 1] * gamma[j - i];
        double kappa = acc / sigma2;
        if (!std::isfinite(kappa) || std::abs(kappa) >= 1.0) break;
        std::vector<double> next(j);
        for (int i = 1; i < j; ++i) next[i - 1] = phi[i - 1] - kappa * phi[j - i - 1];
        next[j - 1] = kappa;
        sigma2 *= 1.0 - kappa * kappa;
        if (!(sigma2 > 0.0)) break;
        phi = std::move(next);
        phi_by_order.push_back(phi);
        sigma2_by_order.push_back(sigma2);
    }

    // AIC(p) = T ln(sigma2_p) + 2 (p + 1); ties take the smaller order.
    int best = 0;
    double best_aic = 0.0;
    for (std::size_t p = 0; p < sigma2_by_order.size(); ++p) {
        double aic = static_cast<double>(n) * std::log(sigma2_by_order[p]) +
                     2.0 * (static_cast<double>(p) + 1.0);
        if (p == 0 || aic < best_aic) {
            best_aic = aic;
            best = static_cast<int>(p);
        }
    }

    ArModel model(best, phi_by_order[static_cast<std::size_t>(best)],
                  sigma2_by_order[static_cast<std::size_t>(best)]);
    const std::string tag = "prewhiten(ar=" + std::to_string(best) + ")";
    if (best == 0) {
        return {series.derive(x, tag), std::move(model)};
    }
    std::vector<double> resid(static_cast<std::size_t>(n - best));
    for (std::ptrdiff_t t = best; t < n; ++t) {
        double v = x[t];
        for (int i = 1; i <= best; ++i) v -= model.coefficients[i - 1] * x[t - i];
        resid[static_cast<std::size_t>(t - best)] = v;
    }
    return {series.derive(std::move(resid), tag), std::move(model)};
}

TimeSeries rolling_variance_standardize(const TimeSeries& series, int window) {
    if (window < 2) {
        fail(ErrorCode::invalid_argument, "rolling window must be at least 2");
    }
    const auto& x = series.values();
    const std::size_t n = x.size();
    const auto w = static_cast<std::size_t>(window);
    if (n < w) {
        fail(ErrorCode::invalid_argument, "series shorter than the rolling window");
    }

    std::vector<double> sd(n, 0.0);
    for (std::size_t t = w - 1; t < n; ++t) {
        std::span<const double> win(x.data() + (t + 1 - w), w);
        double m = mean_of(win);
        double ss = 0.0;
        for (double v : win) ss += (v - m) * (v - m);
        double s = std::sqrt(ss / static_cast<double>(w - 1));
        if (s < 1e-12) {
            fail(ErrorCode::numeric, "degenerate rolling window (zero variance) ending at index " +
                                         std::to_string(t));
        }
        sd[t] = s;
    }
    for (std::size_t t = 0; t + 1 < w; ++t) sd[t] = sd[w - 1];  // left-edge backfill

    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = x[t] / sd[t];
    return series.derive(std::move(out),
                         "rolling_standardize(window=" + std::to_string(window) + ")");
}

DescriptiveStats describe(const TimeSeries& series) {
    const auto& x = series.values();
    const std::size_t n = x.size();
    if (n < 4) {
        fail(ErrorCode::invalid_argument,
             "descriptive statistics require at least 4 observations");
    }
    DescriptiveStats s;
    s.n = n;
    s.mean = mean_of(x);

    std::vector<double> d2(n), d3(n), d4(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = x[i] - s.mean;
        d2[i] = d * d;
        d3[i] = d2[i] * d;
        d4[i] = d2[i] * d2[i];
    }
    double m2 = mean_of(d2);
    double m3 = mean_of(d3);
    double m4 = mean_of(d4);
    if (!(m2 > 0.0)) {
        fail(ErrorCode::numeric, "zero variance: skewness and kurtosis are undefined");
    }
    s.std_dev = std::sqrt(compensated_sum(d2) / static_cast<double>(n - 1));
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    s.min = *mn;
    s.max = *mx;
    return s;
}

}  // namespace phr
