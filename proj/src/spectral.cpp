#include "spectral.hpp"

#include <cmath>
#include <numbers>

namespace phr {

FramePlan partition_frames(const TimeSeries& series, int frame_length) {
    const auto T = series.size();
    if (frame_length < 4) {
        fail(ErrorCode::invalid_argument, "frame length must be at least 4");
    }
    if (frame_length % 2 != 0) {
        fail(ErrorCode::invalid_argument, "frame length must be even");
    }
    const auto L = static_cast<std::size_t>(frame_length);
    const auto P = T / L;
    if (P < 2) {
        fail(ErrorCode::invalid_argument,
             "frame length " + std::to_string(frame_length) + " leaves fewer than 2 complete frames (T=" +
                 std::to_string(T) + ")");
    }
    return FramePlan{frame_length, static_cast<int>(P), L * P};
}

std::span<const double> frame_view(const TimeSeries& series, const FramePlan& plan,
                                   int frame_index) {
    if (frame_index < 0 || frame_index >= plan.frame_count) {
        fail(ErrorCode::invalid_argument, "frame index out of range");
    }
    const auto L = static_cast<std::size_t>(plan.frame_length);
    return {series.values().data() + static_cast<std::size_t>(frame_index) * L, L};
}

DftPlan::DftPlan(int length) : length_(length) {
    if (length < 1) {
        fail(ErrorCode::invalid_argument, "DFT length must be positive");
    }
    twiddles_.resize(static_cast<std::size_t>(length));
    for (int j = 0; j < length; ++j) {
        double angle = -2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(length);
        twiddles_[static_cast<std::size_t>(j)] = {std::cos(angle), std::sin(angle)};
    }
}

std::vector<std::complex<double>> DftPlan::transform(std::span<const double> frame) const {
    if (frame.size() != static_cast<std::size_t>(length_)) {
        fail(ErrorCode::invalid_argument, "frame length does not match the DFT plan");
    }
    const auto L = static_cast<std::size_t>(length_);
    std::vector<std::complex<double>> out(L);
    for (std::size_t k = 0; k < L; ++k) {
        double re = 0.0;
        double im = 0.0;
        std::size_t idx = 0;  // (k * t) mod L, maintained incrementally
        for (std::size_t t = 0; t < L; ++t) {
            const auto& w = twiddles_[idx];
            re += frame[t] * w.real();
            im += frame[t] * w.imag();
            idx += k;
            if (idx >= L) idx -= L;
        }
        out[k] = {re, im};
    }
    return out;
}

std::vector<std::complex<double>> dft_frame(std::span<const double> frame, int length) {
    return DftPlan(length).transform(frame);
}

std::vector<FrequencyPair> principal_domain(int frame_length) {
    if (frame_length < 4 || frame_length % 2 != 0) {
        fail(ErrorCode::invalid_argument, "frame length must be even and at least 4");
    }
    std::vector<FrequencyPair> pairs;
    pairs.reserve(static_cast<std::size_t>(frame_length) * frame_length / 4 +
                  frame_length / 2);
    for (int k1 = 1; k1 <= frame_length / 2; ++k1) {
        for (int k2 = -k1 + 1; k2 <= k1; ++k2) {
            if ((k1 + k2) % frame_length == 0) continue;  // K is 2 S(f1) there, not 0
            pairs.push_back({k1, k2});
        }
    }
    return pairs;
}

bool in_principal_domain(FrequencyPair pair, int frame_length) {
    return pair.k1 > 0 && pair.k1 <= frame_length / 2 && pair.k2 > -pair.k1 &&
           pair.k2 <= pair.k1 && (pair.k1 + pair.k2) % frame_length != 0;
}

std::vector<double> frame_spectrum(std::span<const std::complex<double>> dft) {
    const auto L = dft.size();
    if (L < 2) {
        fail(ErrorCode::invalid_argument, "DFT too short");
    }
    std::vector<double> s(L / 2 + 1);
    for (std::size_t k = 0; k <= L / 2; ++k) {
        s[k] = std::norm(dft[k]) / static_cast<double>(L);
    }
    return s;
}

std::vector<std::complex<double>> frame_cumulant(std::span<const std::complex<double>> dft,
                                                 std::span<const FrequencyPair> pairs) {
    const auto L = static_cast<int>(dft.size());
    std::vector<std::complex<double>> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        if (!in_principal_domain(p, L)) {
            fail(ErrorCode::invalid_argument,
                 "frequency pair (" + std::to_string(p.k1) + ", " + std::to_string(p.k2) +
                     ") is outside the principal domain");
        }
        const auto& x1 = dft[static_cast<std::size_t>(p.k1)];
        std::complex<double> x2 = p.k2 >= 0 ? dft[static_cast<std::size_t>(p.k2)]
                                            : std::conj(dft[static_cast<std::size_t>(-p.k2)]);
        out[i] = x1 * x2 / static_cast<double>(L);
    }
    return out;
}

CumulantGrid average_estimates(const std::vector<std::vector<double>>& frame_spectra,
                               const std::vector<std::vector<std::complex<double>>>& frame_cumulants,
                               std::vector<FrequencyPair> pairs, const FramePlan& plan) {
    const auto P = static_cast<std::size_t>(plan.frame_count);
    const auto n_spec = static_cast<std::size_t>(plan.frame_length) / 2 + 1;
    if (P < 2 || frame_spectra.size() != P || frame_cumulants.size() != P) {
        fail(ErrorCode::invalid_argument, "inconsistent frame count");
    }
    for (std::size_t p = 0; p < P; ++p) {
        if (frame_spectra[p].size() != n_spec || frame_cumulants[p].size() != pairs.size()) {
            fail(ErrorCode::invalid_argument, "inconsistent frame shapes");
        }
    }

    CumulantGrid grid;
    grid.plan = plan;
    grid.pairs = std::move(pairs);
    grid.s_hat.assign(n_spec, 0.0);
    grid.k_hat.assign(grid.pairs.size(), {0.0, 0.0});
    for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t k = 0; k < n_spec; ++k) grid.s_hat[k] += frame_spectra[p][k];
        for (std::size_t i = 0; i < grid.k_hat.size(); ++i) grid.k_hat[i] += frame_cumulants[p][i];
    }
    const double inv_p = 1.0 / static_cast<double>(P);
    for (double& s : grid.s_hat) s *= inv_p;
    for (auto& k : grid.k_hat) k *= inv_p;
    return grid;
}

CumulantGrid cumulant_grid(const TimeSeries& series, int frame_length) {
    const FramePlan plan = partition_frames(series, frame_length);
    auto pairs = principal_domain(frame_length);
    const DftPlan dft(frame_length);

    // Resolve each pair to DFT bin indices once; negative k2 conjugates.
    struct PairIndex {
        std::size_t i1;
        std::size_t i2;
        bool conj2;
    };
    std::vector<PairIndex> lookup(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        lookup[i] = {static_cast<std::size_t>(pairs[i].k1),
                     static_cast<std::size_t>(std::abs(pairs[i].k2)), pairs[i].k2 < 0};
    }

    const auto L = static_cast<std::size_t>(frame_length);
    CumulantGrid grid;
    grid.plan = plan;
    grid.s_hat.assign(L / 2 + 1, 0.0);
    grid.k_hat.assign(pairs.size(), {0.0, 0.0});

    for (int p = 0; p < plan.frame_count; ++p) {
        auto X = dft.transform(frame_view(series, plan, p));
        for (std::size_t k = 0; k <= L / 2; ++k) {
            grid.s_hat[k] += std::norm(X[k]) / static_cast<double>(L);
        }
        for (std::size_t i = 0; i < lookup.size(); ++i) {
            const auto& q = lookup[i];
            std::complex<double> x2 = q.conj2 ? std::conj(X[q.i2]) : X[q.i2];
            grid.k_hat[i] += X[q.i1] * x2 / static_cast<double>(L);
        }
    }
    const double inv_p = 1.0 / static_cast<double>(plan.frame_count);
    for (double& s : grid.s_hat) s *= inv_p;
    for (auto& k : grid.k_hat) k *= inv_p;
    grid.pairs = std::move(pairs);
    return grid;
}

int default_frame_length(std::size_t series_length) {
    long L = 2 * std::lround(std::sqrt(static_cast<double>(series_length)) / 2.0);
    if (L < 4) L = 4;
    const long max_even = static_cast<long>(series_length / 2) & ~1L;
    if (max_even >= 4 && L > max_even) L = max_even;
    return static_cast<int>(L);
}

}  // namespace phr
