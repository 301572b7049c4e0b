#pragma once

#include <complex>
#include <span>
#include <vector>

#include "timeseries.hpp"

namespace phr {

// Partition of a length-T series into P = floor(T/L) complete frames of
// even length L; a trailing partial frame is discarded.
struct FramePlan {
    int frame_length = 0;      // L
    int frame_count = 0;       // P
    std::size_t total_used = 0;  // L * P
};

struct FrequencyPair {
    int k1 = 0;
    int k2 = 0;

    friend bool operator==(const FrequencyPair&, const FrequencyPair&) = default;
};

FramePlan partition_frames(const TimeSeries& series, int frame_length);

std::span<const double> frame_view(const TimeSeries& series, const FramePlan& plan,
                                   int frame_index);

// Direct O(L^2) transform with a precomputed twiddle table. X(k) =
// sum_t x(t) exp(-i 2 pi k t / L) for k = 0..L-1; every bin is computed
// independently so conjugate symmetry is a property of the result, not of
// the construction.
class DftPlan {
public:
    explicit DftPlan(int length);

    int length() const noexcept { return length_; }

    std::vector<std::complex<double>> transform(std::span<const double> frame) const;

private:
    int length_;
    std::vector<std::complex<double>> twiddles_;  // exp(-i 2 pi j / L)
};

std::vector<std::complex<double>> dft_frame(std::span<const double> frame, int length);

// All (k1, k2) with 0 < k1 <= L/2, -k1 < k2 <= k1 and (k1 + k2) mod L != 0,
// in lexicographic order. The count is L^2/4 + L/2 - 1.
std::vector<FrequencyPair> principal_domain(int frame_length);

bool in_principal_domain(FrequencyPair pair, int frame_length);

// S_p(k) = |X_p(k)|^2 / L for k = 0..L/2.
std::vector<double> frame_spectrum(std::span<const std::complex<double>> dft);

// K_p(k1, k2) = X_p(k1) X_p(k2) / L with X(-k) = conj(X(k)).
std::vector<std::complex<double>> frame_cumulant(std::span<const std::complex<double>> dft,
                                                 std::span<const FrequencyPair> pairs);

// Frame-averaged spectrum and cumulant spectrum over the principal domain.
struct CumulantGrid {
    FramePlan plan;
    std::vector<FrequencyPair> pairs;            // lexicographic
    std::vector<std::complex<double>> k_hat;     // one per pair
    std::vector<double> s_hat;                   // k = 0..L/2; S(-k) = S(k)
};

// Plain mean over frames of per-frame spectra and cumulants, in frame order.
CumulantGrid average_estimates(const std::vector<std::vector<double>>& frame_spectra,
                               const std::vector<std::vector<std::complex<double>>>& frame_cumulants,
                               std::vector<FrequencyPair> pairs, const FramePlan& plan);

// Whole estimation front end: partition, per-frame DFT, spectra, cumulants,
// average. Frames are accumulated in index order so the result is
// bit-stable regardless of caller threading.
CumulantGrid cumulant_grid(const TimeSeries& series, int frame_length);

// Nearest even integer to sqrt(T), clamped to [4, largest even <= T/2].
int default_frame_length(std::size_t series_length);

}  // namespace phr
