#include "datagen.hpp"

#include <cmath>

namespace phr {

namespace {

constexpr int kBurnIn = 100;

double draw(Rng& rng, const InnovationSpec& spec) {
    return spec.distribution == Distribution::normal ? rng.gaussian()
                                                     : rng.student_t(spec.df);
}

// Substream keys under a DgpSpec seed.
constexpr std::uint64_t kStreamInnovations = 0;
constexpr std::uint64_t kStreamRandomWalk = 1;

std::vector<double> innovations_from(Rng& rng, const InnovationSpec& spec, int length) {
    std::vector<double> u(static_cast<std::size_t>(length));
    if (spec.rho == 0.0) {
        for (auto& v : u) v = draw(rng, spec);
        return u;
    }
    double state = 0.0;
    for (int t = 0; t < kBurnIn; ++t) state = spec.rho * state + draw(rng, spec);
    for (auto& v : u) {
        state = spec.rho * state + draw(rng, spec);
        v = state;
    }
    return u;
}

}  // namespace

void validate(const InnovationSpec& spec) {
    if (!(std::abs(spec.rho) < 1.0)) {
        fail(ErrorCode::invalid_argument, "innovation rho must satisfy |rho| < 1");
    }
    if (spec.distribution == Distribution::student_t && spec.df != 3 && spec.df != 5 &&
        spec.df != 10 && spec.df != 15) {
        fail(ErrorCode::invalid_argument, "t distribution df must be one of 3, 5, 10, 15");
    }
}

void validate(const VarianceProfile& profile) {
    if (!(profile.sigma0 > 0.0)) {
        fail(ErrorCode::invalid_argument, "sigma0 must be positive");
    }
    if (profile.pattern == VariancePattern::constant) return;
    if (!(profile.c > 0.0)) {
        fail(ErrorCode::invalid_argument, "variance shift c must be positive");
    }
    if (!(profile.m >= 0.0 && profile.m < 1.0)) {
        fail(ErrorCode::invalid_argument, "change point m must lie in [0, 1)");
    }
    if (!(profile.gamma > 0.0)) {
        fail(ErrorCode::invalid_argument, "gamma must be positive");
    }
}

void validate(const DgpSpec& spec) {
    if (spec.length < 16) {
        fail(ErrorCode::invalid_argument, "generated series length must be at least 16");
    }
    validate(spec.innovations);
    if (spec.kind == DgpKind::unit_root_mixture && !(spec.lambda >= 0.0)) {
        fail(ErrorCode::invalid_argument, "lambda must be non-negative");
    }
    if (spec.kind == DgpKind::dgp1 || spec.kind == DgpKind::dgp2) {
        validate(spec.variance);
    }
}

std::vector<double> gen_innovations(const InnovationSpec& spec, int length) {
    if (length < 1) {
        fail(ErrorCode::invalid_argument, "innovation length must be positive");
    }
    validate(spec);
    Rng rng(derive_seed(spec.seed, kStreamInnovations));
    return innovations_from(rng, spec, length);
}

std::vector<double> variance_profile(const VarianceProfile& profile, int length) {
    if (length < 2) {
        fail(ErrorCode::invalid_argument, "variance profile length must be at least 2");
    }
    validate(profile);
    const double s0 = profile.sigma0 * profile.sigma0;
    const double s1 = (profile.c * profile.sigma0) * (profile.c * profile.sigma0);

    std::vector<double> out(static_cast<std::size_t>(length));
    for (int t = 1; t <= length; ++t) {
        const double tau = static_cast<double>(t) / static_cast<double>(length);
        double v = s0;
        switch (profile.pattern) {
            case VariancePattern::constant:
                break;
            case VariancePattern::single_break:
                if (tau >= profile.m) v = s1;
                break;
            case VariancePattern::smooth_transition: {
                // Logistic over normalized time; the factor 20 sets the
                // steepness on the fraction axis.
                double w = 1.0 / (1.0 + std::exp(-profile.gamma * (tau - profile.m) * 20.0));
                v = s0 + (s1 - s0) * w;
                break;
            }
            case VariancePattern::piecewise_linear:
                if (tau >= profile.m) {
                    // sigma itself ramps linearly from sigma0 to c*sigma0.
                    double sig = profile.sigma0 +
                                 (profile.c - 1.0) * profile.sigma0 * (tau - profile.m) /
                                     (1.0 - profile.m);
                    v = sig * sig;
                }
                break;
        }
        out[static_cast<std::size_t>(t - 1)] = v;
    }
    return out;
}

TimeSeries gen_series(const DgpSpec& spec) {
    validate(spec);
    const InnovationSpec& innov = spec.innovations;
    Rng u_rng(derive_seed(spec.seed, kStreamInnovations));
    std::vector<double> x = innovations_from(u_rng, innov, spec.length);

    switch (spec.kind) {
        case DgpKind::stationary:
            break;
        case DgpKind::unit_root_mixture: {
            Rng w_rng(derive_seed(spec.seed, kStreamRandomWalk));
            double walk = 0.0;
            for (auto& v : x) {
                walk += draw(w_rng, innov);
                v = spec.lambda * walk + v;
            }
            break;
        }
        case DgpKind::dgp1: {
            const auto s2 = variance_profile(spec.variance, spec.length);
            for (std::size_t t = 0; t < x.size(); ++t) x[t] = std::sqrt(s2[t]) * x[t];
            break;
        }
        case DgpKind::dgp2: {
            const auto s2 = variance_profile(spec.variance, spec.length);
            double level = 0.0;
            for (std::size_t t = 0; t < x.size(); ++t) {
                level += std::sqrt(s2[t]) * x[t];
                x[t] = level;
            }
            break;
        }
    }
    return TimeSeries(std::move(x));
}

std::string to_string(Distribution d) {
    return d == Distribution::normal ? "normal" : "t";
}

std::string to_string(VariancePattern p) {
    switch (p) {
        case VariancePattern::constant: return "constant";
        case VariancePattern::single_break: return "single_break";
        case VariancePattern::smooth_transition: return "smooth_transition";
        case VariancePattern::piecewise_linear: return "piecewise_linear";
    }
    return "constant";
}

std::string to_string(DgpKind k) {
    switch (k) {
        case DgpKind::stationary: return "stationary";
        case DgpKind::unit_root_mixture: return "unit_root_mixture";
        case DgpKind::dgp1: return "dgp1";
        case DgpKind::dgp2: return "dgp2";
    }
    return "stationary";
}

Distribution distribution_from_string(const std::string& s) {
    if (s == "normal") return Distribution::normal;
    if (s == "t" || s == "student_t") return Distribution::student_t;
    fail(ErrorCode::parse, "unknown distribution '" + s + "'");
}

VariancePattern pattern_from_string(const std::string& s) {
    if (s == "constant") return VariancePattern::constant;
    if (s == "single_break") return VariancePattern::single_break;
    if (s == "smooth_transition") return VariancePattern::smooth_transition;
    if (s == "piecewise_linear") return VariancePattern::piecewise_linear;
    fail(ErrorCode::parse, "unknown variance pattern '" + s + "'");
}

DgpKind kind_from_string(const std::string& s) {
    if (s == "stationary") return DgpKind::stationary;
    if (s == "unit_root_mixture") return DgpKind::unit_root_mixture;
    if (s == "dgp1") return DgpKind::dgp1;
    if (s == "dgp2") return DgpKind::dgp2;
    fail(ErrorCode::parse, "unknown DGP kind '" + s + "'");
}

}  // namespace phr
