#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rng.hpp"
#include "timeseries.hpp"

namespace phr {

enum class Distribution { normal, student_t };

// Innovation process u(t) = rho u(t-1) + v(t) with v i.i.d. normal or
// Student-t (df in {3, 5, 10, 15}, raw/unstandardized). rho != 0 discards a
// 100-sample burn-in started at zero; rho = 0 returns the raw draws.
struct InnovationSpec {
    Distribution distribution = Distribution::normal;
    int df = 0;  // only meaningful for student_t
    double rho = 0.0;
    std::uint64_t seed = 0;
};

enum class VariancePattern { constant, single_break, smooth_transition, piecewise_linear };

// Variance path sigma_t^2 over normalized time tau = t/T, t = 1..T.
// sigma1 = c * sigma0 throughout.
//   single_break:      sigma0^2 jumps to sigma1^2 at tau >= m
//   smooth_transition: sigma0^2 + (sigma1^2 - sigma0^2) W(tau),
//                      W(tau) = 1 / (1 + exp(-gamma (tau - m) * 20))
//   piecewise_linear:  sigma_t rises linearly from sigma0 at tau = m to
//                      sigma1 at tau = 1 (constant before m)
struct VarianceProfile {
    VariancePattern pattern = VariancePattern::constant;
    double m = 0.0;       // change point as a fraction of the sample, [0, 1)
    double c = 1.0;       // scale of the shift, > 0
    double gamma = 10.0;  // smooth-transition steepness
    double sigma0 = 1.0;
};

enum class DgpKind { stationary, unit_root_mixture, dgp1, dgp2 };

// x = u                                   (stationary)
// x(t) = lambda sum_{j<=t} w(j) + u(t)    (unit_root_mixture; w i.i.d. from
//                                          the same distribution, own stream)
// x(t) = sigma_t u(t)                     (dgp1)
// x(t) = x(t-1) + sigma_t u(t), x(0) = 0  (dgp2)
struct DgpSpec {
    DgpKind kind = DgpKind::stationary;
    int length = 0;  // T
    double lambda = 0.0;
    InnovationSpec innovations;
    VarianceProfile variance;
    std::uint64_t seed = 0;
};

void validate(const InnovationSpec& spec);
void validate(const VarianceProfile& profile);
void validate(const DgpSpec& spec);

std::vector<double> gen_innovations(const InnovationSpec& spec, int length);

std::vector<double> variance_profile(const VarianceProfile& profile, int length);

TimeSeries gen_series(const DgpSpec& spec);

std::string to_string(Distribution d);
std::string to_string(VariancePattern p);
std::string to_string(DgpKind k);
Distribution distribution_from_string(const std::string& s);
VariancePattern pattern_from_string(const std::string& s);
DgpKind kind_from_string(const std::string& s);

}  // namespace phr
