#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace phr {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t key) noexcept {
    return mix64(base ^ mix64(key ^ 0xA0761D6478BD642FULL));
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

double Rng::student_t(int df) {
    // Radius r with r^2 = df * (u^(-2/df) - 1) and a uniform angle gives a
    // t(df) marginal; reduces to Box-Muller as df -> infinity. The sine mate
    // is not independent of the cosine one, so nothing is cached.
    double u = 1.0 - uniform();
    double v = uniform();
    double r = std::sqrt(static_cast<double>(df) *
                         (std::pow(u, -2.0 / static_cast<double>(df)) - 1.0));
    return r * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace phr
