#pragma once

#include <cstdint>
#include <random>

namespace phr {

// SplitMix64 finalizer (Vigna/Steele et al.); bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Derive the seed of an independent substream from (base, key). Replication
// r of a Monte Carlo run uses derive_seed(base_seed, r); a generator that
// needs several internal streams hangs one more level below with fixed keys.
// Two streams with different keys never share state.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t key) noexcept;

// mt19937_64 plus hand-rolled variate transforms. The engine's output is
// pinned bit-for-bit by the standard; the transforms are written out here
// so results do not depend on the C++ runtime's <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53 random bits.
    double uniform();

    // Standard normal via Box-Muller; the sine mate is cached.
    double gaussian();

    // Student-t with df degrees of freedom, Bailey's polar method.
    // Raw (unstandardized) t: variance df/(df-2) for df > 2.
    double student_t(int df);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace phr
