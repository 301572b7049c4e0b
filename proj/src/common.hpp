#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace phr {

// Error taxonomy shared by the whole library. The C API and the CLI map
// these onto status/exit codes, so the category of a failure is part of
// the contract, not just the message.
enum class ErrorCode {
    invalid_argument = 1,  // bad parameters, contract violations
    io = 2,                // file system problems
    parse = 3,             // malformed CSV/JSON input
    numeric = 4,           // degenerate data (zero variance, zero spectrum, ...)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

// Neumaier-compensated summation; error stays O(eps) in the result
// independent of length. Used wherever a mean feeds a tolerance contract.
inline double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

inline double mean_of(std::span<const double> values) {
    return compensated_sum(values) / static_cast<double>(values.size());
}

}  // namespace phr
