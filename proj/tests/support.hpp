#pragma once

// Test-only helpers: random signal generators and brute-force oracles that
// never touch the library's evaluation paths.

#include "macdop/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace macdop::testing {

inline std::vector<double> uniform_values(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) {
        x = dist(rng);
    }
    return v;
}

inline UniformSignal random_signal(std::size_t n, std::uint64_t seed, double dt = 1.0) {
    return {0.0, dt, uniform_values(n, seed)};
}

inline UniformSignal ramp(std::size_t n, double slope = 1.0, double dt = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = slope * static_cast<double>(i);
    }
    return {0.0, dt, std::move(v)};
}

inline UniformSignal constant(std::size_t n, double c, double dt = 1.0) {
    return {0.0, dt, std::vector<double>(n, c)};
}

/// Plain left-to-right mean of values[i-k+1 .. i].
inline double oracle_mean(std::vector<double> const& v, std::size_t i, std::size_t k) {
    long double acc = 0.0L;
    for (std::size_t j = i + 1 - k; j <= i; ++j) {
        acc += v[j];
    }
    return static_cast<double>(acc / static_cast<long double>(k));
}

/// Naive convolution y[i] = sum_j w[j] x[i - o[j]] at one index.
inline double oracle_convolve(std::vector<double> const& x, std::vector<long> const& offsets,
                              std::vector<double> const& weights, std::size_t i) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        acc += static_cast<long double>(weights[j]) * x[static_cast<std::size_t>(static_cast<long>(i) - offsets[j])];
    }
    return static_cast<double>(acc);
}

/// Sampled value of `s` at input index `i` of a signal starting at t0 = 0.
inline double at_index(UniformSignal const& s, std::size_t i) {
    auto v = s.at(static_cast<double>(i) * s.dt());
    if (!v) {
        throw std::out_of_range("no sample at index " + std::to_string(i));
    }
    return *v;
}

} // namespace macdop::testing
