#pragma once

#include "macdop/expansion.hpp"
#include "macdop/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace macdop {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    void reset(double value = 0.0) noexcept {
        sum_ = value;
        compensation_ = 0.0;
    }
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Online MACD, R_a - R_{2a}, at O(1) cost per sample for any window.
///
/// Keeps the last 2k samples in a ring and slides two compensated sums over
/// it. Every `resum_interval` pushes both sums are rebuilt from the ring so
/// rounding drift cannot accumulate on unbounded streams. Values are stored
/// relative to the first sample seen, which keeps constant streams exact.
///
/// Single writer; move it between threads freely but do not share it.
class MacdStream {
public:
    static constexpr std::uint64_t resum_interval = std::uint64_t{1} << 20;

    explicit MacdStream(WindowSpec a);

    /// Emits the MACD value once 2k samples have been seen. A non-finite
    /// sample throws std::invalid_argument and leaves the state untouched.
    std::optional<double> push(double sample);

    std::uint64_t samples_seen() const noexcept { return seen_; }
    WindowSpec const& config() const noexcept { return config_; }

    /// Largest gap between a running sum and a fresh re-summation of the ring.
    double sum_drift() const;

private:
    void resum() noexcept;

    WindowSpec config_;
    std::vector<double> ring_; // last 2k deviations, oldest overwritten first
    std::size_t head_ = 0;     // slot of the next write
    CompensatedSum short_sum_;
    CompensatedSum long_sum_;
    double shift_ = 0.0;
    std::uint64_t seen_ = 0;
};

/// Online n-term expansion of R_a - R_{a+b}, a = n*b, at O(n) cost per sample.
///
/// Slides one compensated sum of width b and keeps a history of the last
/// n*b + 1 window averages; each output combines n differences of that
/// history.
class ExpansionStream {
public:
    static constexpr std::uint64_t resum_interval = MacdStream::resum_interval;

    explicit ExpansionStream(ExpansionSpec spec);

    /// Emits once (n+1)*b.k samples have been seen.
    std::optional<double> push(double sample);

    std::uint64_t samples_seen() const noexcept { return seen_; }
    ExpansionSpec const& spec() const noexcept { return spec_; }

private:
    ExpansionSpec spec_;
    std::vector<double> raw_;      // last b.k deviations
    std::vector<double> averages_; // last n*b.k + 1 window averages (deviations)
    std::size_t raw_head_ = 0;
    std::size_t avg_head_ = 0;
    CompensatedSum window_sum_;
    std::vector<double> term_weights_; // w_i / 2
    double shift_ = 0.0;
    std::uint64_t seen_ = 0;
};

} // namespace macdop
