#pragma once

#include "macdop/signal.hpp"

#include <cstddef>
#include <vector>

namespace macdop {

// Moving-average operators on uniformly sampled signals.
//
// Every operator returns only the samples whose windows are fully covered by
// input; the output t0 is moved so that each output sample keeps the time
// stamp of the input sample it is anchored to. Nothing is padded.

/// Mean of the k most recent samples, anchored at the newest one.
/// Output length is n - k + 1, starting at input index k - 1.
UniformSignal right_avg(UniformSignal const& signal, WindowSpec const& w);

/// Prefix sums of one signal, built once and shared by any number of
/// right_avg windows over it. Holds a reference; the signal must outlive it.
class RunningAverages {
public:
    explicit RunningAverages(UniformSignal const& signal);

    UniformSignal right_avg(WindowSpec const& w) const;

    /// Mean of the k samples ending at input index `last`. Unchecked.
    double mean(std::size_t last, std::size_t k) const noexcept {
        double const range = (hi_[last + 1] - hi_[last + 1 - k]) + (lo_[last + 1] - lo_[last + 1 - k]);
        return shift_ + range / static_cast<double>(k);
    }

private:
    UniformSignal const& signal_;
    double shift_;
    std::vector<double> hi_;
    std::vector<double> lo_;
};

/// Symmetric average: right_avg shifted forward by k/2 samples. k must be even.
UniformSignal centered_avg(UniformSignal const& signal, WindowSpec const& w);

/// right_avg applied twice with the same window (triangular kernel, span 2k-1).
UniformSignal double_right_avg(UniformSignal const& signal, WindowSpec const& w);

/// right_avg(k) - right_avg(2k), defined from input index 2k - 1.
UniformSignal macd(UniformSignal const& signal, WindowSpec const& a);

/// Output at index i reads input index i - lag. The last `lag` inputs fall
/// off the end of the original grid and are dropped.
UniformSignal delay(UniformSignal const& signal, std::size_t lag_samples);

/// (f(i) - f(i-k)) / (k*dt): the exact derivative of a length-k running
/// average of f, evaluated at sample resolution.
UniformSignal windowed_derivative(UniformSignal const& signal, WindowSpec const& w);

/// Pointwise a - b over the time range the two signals share.
UniformSignal difference(UniformSignal const& a, UniformSignal const& b);

/// Pointwise a + b over the time range the two signals share.
UniformSignal sum(UniformSignal const& a, UniformSignal const& b);

UniformSignal scale(UniformSignal const& signal, double factor);

} // namespace macdop
