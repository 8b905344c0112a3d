#include "macdop/operators.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace macdop {

namespace {

void require_samples(char const* op, UniformSignal const& s, std::size_t required) {
    if (s.size() < required) {
        throw InsufficientSamples(op, required, s.size());
    }
}

template <typename Fn>
UniformSignal combine(UniformSignal const& a, UniformSignal const& b, Fn fn) {
    long const off = grid_offset(a, b);
    // Overlap expressed in a's indices.
    long const first = std::max(0L, off);
    long const last = std::min(static_cast<long>(a.size()), off + static_cast<long>(b.size()));
    if (last <= first) {
        throw std::invalid_argument("signals do not overlap in time");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(last - first));
    for (long i = first; i < last; ++i) {
        out.push_back(fn(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i - off)]));
    }
    return {a.time(static_cast<std::size_t>(first)), a.dt(), std::move(out)};
}

} // namespace

// Prefix sums are carried as an unevaluated hi + lo pair: hi is the plain
// running sum and lo accumulates the exact rounding error of every addition,
// so a window sum taken as a difference of two prefixes keeps full double
// precision no matter how long the signal is. Summing deviations from the
// first sample keeps constant inputs exact and removes a large common offset.
RunningAverages::RunningAverages(UniformSignal const& signal)
    : signal_(signal), shift_(signal[0]), hi_(signal.size() + 1), lo_(signal.size() + 1) {
    double hi = 0.0;
    double lo = 0.0;
    auto const values = signal.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        double const x = values[i] - shift_;
        double const s = hi + x;
        double const bb = s - hi;
        lo += (hi - (s - bb)) + (x - bb);
        hi = s;
        hi_[i + 1] = hi;
        lo_[i + 1] = lo;
    }
}

UniformSignal RunningAverages::right_avg(WindowSpec const& w) const {
    w.require_compatible(signal_);
    std::size_t const k = w.k();
    require_samples("right_avg", signal_, k);
    std::size_t const n_out = signal_.size() - k + 1;
    std::vector<double> out(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        out[j] = mean(j + k - 1, k);
    }
    return {signal_.time(k - 1), signal_.dt(), std::move(out)};
}

UniformSignal right_avg(UniformSignal const& signal, WindowSpec const& w) {
    w.require_compatible(signal);
    require_samples("right_avg", signal, w.k());
    return RunningAverages(signal).right_avg(w);
}

UniformSignal centered_avg(UniformSignal const& signal, WindowSpec const& w) {
    if (w.k() % 2 != 0) {
        throw std::invalid_argument("centered window must have even sample count (got k=" +
                                    std::to_string(w.k()) + ")");
    }
    require_samples("centered_avg", signal, w.k());
    UniformSignal avg = right_avg(signal, w);
    double const half = static_cast<double>(w.k() / 2) * signal.dt();
    std::vector<double> values(avg.values().begin(), avg.values().end());
    return {avg.t0() - half, avg.dt(), std::move(values)};
}

UniformSignal double_right_avg(UniformSignal const& signal, WindowSpec const& w) {
    require_samples("double_right_avg", signal, 2 * w.k() - 1);
    return right_avg(right_avg(signal, w), w);
}

UniformSignal macd(UniformSignal const& signal, WindowSpec const& a) {
    require_samples("macd", signal, 2 * a.k());
    WindowSpec const twice(2 * a.k(), a.dt());
    RunningAverages const avg(signal);
    return difference(avg.right_avg(a), avg.right_avg(twice));
}

UniformSignal delay(UniformSignal const& signal, std::size_t lag_samples) {
    if (lag_samples >= signal.size()) {
        throw std::invalid_argument("delay of " + std::to_string(lag_samples) +
                                    " samples needs a longer signal (length " + std::to_string(signal.size()) +
                                    ")");
    }
    std::vector<double> values(signal.values().begin(), signal.values().end() - static_cast<long>(lag_samples));
    return {signal.time(lag_samples), signal.dt(), std::move(values)};
}

UniformSignal windowed_derivative(UniformSignal const& signal, WindowSpec const& w) {
    w.require_compatible(signal);
    std::size_t const k = w.k();
    require_samples("windowed_derivative", signal, k + 1);
    double const span = static_cast<double>(k) * signal.dt();
    std::vector<double> out(signal.size() - k);
    for (std::size_t i = k; i < signal.size(); ++i) {
        out[i - k] = (signal[i] - signal[i - k]) / span;
    }
    return {signal.time(k), signal.dt(), std::move(out)};
}

UniformSignal difference(UniformSignal const& a, UniformSignal const& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}

UniformSignal sum(UniformSignal const& a, UniformSignal const& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}

UniformSignal scale(UniformSignal const& signal, double factor) {
    std::vector<double> out(signal.values().begin(), signal.values().end());
    for (double& v : out) {
        v *= factor;
    }
    return {signal.t0(), signal.dt(), std::move(out)};
}

} // namespace macdop
