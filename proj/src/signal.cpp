#include "macdop/signal.hpp"

#include <cmath>

namespace macdop {

namespace {

std::string insufficient_message(std::string const& what_op, std::size_t required, std::size_t available) {
    return "insufficient samples: " + what_op + " requires at least " + std::to_string(required) +
           " samples, got " + std::to_string(available);
}

// Grid positions are compared in units of dt; anything further than this from
// an integer is treated as off-grid.
constexpr double grid_slack = 1e-6;

} // namespace

InsufficientSamples::InsufficientSamples(std::string const& what_op, std::size_t required, std::size_t available)
    : std::invalid_argument(insufficient_message(what_op, required, available))
    , required_(required)
    , available_(available) {}

UniformSignal::UniformSignal(double t0, double dt, std::vector<double> values)
    : t0_(t0)
    , dt_(dt)
    , values_(std::move(values)) {
    if (!std::isfinite(t0_)) {
        throw std::invalid_argument("signal start time must be finite");
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw std::invalid_argument("signal sample spacing must be finite and > 0");
    }
    if (values_.empty()) {
        throw std::invalid_argument("signal must contain at least one sample");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
        }
    }
}

std::optional<std::size_t> UniformSignal::index_at(double t) const noexcept {
    double const pos = (t - t0_) / dt_;
    double const rounded = std::round(pos);
    if (std::abs(pos - rounded) > grid_slack || rounded < 0.0 ||
        rounded >= static_cast<double>(values_.size())) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(rounded);
}

std::optional<double> UniformSignal::at(double t) const noexcept {
    if (auto i = index_at(t)) {
        return values_[*i];
    }
    return std::nullopt;
}

WindowSpec::WindowSpec(std::size_t k, double dt)
    : k_(k)
    , length_(static_cast<double>(k) * dt) {
    if (k_ == 0) {
        throw std::invalid_argument("window must span at least one sample");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("window sample spacing must be finite and > 0");
    }
}

void WindowSpec::require_compatible(UniformSignal const& s) const {
    if (std::abs(dt() - s.dt()) > 1e-12 * s.dt()) {
        throw std::invalid_argument("window was built for dt=" + std::to_string(dt()) +
                                    " but signal has dt=" + std::to_string(s.dt()));
    }
}

long grid_offset(UniformSignal const& a, UniformSignal const& b) {
    if (std::abs(a.dt() - b.dt()) > 1e-12 * a.dt()) {
        throw std::invalid_argument("signals have different sample spacing");
    }
    double const pos = (b.t0() - a.t0()) / a.dt();
    double const rounded = std::round(pos);
    if (std::abs(pos - rounded) > grid_slack) {
        throw std::invalid_argument("signals are not on a common sample grid");
    }
    return static_cast<long>(rounded);
}

} // namespace macdop
