#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace macdop {

/// Raised when an operator needs more input samples than it was given.
class InsufficientSamples : public std::invalid_argument {
public:
    InsufficientSamples(std::string const& what_op, std::size_t required, std::size_t available);

    std::size_t required() const noexcept { return required_; }
    std::size_t available() const noexcept { return available_; }

private:
    std::size_t required_;
    std::size_t available_;
};

/// Uniformly sampled real-valued series. Sample i sits at time t0 + i*dt and
/// stands for the signal on the cell [t - dt, t).
class UniformSignal {
public:
    UniformSignal(double t0, double dt, std::vector<double> values);

    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<double const> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double time(std::size_t i) const noexcept { return t0_ + static_cast<double>(i) * dt_; }
    double last_time() const noexcept { return time(values_.size() - 1); }

    /// Index of the sample stamped at `t`, if `t` lies on this signal's grid.
    std::optional<std::size_t> index_at(double t) const noexcept;

    /// Value at time `t`, if a sample exists there.
    std::optional<double> at(double t) const noexcept;

private:
    double t0_;
    double dt_;
    std::vector<double> values_;
};

/// Averaging window: sample count plus the physical length k*dt it covers.
class WindowSpec {
public:
    WindowSpec(std::size_t k, double dt);

    static WindowSpec for_signal(std::size_t k, UniformSignal const& s) { return {k, s.dt()}; }

    std::size_t k() const noexcept { return k_; }
    double length() const noexcept { return length_; }
    double dt() const noexcept { return length_ / static_cast<double>(k_); }

    /// Throws std::invalid_argument if this window was built for another dt.
    void require_compatible(UniformSignal const& s) const;

private:
    std::size_t k_;
    double length_;
};

/// Integer lag between two signals on the same grid: how many samples `b`
/// starts after `a`. Throws if the grids differ.
long grid_offset(UniformSignal const& a, UniformSignal const& b);

} // namespace macdop
