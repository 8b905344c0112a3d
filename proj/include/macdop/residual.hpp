#pragma once

#include "macdop/signal.hpp"

#include <cstddef>
#include <string>

namespace macdop {

/// Closed range of input-sample indices.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t count() const noexcept { return last - first + 1; }
};

struct ResidualReport {
    std::string identity_name;
    IndexRange valid_range;
    double max_abs_residual = 0.0;
    double max_rel_residual = 0.0;
    bool insufficient_samples = false;
    std::size_t required_samples = 0;

    bool passes(double rel_gate) const noexcept {
        return !insufficient_samples && max_rel_residual <= rel_gate;
    }
};

/// Both sides of an identity, each on its own valid range.
struct IdentitySides {
    UniformSignal lhs;
    UniformSignal rhs;
};

/// Compares lhs and rhs over the time range they share. `input` fixes the
/// index frame of `valid_range`. The relative residual is scaled by the
/// largest |lhs| on that range (by |rhs| if lhs vanishes there; 0/0 -> 0).
ResidualReport compare_sides(std::string name, IdentitySides const& sides, UniformSignal const& input);

/// Report for a check that could not run for lack of data.
ResidualReport insufficient_report(std::string name, std::size_t required);

} // namespace macdop
