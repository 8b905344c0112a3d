#pragma once

#include "macdop/kernel.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace macdop {

/// H(w) = sum_j w_j exp(-i w o_j) sampled on a uniform grid over [0, pi].
struct FrequencyResponse {
    std::vector<double> frequencies; ///< normalized angular frequency, radians/sample
    std::vector<double> magnitudes;
    std::vector<double> phases;
    std::string kernel_tag;
    double weight_sum = 0.0;     ///< H(0) of the source kernel
    double abs_weight_sum = 0.0; ///< upper bound on every |H(w)|
};

inline constexpr std::size_t default_grid_size = 4096;

/// Throws std::invalid_argument for an empty kernel or grid_size < 2.
FrequencyResponse transfer_function(KernelRep const& kernel, std::size_t grid_size = default_grid_size);

struct BandpassVerdict {
    bool pass = false;
    double dc_magnitude = 0.0;
    double peak_magnitude = 0.0;
    double peak_frequency = 0.0;
    std::size_t peak_index = 0;
    double nyquist_magnitude = 0.0;
    std::string diagnostics;
};

/// Checks DC rejection (|H(0)| <= 1e-12), an interior global maximum and
/// |H(pi)| below that maximum. A unit-gain (averaging) response is rejected
/// with std::invalid_argument("not a difference kernel").
BandpassVerdict bandpass_check(FrequencyResponse const& resp);

} // namespace macdop
