#include "macdop/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace macdop {

FrequencyResponse transfer_function(KernelRep const& kernel, std::size_t grid_size) {
    if (kernel.empty()) {
        throw std::invalid_argument("transfer function of an empty kernel");
    }
    if (grid_size < 2) {
        throw std::invalid_argument("frequency grid needs at least 2 points");
    }
    FrequencyResponse r;
    r.kernel_tag = kernel.scale_note;
    r.weight_sum = kernel.weight_sum();
    r.abs_weight_sum = kernel.abs_weight_sum();
    r.frequencies.resize(grid_size);
    r.magnitudes.resize(grid_size);
    r.phases.resize(grid_size);

    double const step = std::numbers::pi / static_cast<double>(grid_size - 1);
    for (std::size_t m = 0; m < grid_size; ++m) {
        double const omega = m + 1 == grid_size ? std::numbers::pi : static_cast<double>(m) * step;
        std::complex<double> h{0.0, 0.0};
        for (std::size_t j = 0; j < kernel.size(); ++j) {
            // exact phase reduction keeps large offsets accurate
            double const angle = std::remainder(omega * static_cast<double>(kernel.offsets[j]), 2.0 * std::numbers::pi);
            h += kernel.weights[j] * std::polar(1.0, -angle);
        }
        r.frequencies[m] = omega;
        r.magnitudes[m] = std::abs(h);
        r.phases[m] = std::arg(h);
    }
    return r;
}

BandpassVerdict bandpass_check(FrequencyResponse const& resp) {
    if (resp.magnitudes.size() < 2) {
        throw std::invalid_argument("frequency response has fewer than 2 points");
    }
    if (std::abs(resp.weight_sum - 1.0) <= 1e-12) {
        throw std::invalid_argument("not a difference kernel: " + resp.kernel_tag + " has unit DC gain");
    }
    BandpassVerdict v;
    auto const& mag = resp.magnitudes;
    v.dc_magnitude = mag.front();
    v.nyquist_magnitude = mag.back();
    for (std::size_t m = 0; m < mag.size(); ++m) {
        if (mag[m] > v.peak_magnitude) {
            v.peak_magnitude = mag[m];
            v.peak_index = m;
        }
    }
    v.peak_frequency = resp.frequencies[v.peak_index];

    bool const dc_rejected = v.dc_magnitude <= 1e-12;
    bool const interior_peak = v.peak_index > 0 && v.peak_index + 1 < mag.size();
    bool const high_attenuated = v.nyquist_magnitude < v.peak_magnitude;
    v.pass = dc_rejected && interior_peak && high_attenuated;

    std::ostringstream os;
    os.precision(17);
    os << "dc=" << v.dc_magnitude << (dc_rejected ? " ok" : " FAIL") << "; peak=" << v.peak_magnitude
       << " at omega=" << v.peak_frequency << (interior_peak ? " (interior)" : " (endpoint) FAIL")
       << "; nyquist=" << v.nyquist_magnitude << (high_attenuated ? " ok" : " FAIL");
    v.diagnostics = os.str();
    return v;
}

} // namespace macdop
