#include "macdop/residual.hpp"

#include <algorithm>
#include <cmath>

namespace macdop {

ResidualReport compare_sides(std::string name, IdentitySides const& sides, UniformSignal const& input) {
    UniformSignal const& lhs = sides.lhs;
    UniformSignal const& rhs = sides.rhs;
    long const off = grid_offset(lhs, rhs);
    long const first = std::max(0L, off);
    long const last = std::min(static_cast<long>(lhs.size()), off + static_cast<long>(rhs.size())) - 1;

    ResidualReport r;
    r.identity_name = std::move(name);
    if (last < first) {
        r.insufficient_samples = true;
        return r;
    }

    double max_abs = 0.0;
    double max_lhs = 0.0;
    double max_rhs = 0.0;
    for (long i = first; i <= last; ++i) {
        double const l = lhs[static_cast<std::size_t>(i)];
        double const rv = rhs[static_cast<std::size_t>(i - off)];
        max_abs = std::max(max_abs, std::abs(l - rv));
        max_lhs = std::max(max_lhs, std::abs(l));
        max_rhs = std::max(max_rhs, std::abs(rv));
    }
    double const scale = max_lhs > 0.0 ? max_lhs : max_rhs;
    r.max_abs_residual = max_abs;
    r.max_rel_residual = scale > 0.0 ? max_abs / scale : 0.0;

    long const input_off = grid_offset(input, lhs);
    r.valid_range.first = static_cast<std::size_t>(input_off + first);
    r.valid_range.last = static_cast<std::size_t>(input_off + last);
    return r;
}

ResidualReport insufficient_report(std::string name, std::size_t required) {
    ResidualReport r;
    r.identity_name = std::move(name);
    r.insufficient_samples = true;
    r.required_samples = required;
    return r;
}

} // namespace macdop
