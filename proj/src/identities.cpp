#include "macdop/identities.hpp"

#include "macdop/operators.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace macdop {

namespace {

void require_samples(char const* what, UniformSignal const& s, std::size_t required) {
    if (s.size() < required) {
        throw InsufficientSamples(what, required, s.size());
    }
}

double max_abs(UniformSignal const& s) noexcept {
    double m = 0.0;
    for (double v : s.values()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

/// d/dx of a signal that is already fully averaged, at sample resolution.
UniformSignal sample_derivative(UniformSignal const& s) {
    return windowed_derivative(s, WindowSpec(1, s.dt()));
}

} // namespace

IdentitySides recursive_decomposition_sides(UniformSignal const& signal, WindowSpec const& t1, WindowSpec const& t2) {
    require_samples("recursive_decomposition", signal, t1.k() + t2.k());
    t1.require_compatible(signal);
    t2.require_compatible(signal);
    WindowSpec const total(t1.k() + t2.k(), t1.dt());
    double const w1 = t1.length() / total.length();
    double const w2 = t2.length() / total.length();
    RunningAverages const avg(signal);
    UniformSignal lhs = avg.right_avg(total);
    // w1 R_t1 + w2 delay(R_t2, t1), one pass over the shared prefix sums
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        std::size_t const i = j + total.k() - 1;
        rhs[j] = avg.mean(i, t1.k()) * w1 + avg.mean(i - t1.k(), t2.k()) * w2;
    }
    return {std::move(lhs), UniformSignal(signal.time(total.k() - 1), signal.dt(), std::move(rhs))};
}

ResidualReport check_recursive_decomposition(UniformSignal const& signal, WindowSpec const& t1, WindowSpec const& t2) {
    return compare_sides("recursive_decomposition", recursive_decomposition_sides(signal, t1, t2), signal);
}

IdentitySides difference_identity_sides(UniformSignal const& signal, WindowSpec const& a, WindowSpec const& b) {
    require_samples("difference_identity", signal, a.k() + b.k());
    WindowSpec const ab(a.k() + b.k(), a.dt());
    a.require_compatible(signal);
    b.require_compatible(signal);
    RunningAverages const avg(signal);
    double const ratio = b.length() / ab.length();
    std::size_t const n_out = signal.size() - ab.k() + 1;
    std::vector<double> lhs(n_out);
    std::vector<double> rhs(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        std::size_t const i = j + ab.k() - 1;
        double const mean_a = avg.mean(i, a.k());
        lhs[j] = mean_a - avg.mean(i, ab.k());
        rhs[j] = (mean_a - avg.mean(i - a.k(), b.k())) * ratio;
    }
    double const t0 = signal.time(ab.k() - 1);
    return {UniformSignal(t0, signal.dt(), std::move(lhs)), UniformSignal(t0, signal.dt(), std::move(rhs))};
}

ResidualReport check_difference_identity(UniformSignal const& signal, WindowSpec const& a, WindowSpec const& b) {
    return compare_sides("difference_identity", difference_identity_sides(signal, a, b), signal);
}

IdentitySides macd_derivative_sides(UniformSignal const& signal, WindowSpec const& a) {
    require_samples("macd_derivative", signal, 2 * a.k());
    UniformSignal lhs = macd(signal, a);
    UniformSignal rhs = scale(windowed_derivative(right_avg(signal, a), a), a.length() / 2.0);
    return {std::move(lhs), std::move(rhs)};
}

ResidualReport check_macd_derivative(UniformSignal const& signal, WindowSpec const& a) {
    return compare_sides("macd_derivative", macd_derivative_sides(signal, a), signal);
}

IdentitySides macd_central_difference_sides(UniformSignal const& signal, WindowSpec const& a) {
    require_samples("macd_central_difference", signal, 2 * a.k() + 1);
    UniformSignal const twice = double_right_avg(signal, a);
    // lag-2 quotient at i is the central difference at i - 1
    UniformSignal const lagged = windowed_derivative(twice, WindowSpec(2, a.dt()));
    std::vector<double> centered(lagged.values().begin(), lagged.values().end());
    UniformSignal lhs = macd(signal, a);
    UniformSignal rhs = scale(UniformSignal(lagged.t0() - lagged.dt(), lagged.dt(), std::move(centered)), a.length() / 2.0);
    return {std::move(lhs), std::move(rhs)};
}

ResidualReport check_macd_central_difference(UniformSignal const& signal, WindowSpec const& a) {
    return compare_sides("macd_central_difference", macd_central_difference_sides(signal, a), signal);
}

IdentitySides phase_corrected_sides(UniformSignal const& signal, WindowSpec const& a) {
    if (a.k() % 2 != 0) {
        throw std::invalid_argument("phase_corrected_form: centered window must have even sample count (got k=" +
                                    std::to_string(a.k()) + ")");
    }
    require_samples("phase_corrected_form", signal, 3 * a.k());
    UniformSignal const centered2 = centered_avg(centered_avg(signal, a), a);
    UniformSignal lhs = macd(signal, a);
    UniformSignal rhs = scale(sample_derivative(delay(centered2, a.k())), a.length() / 2.0);
    return {std::move(lhs), std::move(rhs)};
}

ResidualReport check_phase_corrected_form(UniformSignal const& signal, WindowSpec const& a) {
    return compare_sides("phase_corrected_form", phase_corrected_sides(signal, a), signal);
}

IdentitySides recursive_expansion_sides(UniformSignal const& signal, ExpansionSpec const& spec) {
    require_samples("recursive_expansion", signal, spec.required_samples());
    WindowSpec const& b = spec.b();
    WindowSpec const ab(spec.a().k() + b.k(), b.dt());
    UniformSignal lhs = difference(right_avg(signal, spec.a()), right_avg(signal, ab));

    UniformSignal const avg_b = right_avg(signal, b);
    double const half_b = b.length() / 2.0;
    std::optional<UniformSignal> rhs;
    for (std::size_t i = 1; i <= spec.n(); ++i) {
        UniformSignal const lagged = i == 1 ? avg_b : delay(avg_b, (i - 1) * b.k());
        UniformSignal term = scale(windowed_derivative(lagged, b), spec.weights()[i - 1] * half_b);
        rhs = rhs ? sum(*rhs, term) : std::move(term);
    }
    return {std::move(lhs), std::move(*rhs)};
}

ResidualReport check_recursive_expansion(UniformSignal const& signal, ExpansionSpec const& spec) {
    return compare_sides("recursive_expansion", recursive_expansion_sides(signal, spec), signal);
}

IdentitySides centered_expansion_sides(UniformSignal const& signal, ExpansionSpec const& spec) {
    WindowSpec const& b = spec.b();
    if (b.k() % 2 != 0) {
        throw std::invalid_argument("centered_expansion: centered window must have even sample count (got k=" +
                                    std::to_string(b.k()) + ")");
    }
    require_samples("centered_expansion", signal, spec.required_samples());
    WindowSpec const ab(spec.a().k() + b.k(), b.dt());
    UniformSignal lhs = difference(right_avg(signal, spec.a()), right_avg(signal, ab));

    UniformSignal const centered2 = centered_avg(centered_avg(signal, b), b);
    double const half_b = b.length() / 2.0;
    std::optional<UniformSignal> rhs;
    for (std::size_t i = 1; i <= spec.n(); ++i) {
        UniformSignal term =
            scale(sample_derivative(delay(centered2, i * b.k())), spec.weights()[i - 1] * half_b);
        rhs = rhs ? sum(*rhs, term) : std::move(term);
    }
    return {std::move(lhs), std::move(*rhs)};
}

ResidualReport check_centered_expansion(UniformSignal const& signal, ExpansionSpec const& spec) {
    return compare_sides("centered_expansion", centered_expansion_sides(signal, spec), signal);
}

std::string_view to_string(LpNorm p) noexcept {
    switch (p) {
    case LpNorm::one: return "1";
    case LpNorm::two: return "2";
    case LpNorm::infinity: return "inf";
    }
    return "?";
}

namespace {

double lp_norm(UniformSignal const& s, LpNorm p) {
    auto const v = s.values();
    switch (p) {
    case LpNorm::one: {
        double acc = 0.0;
        for (double x : v) {
            acc += std::abs(x);
        }
        return acc * s.dt();
    }
    case LpNorm::two: {
        // scaled to dodge overflow on huge samples
        double const m = max_abs(s);
        if (m == 0.0) {
            return 0.0;
        }
        double acc = 0.0;
        for (double x : v) {
            double const r = x / m;
            acc += r * r;
        }
        return m * std::sqrt(acc * s.dt());
    }
    case LpNorm::infinity: return max_abs(s);
    }
    return 0.0;
}

} // namespace

double check_lp_bound(UniformSignal const& signal, WindowSpec const& a, LpNorm p) {
    double const denom = lp_norm(signal, p);
    if (denom == 0.0) {
        throw std::domain_error("undefined ratio: signal norm is zero");
    }
    return lp_norm(macd(signal, a), p) / denom;
}

MonotonicityResult check_monotonicity_corollary(UniformSignal const& signal, WindowSpec const& a,
                                                WindowSpec const& b, std::optional<double> equality_tol) {
    if (b.k() <= a.k()) {
        throw std::invalid_argument("monotonicity check requires b.k > a.k (got a.k=" + std::to_string(a.k()) +
                                    ", b.k=" + std::to_string(b.k()) + ")");
    }
    require_samples("monotonicity_corollary", signal, b.k());

    WindowSpec const rest(b.k() - a.k(), a.dt());
    UniformSignal const avg_a = right_avg(signal, a);
    UniformSignal const avg_b = right_avg(signal, b);
    UniformSignal const avg_rest = right_avg(signal, rest);

    double const scale_ab = b.length() / rest.length();
    double const tol = equality_tol.value_or(1e-9 * max_abs(signal));
    // rounding slack on the rearranged equality bound
    double const slack = 64.0 * DBL_EPSILON * max_abs(signal) * scale_ab;

    MonotonicityResult result;
    for (std::size_t i = b.k() - 1; i < signal.size(); ++i) {
        double const ra = avg_a[i - (a.k() - 1)];
        double const rb = avg_b[i - (b.k() - 1)];
        double const rrest = avg_rest[i - a.k() - (rest.k() - 1)];
        if (ra > rb) {
            ++result.hypothesis_count;
            if (!(ra > rrest) && !result.counterexample) {
                result.counterexample = i;
                result.pass = false;
            }
        }
        if (std::abs(ra - rb) <= tol) {
            ++result.equality_count;
            if (std::abs(ra - rrest) > tol * scale_ab + slack && !result.equality_counterexample) {
                result.equality_counterexample = i;
                result.pass = false;
            }
        }
    }
    return result;
}

std::string_view to_string(Trend t) noexcept {
    switch (t) {
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::linear: return "linear";
    }
    return "?";
}

double default_trend_tolerance(UniformSignal const& signal) noexcept {
    return 1e-9 * max_abs(signal);
}

namespace {

double window_mean(UniformSignal const& s, std::size_t index, std::size_t k) {
    double const shift = s[0];
    double acc = 0.0;
    for (std::size_t j = index + 1 - k; j <= index; ++j) {
        acc += s[j] - shift;
    }
    return shift + acc / static_cast<double>(k);
}

} // namespace

TrendLabel classify_trend(UniformSignal const& signal, std::size_t index, WindowSpec const& a, WindowSpec const& b,
                          std::optional<double> tol) {
    a.require_compatible(signal);
    b.require_compatible(signal);
    std::size_t const long_k = a.k() + b.k();
    if (index + 1 < long_k || index >= signal.size()) {
        throw std::out_of_range("index " + std::to_string(index) + " outside valid range [" +
                                std::to_string(long_k - 1) + ", " + std::to_string(signal.size() - 1) + "]");
    }
    double const t = tol.value_or(default_trend_tolerance(signal));
    double const margin = window_mean(signal, index, a.k()) - window_mean(signal, index, long_k);
    Trend label = Trend::linear;
    if (margin > t) {
        label = Trend::increasing;
    } else if (margin < -t) {
        label = Trend::decreasing;
    }
    return {label, margin};
}

} // namespace macdop
