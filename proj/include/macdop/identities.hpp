#pragma once

#include "macdop/expansion.hpp"
#include "macdop/residual.hpp"
#include "macdop/signal.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace macdop {

// Residual checks of the moving-average identities. Each *_sides function
// evaluates both sides of one identity with the batch operators; the
// matching check_* function turns them into a ResidualReport. All of them
// throw InsufficientSamples when the signal is shorter than documented.

/// R_T = (t1/T) R_{t1} + (t2/T) R_{t2}(x - t1), T = t1 + t2.
/// Needs t1.k + t2.k samples.
IdentitySides recursive_decomposition_sides(UniformSignal const& signal, WindowSpec const& t1, WindowSpec const& t2);
ResidualReport check_recursive_decomposition(UniformSignal const& signal, WindowSpec const& t1, WindowSpec const& t2);

/// R_a - R_{a+b} = b/(a+b) (R_a - R_b(x - a)). Needs a.k + b.k samples.
IdentitySides difference_identity_sides(UniformSignal const& signal, WindowSpec const& a, WindowSpec const& b);
ResidualReport check_difference_identity(UniformSignal const& signal, WindowSpec const& a, WindowSpec const& b);

/// macd = (a/2) d/dx R_a R_a P, with d/dx R_a g = windowed_derivative(g).
/// Needs 2 a.k samples.
IdentitySides macd_derivative_sides(UniformSignal const& signal, WindowSpec const& a);
ResidualReport check_macd_derivative(UniformSignal const& signal, WindowSpec const& a);

/// Approximate cross-check: macd against (a/2) times the central difference
/// (T(i+1) - T(i-1)) / (2 dt) of the double average T. Not exact; the residual
/// is the half-sample mismatch between the two derivative stencils. Needs
/// 2 a.k + 1 samples.
IdentitySides macd_central_difference_sides(UniformSignal const& signal, WindowSpec const& a);
ResidualReport check_macd_central_difference(UniformSignal const& signal, WindowSpec const& a);

/// macd = (a/2) d/dx C_a C_a P(x - a). The double centered average is built
/// from two centered passes, delayed by a.k samples and differentiated at
/// sample resolution. Needs even a.k and 3 a.k samples.
IdentitySides phase_corrected_sides(UniformSignal const& signal, WindowSpec const& a);
ResidualReport check_phase_corrected_form(UniformSignal const& signal, WindowSpec const& a);

/// R_a - R_{a+b} against the weighted n-term sum of delayed double-average
/// derivatives. Needs (2n+2) b.k samples.
IdentitySides recursive_expansion_sides(UniformSignal const& signal, ExpansionSpec const& spec);
ResidualReport check_recursive_expansion(UniformSignal const& signal, ExpansionSpec const& spec);

/// Same expansion written with double centered averages at lags i*b, which
/// is the symmetric form. Needs even b.k and (2n+2) b.k samples.
IdentitySides centered_expansion_sides(UniformSignal const& signal, ExpansionSpec const& spec);
ResidualReport check_centered_expansion(UniformSignal const& signal, ExpansionSpec const& spec);

enum class LpNorm { one, two, infinity };

std::string_view to_string(LpNorm p) noexcept;

/// ||macd(signal)||_p / ||signal||_p with dt-weighted discrete norms. The
/// numerator runs over the macd valid range, the denominator over the whole
/// input. Throws std::domain_error for an all-zero signal.
double check_lp_bound(UniformSignal const& signal, WindowSpec const& a, LpNorm p);

struct MonotonicityResult {
    bool pass = true;
    std::optional<std::size_t> counterexample;          ///< first violating input index
    std::optional<std::size_t> equality_counterexample; ///< first violation of the tolerance form
    std::size_t hypothesis_count = 0;                   ///< indices where R_a > R_b
    std::size_t equality_count = 0;                     ///< indices where |R_a - R_b| <= tol
};

/// Scans every index where R_a(i) > R_b(i) and confirms R_a(i) > R_{b-a}(i - a).
/// Near-ties |R_a - R_b| <= equality_tol must satisfy
/// |R_a - R_{b-a}(i - a)| <= equality_tol * b / (b - a).
/// equality_tol defaults to 1e-9 * max|signal|. Requires b.k > a.k.
MonotonicityResult check_monotonicity_corollary(UniformSignal const& signal, WindowSpec const& a,
                                                WindowSpec const& b,
                                                std::optional<double> equality_tol = std::nullopt);

enum class Trend { increasing, decreasing, linear };

std::string_view to_string(Trend t) noexcept;

struct TrendLabel {
    Trend label;
    double margin;
};

/// Default classifier tolerance, 1e-9 * max|signal|.
double default_trend_tolerance(UniformSignal const& signal) noexcept;

/// margin = R_a(index) - R_{a+b}(index); beyond +tol is increasing, below
/// -tol decreasing, otherwise linear (a symmetric window also lands here).
/// Throws std::out_of_range if index < a.k + b.k - 1 or past the end.
TrendLabel classify_trend(UniformSignal const& signal, std::size_t index, WindowSpec const& a, WindowSpec const& b,
                          std::optional<double> tol = std::nullopt);

} // namespace macdop
