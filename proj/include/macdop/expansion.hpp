#pragma once

#include "macdop/kernel.hpp"
#include "macdop/signal.hpp"

#include <cstddef>
#include <vector>

namespace macdop {

/// Parameters of the n-term expansion of R_a - R_{a+b} with a = n*b.
/// Term i (1-based) carries weight 2i / (n(n+1)); the weights sum to 1.
class ExpansionSpec {
public:
    ExpansionSpec(std::size_t n, WindowSpec b);

    std::size_t n() const noexcept { return n_; }
    WindowSpec const& b() const noexcept { return b_; }
    WindowSpec const& a() const noexcept { return a_; }
    std::vector<double> const& weights() const noexcept { return weights_; }

    /// Samples needed by the batch check of this expansion.
    std::size_t required_samples() const noexcept { return (2 * n_ + 2) * b_.k(); }

private:
    std::size_t n_;
    WindowSpec b_;
    WindowSpec a_;
    std::vector<double> weights_;
};

/// R_a - R_{a+b}.
LinearOp expansion_lhs_op(ExpansionSpec const& spec);

/// sum_i w_i * (b/2) * d/dx R_b R_b P(x - (i-1)b), the derivative of each
/// double average taken as the windowed derivative of its inner average.
LinearOp expansion_rhs_op(ExpansionSpec const& spec);

} // namespace macdop
