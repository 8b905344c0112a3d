#include "macdop/expansion.hpp"

#include <stdexcept>

namespace macdop {

ExpansionSpec::ExpansionSpec(std::size_t n, WindowSpec b)
    : n_(n)
    , b_(b)
    , a_(n == 0 ? b : WindowSpec(n * b.k(), b.dt())) {
    if (n_ == 0) {
        throw std::invalid_argument("expansion needs n >= 1");
    }
    double const denom = static_cast<double>(n_) * static_cast<double>(n_ + 1);
    weights_.reserve(n_);
    for (std::size_t i = 1; i <= n_; ++i) {
        weights_.push_back(2.0 * static_cast<double>(i) / denom);
    }
}

LinearOp expansion_lhs_op(ExpansionSpec const& spec) {
    return LinearOp::right_avg(spec.a().k()) - LinearOp::right_avg(spec.a().k() + spec.b().k());
}

LinearOp expansion_rhs_op(ExpansionSpec const& spec) {
    std::size_t const kb = spec.b().k();
    double const half_b = spec.b().length() / 2.0;
    LinearOp rhs;
    for (std::size_t i = 1; i <= spec.n(); ++i) {
        LinearOp term = LinearOp::right_avg(kb);
        if (i > 1) {
            term = term.then(LinearOp::delay((i - 1) * kb));
        }
        term = (spec.weights()[i - 1] * half_b) * term.then(LinearOp::windowed_derivative(kb));
        rhs = rhs.empty() ? term : rhs + term;
    }
    return rhs;
}

} // namespace macdop
