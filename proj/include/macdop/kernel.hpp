#pragma once

#include "macdop/signal.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace macdop {

/// Explicit FIR kernel: y[i] = sum_j weights[j] * x[i - offsets[j]].
/// Offset 0 is the current sample, positive offsets look into the past and
/// negative ones into the future.
struct KernelRep {
    std::vector<long> offsets;
    std::vector<double> weights;
    std::string scale_note;

    bool empty() const noexcept { return offsets.empty(); }
    std::size_t size() const noexcept { return offsets.size(); }
    long min_offset() const { return offsets.front(); }
    long max_offset() const { return offsets.back(); }

    double weight_sum() const noexcept;
    double abs_weight_sum() const noexcept;

    /// Weight at `offset`, or 0 if the kernel has no tap there.
    double weight_at(long offset) const noexcept;

    /// Direct convolution over the indices where every tap hits an input sample.
    UniformSignal apply(UniformSignal const& signal) const;
};

/// Linear time-invariant operator built from the moving-average primitives.
/// Cheap to copy; nodes are shared and immutable.
class LinearOp {
public:
    LinearOp() = default;

    static LinearOp right_avg(std::size_t k);
    static LinearOp centered_avg(std::size_t k);
    static LinearOp delay(std::size_t lag);
    static LinearOp windowed_derivative(std::size_t k);

    /// Applies *this first, then `next`.
    LinearOp then(LinearOp const& next) const;

    friend LinearOp operator-(LinearOp const& lhs, LinearOp const& rhs);
    friend LinearOp operator+(LinearOp const& lhs, LinearOp const& rhs);
    friend LinearOp operator*(double factor, LinearOp const& op);

    bool empty() const noexcept { return node_ == nullptr; }
    std::string describe() const;

    /// Evaluates the operator with the batch routines in operators.hpp.
    UniformSignal evaluate(UniformSignal const& signal) const;

    struct Node;

private:
    explicit LinearOp(std::shared_ptr<Node const> node)
        : node_(std::move(node)) {}

    std::shared_ptr<Node const> node_;

    friend KernelRep build_kernel(LinearOp const& op, double dt);
};

/// Expands `op` into its FIR kernel for sample spacing `dt` (the derivative
/// taps scale with 1/dt). Throws std::invalid_argument for an empty operator.
KernelRep build_kernel(LinearOp const& op, double dt = 1.0);

// Frequently used compositions.
LinearOp macd_op(std::size_t k);
LinearOp double_right_avg_op(std::size_t k);

/// The box kernel of length k convolved with itself: weights rise linearly
/// over offsets 0..k-1 and fall back over k-1..2k-2. Built by explicit
/// convolution, independently of LinearOp.
KernelRep triangular_kernel(std::size_t k);

/// Backward unit-lag difference quotient of a kernel, (K[j] - K[j-1]) / dt.
/// Applied to the triangular kernel this is the sampled derivative of the
/// double average.
KernelRep unit_difference_quotient(KernelRep const& kernel, double dt = 1.0);

} // namespace macdop
