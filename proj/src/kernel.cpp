#include "macdop/kernel.hpp"

#include "macdop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <variant>

namespace macdop {

double KernelRep::weight_sum() const noexcept {
    double s = 0.0;
    for (double w : weights) {
        s += w;
    }
    return s;
}

double KernelRep::abs_weight_sum() const noexcept {
    double s = 0.0;
    for (double w : weights) {
        s += std::abs(w);
    }
    return s;
}

double KernelRep::weight_at(long offset) const noexcept {
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        if (offsets[j] == offset) {
            return weights[j];
        }
    }
    return 0.0;
}

UniformSignal KernelRep::apply(UniformSignal const& signal) const {
    if (empty()) {
        throw std::invalid_argument("cannot apply an empty kernel");
    }
    // output index i reads i - o for every offset o, and i itself must exist
    long const first = std::max(max_offset(), 0L);
    long const last = static_cast<long>(signal.size()) - 1 + std::min(min_offset(), 0L);
    if (last < first) {
        throw InsufficientSamples("kernel " + scale_note, static_cast<std::size_t>(first - std::min(min_offset(), 0L) + 1),
                                  signal.size());
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(last - first + 1));
    auto const values = signal.values();
    for (long i = first; i <= last; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            acc += weights[j] * values[static_cast<std::size_t>(i - offsets[j])];
        }
        out.push_back(acc);
    }
    return {signal.time(static_cast<std::size_t>(first)), signal.dt(), std::move(out)};
}

namespace detail {

enum class Primitive { right_avg, centered_avg, delay, windowed_derivative };

struct PrimitiveNode {
    Primitive kind;
    std::size_t param;
};

} // namespace detail

using detail::Primitive;
using detail::PrimitiveNode;

struct LinearOp::Node {
    struct Compose {
        LinearOp first;
        LinearOp second;
    };
    struct Combine {
        LinearOp lhs;
        LinearOp rhs;
        double rhs_sign;
    };
    struct Scaled {
        double factor;
        LinearOp op;
    };

    std::variant<PrimitiveNode, Compose, Combine, Scaled> body;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Taps = std::map<long, double>;

KernelRep from_taps(Taps const& taps, std::string note) {
    KernelRep k;
    k.scale_note = std::move(note);
    for (auto const& [off, w] : taps) {
        k.offsets.push_back(off);
        k.weights.push_back(w);
    }
    return k;
}

Taps to_taps(KernelRep const& k) {
    Taps t;
    for (std::size_t j = 0; j < k.size(); ++j) {
        t[k.offsets[j]] += k.weights[j];
    }
    return t;
}

Taps convolve(Taps const& a, Taps const& b) {
    Taps out;
    for (auto const& [oa, wa] : a) {
        for (auto const& [ob, wb] : b) {
            out[oa + ob] += wa * wb;
        }
    }
    return out;
}

void require_positive(char const* what, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument(std::string(what) + " window must be >= 1 sample");
    }
}

} // namespace

LinearOp LinearOp::right_avg(std::size_t k) {
    require_positive("right_avg", k);
    return LinearOp(std::make_shared<Node const>(Node{PrimitiveNode{Primitive::right_avg, k}}));
}

LinearOp LinearOp::centered_avg(std::size_t k) {
    require_positive("centered_avg", k);
    if (k % 2 != 0) {
        throw std::invalid_argument("centered window must have even sample count (got k=" + std::to_string(k) + ")");
    }
    return LinearOp(std::make_shared<Node const>(Node{PrimitiveNode{Primitive::centered_avg, k}}));
}

LinearOp LinearOp::delay(std::size_t lag) {
    return LinearOp(std::make_shared<Node const>(Node{PrimitiveNode{Primitive::delay, lag}}));
}

LinearOp LinearOp::windowed_derivative(std::size_t k) {
    require_positive("windowed_derivative", k);
    return LinearOp(std::make_shared<Node const>(Node{PrimitiveNode{Primitive::windowed_derivative, k}}));
}

LinearOp LinearOp::then(LinearOp const& next) const {
    if (empty() || next.empty()) {
        throw std::invalid_argument("cannot compose an empty operator");
    }
    return LinearOp(std::make_shared<Node const>(Node{Node::Compose{*this, next}}));
}

LinearOp operator-(LinearOp const& lhs, LinearOp const& rhs) {
    if (lhs.empty() || rhs.empty()) {
        throw std::invalid_argument("cannot subtract an empty operator");
    }
    return LinearOp(std::make_shared<LinearOp::Node const>(LinearOp::Node{LinearOp::Node::Combine{lhs, rhs, -1.0}}));
}

LinearOp operator+(LinearOp const& lhs, LinearOp const& rhs) {
    if (lhs.empty() || rhs.empty()) {
        throw std::invalid_argument("cannot add an empty operator");
    }
    return LinearOp(std::make_shared<LinearOp::Node const>(LinearOp::Node{LinearOp::Node::Combine{lhs, rhs, 1.0}}));
}

LinearOp operator*(double factor, LinearOp const& op) {
    if (op.empty()) {
        throw std::invalid_argument("cannot scale an empty operator");
    }
    return LinearOp(std::make_shared<LinearOp::Node const>(LinearOp::Node{LinearOp::Node::Scaled{factor, op}}));
}

std::string LinearOp::describe() const {
    if (empty()) {
        return "<empty>";
    }
    return std::visit(
        overloaded{
            [](PrimitiveNode const& p) {
                switch (p.kind) {
                case Primitive::right_avg: return "R" + std::to_string(p.param);
                case Primitive::centered_avg: return "C" + std::to_string(p.param);
                case Primitive::delay: return "z^-" + std::to_string(p.param);
                case Primitive::windowed_derivative: return "D" + std::to_string(p.param);
                }
                return std::string("?");
            },
            [](Node::Compose const& c) { return c.second.describe() + "(" + c.first.describe() + ")"; },
            [](Node::Combine const& c) {
                return "(" + c.lhs.describe() + (c.rhs_sign < 0 ? " - " : " + ") + c.rhs.describe() + ")";
            },
            [](Node::Scaled const& s) {
                std::ostringstream os;
                os << s.factor << "*" << s.op.describe();
                return os.str();
            },
        },
        node_->body);
}

UniformSignal LinearOp::evaluate(UniformSignal const& signal) const {
    if (empty()) {
        throw std::invalid_argument("cannot evaluate an empty operator");
    }
    return std::visit(
        overloaded{
            [&](PrimitiveNode const& p) -> UniformSignal {
                switch (p.kind) {
                case Primitive::right_avg: return macdop::right_avg(signal, WindowSpec::for_signal(p.param, signal));
                case Primitive::centered_avg:
                    return macdop::centered_avg(signal, WindowSpec::for_signal(p.param, signal));
                case Primitive::delay: return macdop::delay(signal, p.param);
                case Primitive::windowed_derivative:
                    return macdop::windowed_derivative(signal, WindowSpec::for_signal(p.param, signal));
                }
                throw std::logic_error("unknown primitive");
            },
            [&](Node::Compose const& c) { return c.second.evaluate(c.first.evaluate(signal)); },
            [&](Node::Combine const& c) {
                UniformSignal const l = c.lhs.evaluate(signal);
                UniformSignal const r = c.rhs.evaluate(signal);
                return c.rhs_sign < 0 ? difference(l, r) : sum(l, r);
            },
            [&](Node::Scaled const& s) { return scale(s.op.evaluate(signal), s.factor); },
        },
        node_->body);
}

KernelRep build_kernel(LinearOp const& op, double dt) {
    if (op.empty()) {
        throw std::invalid_argument("cannot build a kernel for an empty composition");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("kernel sample spacing must be > 0");
    }
    Taps taps = std::visit(
        overloaded{
            [&](PrimitiveNode const& p) {
                Taps t;
                long const k = static_cast<long>(p.param);
                switch (p.kind) {
                case Primitive::right_avg:
                    for (long j = 0; j < k; ++j) {
                        t[j] = 1.0 / static_cast<double>(k);
                    }
                    break;
                case Primitive::centered_avg:
                    for (long j = -k / 2; j < k / 2; ++j) {
                        t[j] = 1.0 / static_cast<double>(k);
                    }
                    break;
                case Primitive::delay: t[k] = 1.0; break;
                case Primitive::windowed_derivative:
                    t[0] = 1.0 / (static_cast<double>(k) * dt);
                    t[k] = -1.0 / (static_cast<double>(k) * dt);
                    break;
                }
                return t;
            },
            [&](LinearOp::Node::Compose const& c) {
                return convolve(to_taps(build_kernel(c.first, dt)), to_taps(build_kernel(c.second, dt)));
            },
            [&](LinearOp::Node::Combine const& c) {
                Taps t = to_taps(build_kernel(c.lhs, dt));
                for (auto const& [off, w] : to_taps(build_kernel(c.rhs, dt))) {
                    t[off] += c.rhs_sign * w;
                }
                return t;
            },
            [&](LinearOp::Node::Scaled const& s) {
                Taps t = to_taps(build_kernel(s.op, dt));
                for (auto& [off, w] : t) {
                    w *= s.factor;
                }
                return t;
            },
        },
        op.node_->body);
    return from_taps(taps, op.describe());
}

LinearOp macd_op(std::size_t k) {
    return LinearOp::right_avg(k) - LinearOp::right_avg(2 * k);
}

LinearOp double_right_avg_op(std::size_t k) {
    return LinearOp::right_avg(k).then(LinearOp::right_avg(k));
}

KernelRep triangular_kernel(std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("triangular kernel needs k >= 1");
    }
    std::vector<double> const box(k, 1.0 / static_cast<double>(k));
    std::vector<double> tri(2 * k - 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            tri[i + j] += box[i] * box[j];
        }
    }
    KernelRep out;
    out.scale_note = "triangular(" + std::to_string(k) + ")";
    for (std::size_t j = 0; j < tri.size(); ++j) {
        out.offsets.push_back(static_cast<long>(j));
        out.weights.push_back(tri[j]);
    }
    return out;
}

KernelRep unit_difference_quotient(KernelRep const& kernel, double dt) {
    if (kernel.empty()) {
        throw std::invalid_argument("cannot difference an empty kernel");
    }
    KernelRep out;
    out.scale_note = "unit-difference(" + kernel.scale_note + ")";
    for (long off = kernel.min_offset(); off <= kernel.max_offset() + 1; ++off) {
        out.offsets.push_back(off);
        out.weights.push_back((kernel.weight_at(off) - kernel.weight_at(off - 1)) / dt);
    }
    return out;
}

} // namespace macdop
