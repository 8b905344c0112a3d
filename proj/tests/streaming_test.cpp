#include "macdop/identities.hpp"
#include "macdop/operators.hpp"
#include "macdop/streaming.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace macdop;
using namespace macdop::testing;

namespace {

std::vector<double> run_stream(MacdStream& s, std::vector<double> const& xs) {
    std::vector<double> out;
    for (double x : xs) {
        if (auto v = s.push(x)) {
            out.push_back(*v);
        }
    }
    return out;
}

} // namespace

TEST(CompensatedSum, RecoversLostLowBits) {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) {
        s.add(1e-16);
    }
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-13, 1e-25);
}

TEST(MacdStream, WarmUpAndConstant) {
    MacdStream s(WindowSpec(4, 1.0));
    for (int i = 0; i < 7; ++i) {
        EXPECT_FALSE(s.push(0.1));
    }
    for (int i = 0; i < 50; ++i) {
        auto v = s.push(0.1);
        ASSERT_TRUE(v);
        EXPECT_EQ(*v, 0.0);
    }
    EXPECT_EQ(s.samples_seen(), 57u);
}

TEST(MacdStream, RampEmitsHalfWindow) {
    MacdStream s(WindowSpec(2, 1.0));
    std::vector<double> xs(40);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = static_cast<double>(i);
    }
    auto const out = run_stream(s, xs);
    ASSERT_EQ(out.size(), 40u - 3u);
    for (double v : out) {
        EXPECT_EQ(v, 1.0);
    }
}

TEST(MacdStream, MatchesBatchOnRandomStream) {
    auto const xs = uniform_values(200000, 21, -100.0, 100.0);
    for (std::size_t k : {1u, 7u, 64u, 300u}) {
        MacdStream s(WindowSpec(k, 1.0));
        auto const out = run_stream(s, xs);
        UniformSignal const batch = macd(UniformSignal(0.0, 1.0, xs), WindowSpec(k, 1.0));
        ASSERT_EQ(out.size(), batch.size());
        double worst = 0.0;
        for (std::size_t j = 0; j < out.size(); ++j) {
            worst = std::max(worst, std::abs(out[j] - batch[j]));
        }
        EXPECT_LE(worst, 1e-9) << "k=" << k;
    }
}

TEST(MacdStream, RejectsNonFiniteWithoutStateChange) {
    MacdStream s(WindowSpec(2, 1.0));
    for (double x : {1.0, 2.0, 3.0}) {
        s.push(x);
    }
    EXPECT_THROW(s.push(std::nan("")), std::invalid_argument);
    EXPECT_THROW(s.push(INFINITY), std::invalid_argument);
    EXPECT_EQ(s.samples_seen(), 3u);
    auto v = s.push(4.0);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, 1.0);
}

TEST(MacdStream, DriftStaysBoundedPastResumInterval) {
    MacdStream s(WindowSpec(16, 1.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    std::uint64_t const total = MacdStream::resum_interval + 12345;
    for (std::uint64_t i = 0; i < total; ++i) {
        s.push(dist(rng));
    }
    EXPECT_LE(s.sum_drift(), 1e-9);
}

TEST(ExpansionStream, SingleTermMatchesMacdStream) {
    auto const xs = uniform_values(5000, 4);
    for (std::size_t k : {1u, 5u, 16u}) {
        MacdStream m(WindowSpec(k, 1.0));
        ExpansionStream e(ExpansionSpec(1, WindowSpec(k, 1.0)));
        for (double x : xs) {
            auto const a = m.push(x);
            auto const b = e.push(x);
            ASSERT_EQ(a.has_value(), b.has_value());
            if (a) {
                EXPECT_NEAR(*a, *b, 1e-14);
            }
        }
    }
}

TEST(ExpansionStream, ConstantEmitsZero) {
    ExpansionStream e(ExpansionSpec(3, WindowSpec(4, 1.0)));
    std::size_t emitted = 0;
    for (int i = 0; i < 100; ++i) {
        if (auto v = e.push(-2.7)) {
            EXPECT_EQ(*v, 0.0);
            ++emitted;
        }
    }
    EXPECT_EQ(emitted, 100u - 16u + 1u);
}

TEST(ExpansionStream, MatchesBatchRhs) {
    auto const xs = uniform_values(100000, 6);
    for (auto [n, kb] : {std::pair{4u, 8u}, std::pair{1u, 3u}, std::pair{7u, 5u}}) {
        ExpansionSpec const spec(n, WindowSpec(kb, 1.0));
        ExpansionStream e(spec);
        std::vector<double> out;
        for (double x : xs) {
            if (auto v = e.push(x)) {
                out.push_back(*v);
            }
        }
        UniformSignal const signal(0.0, 1.0, xs);
        IdentitySides const batch = recursive_expansion_sides(signal, spec);
        // stream index j corresponds to input index (n+1)kb - 1 + j
        std::size_t const first = (n + 1) * kb - 1;
        ASSERT_EQ(out.size(), xs.size() - first);
        double worst = 0.0;
        for (std::size_t j = 0; j < out.size(); ++j) {
            auto const b = batch.rhs.at(static_cast<double>(first + j));
            ASSERT_TRUE(b);
            worst = std::max(worst, std::abs(out[j] - *b));
        }
        EXPECT_LE(worst, 1e-9);
        // and the stream also tracks the lhs R_a - R_{a+b}
        double worst_lhs = 0.0;
        for (std::size_t j = 0; j < out.size(); ++j) {
            worst_lhs = std::max(worst_lhs, std::abs(out[j] - *batch.lhs.at(static_cast<double>(first + j))));
        }
        EXPECT_LE(worst_lhs, 1e-9);
    }
}
