#include "macdop/expansion.hpp"
#include "macdop/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace macdop;

namespace {

// |H(w)| of the MACD kernel in closed form: the box pair factors into
// (1 - e^{-iwk}) times a Dirichlet kernel.
double macd_magnitude_closed_form(std::size_t k, double omega) {
    double const kd = static_cast<double>(k);
    if (omega == 0.0) {
        return 0.0;
    }
    double const s = std::sin(omega * kd / 2.0);
    return s * s / (kd * std::abs(std::sin(omega / 2.0)));
}

} // namespace

TEST(TransferFunction, DcValues) {
    FrequencyResponse const m = transfer_function(build_kernel(macd_op(8)));
    EXPECT_LE(m.magnitudes.front(), 1e-14);
    FrequencyResponse const r = transfer_function(build_kernel(LinearOp::right_avg(4)));
    EXPECT_NEAR(r.magnitudes.front(), 1.0, 1e-14);
    EXPECT_EQ(r.frequencies.front(), 0.0);
    EXPECT_EQ(r.frequencies.back(), std::numbers::pi);
    EXPECT_EQ(r.frequencies.size(), default_grid_size);
}

TEST(TransferFunction, Errors) {
    EXPECT_THROW(transfer_function(KernelRep{}), std::invalid_argument);
    EXPECT_THROW(transfer_function(build_kernel(macd_op(2)), 1), std::invalid_argument);
}

TEST(TransferFunction, MatchesClosedForm) {
    for (std::size_t k : {1u, 2u, 5u, 8u, 31u}) {
        FrequencyResponse const r = transfer_function(build_kernel(macd_op(k)), 1000);
        for (std::size_t m = 0; m < r.frequencies.size(); ++m) {
            EXPECT_NEAR(r.magnitudes[m], macd_magnitude_closed_form(k, r.frequencies[m]), 1e-13);
        }
    }
}

TEST(TransferFunction, MacdPeakOnDenseGrid) {
    // Frozen from a dense 65536-point brute-force evaluation of the k = 8 kernel.
    FrequencyResponse const r = transfer_function(build_kernel(macd_op(8)), 65536);
    BandpassVerdict const v = bandpass_check(r);
    EXPECT_NEAR(v.peak_magnitude, 0.7271895452498701, 1e-13);
    EXPECT_NEAR(v.peak_frequency, 0.2923236743967431, 1e-13);
    EXPECT_EQ(v.peak_index, 6098u);
}

TEST(TransferFunction, BoundedByAbsoluteWeightSum) {
    for (auto const& op : {macd_op(3), double_right_avg_op(5), expansion_rhs_op(ExpansionSpec(4, WindowSpec(3, 1.0)))}) {
        FrequencyResponse const r = transfer_function(build_kernel(op), 2048);
        for (double mag : r.magnitudes) {
            ASSERT_GE(mag, 0.0);
            ASSERT_LE(mag, r.abs_weight_sum + 1e-15);
        }
        for (std::size_t m = 1; m < r.frequencies.size(); ++m) {
            ASSERT_GT(r.frequencies[m], r.frequencies[m - 1]);
        }
    }
}

TEST(Bandpass, MacdKernelsPass) {
    for (std::size_t k : {2u, 3u, 4u, 7u, 8u, 16u, 32u, 64u}) {
        BandpassVerdict const v = bandpass_check(transfer_function(build_kernel(macd_op(k))));
        EXPECT_TRUE(v.pass) << "k=" << k << ": " << v.diagnostics;
        EXPECT_LT(v.nyquist_magnitude, v.peak_magnitude);
    }
}

TEST(Bandpass, OneSampleMacdIsHighPass) {
    // k = 1 is a plain first difference; its maximum sits at pi.
    BandpassVerdict const v = bandpass_check(transfer_function(build_kernel(macd_op(1))));
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.peak_index, default_grid_size - 1);
}

TEST(Bandpass, AveragingKernelRejected) {
    EXPECT_THROW(bandpass_check(transfer_function(build_kernel(LinearOp::right_avg(4)))), std::invalid_argument);
    EXPECT_THROW(bandpass_check(transfer_function(build_kernel(double_right_avg_op(4)))), std::invalid_argument);
}

TEST(Bandpass, ExpansionKernelMatchesDifferenceKernel) {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t kb : {2u, 4u, 8u}) {
            ExpansionSpec const spec(n, WindowSpec(kb, 1.0));
            FrequencyResponse const lhs = transfer_function(build_kernel(expansion_lhs_op(spec)));
            FrequencyResponse const rhs = transfer_function(build_kernel(expansion_rhs_op(spec)));
            EXPECT_TRUE(bandpass_check(rhs).pass);
            double gap = 0.0;
            for (std::size_t m = 0; m < lhs.magnitudes.size(); ++m) {
                gap = std::max(gap, std::abs(lhs.magnitudes[m] - rhs.magnitudes[m]));
            }
            EXPECT_LE(gap, 1e-10) << n << "," << kb;
        }
    }
}

TEST(Bandpass, MacdResponseEqualsTriangleDerivativeResponse) {
    for (std::size_t k : {2u, 5u, 16u}) {
        double const a = static_cast<double>(k);
        KernelRep tri = unit_difference_quotient(triangular_kernel(k));
        for (double& w : tri.weights) {
            w *= a / 2.0;
        }
        FrequencyResponse const m = transfer_function(build_kernel(macd_op(k)));
        FrequencyResponse const t = transfer_function(tri);
        for (std::size_t i = 0; i < m.magnitudes.size(); ++i) {
            ASSERT_NEAR(m.magnitudes[i], t.magnitudes[i], 1e-12);
        }
    }
}
