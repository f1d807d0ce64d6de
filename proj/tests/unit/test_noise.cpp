// Copyright 2026 The oneway Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oneway/cluster.hpp"
#include "oneway/constants.hpp"
#include "oneway/noise.hpp"
#include "oracles.hpp"

namespace {

using namespace oneway;
using namespace oneway::noise;

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

StorageNoiseParams with_tau(double tau, double c = 0.0, double w = 0.0) {
    StorageNoiseParams p;
    p.tau_us = tau;
    p.osc_amp = c;
    p.osc_freq = w;
    return p;
}

DensityMatrix plus_state() {
    Matrix m = Matrix::Constant(2, 2, 0.5);
    return DensityMatrix::from_matrix(m);
}

TEST(Params, Validation) {
    EXPECT_NO_THROW(StorageNoiseParams::none().validate());
    EXPECT_THROW(with_tau(0.0).validate(), std::invalid_argument);
    EXPECT_THROW(with_tau(1.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(with_tau(1.0, -0.1).validate(), std::invalid_argument);
    EXPECT_THROW(storage_channel(-1.0, with_tau(1.0)), std::invalid_argument);
    EXPECT_THROW(dephasing_channel(1.5), std::invalid_argument);
}

TEST(Retention, FormulaAndRange) {
    for (double c : {0.0, 0.3, 0.9}) {
        for (double w : {0.0, 1.7, 40.0}) {
            const auto p = with_tau(7.5, c, w);
            for (int k = 0; k <= 200; ++k) {
                const double t = 0.25 * k;
                const double g = coherence_retention(t, p);
                const double expected = std::exp(-(t / 7.5) * (t / 7.5)) * (1 - c * (1 - std::cos(w * t)) / 2);
                EXPECT_NEAR(g, expected, 1e-15);
                EXPECT_GE(g, 0.0);
                EXPECT_LE(g, 1.0);
            }
        }
    }
    auto e = with_tau(3.0);
    e.envelope = Envelope::exponential;
    EXPECT_NEAR(coherence_retention(3.0, e), std::exp(-1.0), 1e-15);
}

TEST(StorageChannel, ZeroTimeIsIdentityAndLongTimeDephases) {
    const auto rho = cluster::prepare_cluster({0.3, 0.7, 0.1});
    const auto p = with_tau(5.0);
    EXPECT_LT(max_abs(apply_storage(rho, 0.0, p).matrix() - rho.matrix()), 1e-14);
    const auto ch = dephasing_channel(coherence_retention(1e4, p));
    EXPECT_LT(max_abs(apply_channel(plus_state(), ch, {0}).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(StorageChannel, OffDiagonalScaling) {
    // Kraus algebra: K0 rho K0^dag + K1 rho K1^dag multiplies coherences by (1+g)/2 - (1-g)/2 = g.
    const auto p = with_tau(10.0, 0.2, 3.0);
    for (double t : {1.0, 4.0, 8.5, 13.0}) {
        const double g = coherence_retention(t, p);
        const auto out = apply_channel(plus_state(), dephasing_channel(g), {0});
        EXPECT_NEAR(out(0, 1).real(), 0.5 * g, 1e-15);
        EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-15);

        // joint channel on two qubits: |++><++| coherences scale by g per flipped qubit
        Matrix pp = Matrix::Constant(4, 4, 0.25);
        const auto joint = apply_channel(DensityMatrix::from_matrix(pp), storage_channel(t, p), {0, 1});
        EXPECT_NEAR(joint(0, 1).real(), 0.25 * g, 1e-15);
        EXPECT_NEAR(joint(0, 3).real(), 0.25 * g * g, 1e-15);
        EXPECT_NEAR(joint(1, 2).real(), 0.25 * g * g, 1e-15);
    }
}

TEST(StorageChannel, TracePreservingAndUnital) {
    const auto p = with_tau(2.0, 0.5, 1.0);
    for (double t : {0.0, 0.7, 3.0, 50.0}) {
        const auto ch = storage_channel(t, p);
        Matrix sum = Matrix::Zero(4, 4);
        Matrix unital = Matrix::Zero(4, 4);
        for (const auto &k : ch.kraus_operators()) {
            sum += k.adjoint() * k;
            unital += k * k.adjoint();
        }
        EXPECT_LT(max_abs(sum - Matrix::Identity(4, 4)), 1e-10);
        EXPECT_LT(max_abs(unital - Matrix::Identity(4, 4)), 1e-10);
        const auto mixed = apply_storage(DensityMatrix::maximally_mixed(4), t, p);
        EXPECT_LT(max_abs(mixed.matrix() - Matrix::Identity(16, 16) / 16.0), 1e-10);
    }
}

TEST(StorageChannel, MarginalInvariance) {
    const auto rho = cluster::prepare_hyper({0.0, 0.6, 0.1});
    const auto p = with_tau(4.0);
    for (double t : {1.0, 3.0, 9.0}) {
        const auto stored = apply_storage(rho, t, p);
        // qubit 0 marginal unchanged
        EXPECT_LT(max_abs(partial_trace(stored, {0}).matrix() - partial_trace(rho, {0}).matrix()), 1e-14);
        // (0, 2) marginal equals dephasing qubit 2 alone of the original marginal
        const auto pol = partial_trace(rho, {0, 2});
        const auto expected = apply_channel(pol, dephasing_channel(coherence_retention(t, p)), {1});
        EXPECT_LT(max_abs(partial_trace(stored, {0, 2}).matrix() - expected.matrix()), 1e-14);
    }
}

TEST(Lifetime, IdealStartsAtOne) {
    const std::vector<double> times{0.0};
    const auto curve = lifetime_curve(times, cluster::PreparationParams::ideal(), with_tau(10.0));
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_NEAR(curve[0].fidelity_bound, 1.0, 1e-12);
}

TEST(Lifetime, IdealBoundEqualsRetention) {
    const auto p = with_tau(10.0);
    const auto grid = time_grid(0.0, 25.0, 0.5);
    const auto curve = lifetime_curve(grid, cluster::PreparationParams::ideal(), p);
    for (const auto &pt : curve) EXPECT_NEAR(pt.fidelity_bound, coherence_retention(pt.t_us, p), 1e-12);
}

TEST(Lifetime, StrictlyDecreasingWithoutOscillation) {
    const auto grid = time_grid(0.0, 25.0, 0.5);
    EXPECT_EQ(grid.size(), 51u);
    const auto curve = lifetime_curve(grid, {0.0, 0.6, 0.05}, with_tau(12.0));
    for (std::size_t i = 1; i < curve.size(); ++i) {
        EXPECT_LT(curve[i].fidelity_bound, curve[i - 1].fidelity_bound);
        EXPECT_GE(curve[i].fidelity_bound, -0.5);
        EXPECT_LE(curve[i].fidelity_bound, 1.0);
    }
}

TEST(Lifetime, UnsortedRejected) {
    const std::vector<double> times{1.0, 0.5};
    EXPECT_THROW(lifetime_curve(times, {}, with_tau(1.0)), std::invalid_argument);
    EXPECT_THROW(time_grid(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Calibrate, ReferenceTargets) {
    const auto &cal = reference_calibration();
    EXPECT_LT(cal.residual, 0.01);
    ASSERT_EQ(cal.achieved.size(), 2u);
    EXPECT_NEAR(cal.achieved[0], 0.80, 0.01);
    EXPECT_NEAR(cal.achieved[1], 0.50, 0.01);
    EXPECT_GT(cal.prep.imbalance, 0.0);
    EXPECT_LE(cal.prep.imbalance, 1.0);
    EXPECT_GT(cal.noise.tau_us, 0.0);

    // the returned parameters reproduce the targets through the public curve
    const std::vector<double> t{constants::kFirstReadoutStorageUs, constants::kClusterLifetimeUs};
    const auto curve = lifetime_curve(t, cal.prep, cal.noise);
    EXPECT_NEAR(curve[0].fidelity_bound, 0.80, 0.01);
    EXPECT_NEAR(curve[1].fidelity_bound, 0.50, 0.01);
}

TEST(Calibrate, Deterministic) {
    const LifetimeTarget targets[] = {{2.27, 0.80}, {14.27, 0.50}};
    const auto a = calibrate(targets);
    const auto b = calibrate(targets);
    EXPECT_EQ(a.prep.imbalance, b.prep.imbalance);
    EXPECT_EQ(a.noise.tau_us, b.noise.tau_us);
}

TEST(Calibrate, IdealZeroTimeTarget) {
    CalibrationOptions opt;
    opt.spatial_white_noise = 0.0;
    const LifetimeTarget targets[] = {{0.0, 1.0}};
    const auto cal = calibrate(targets, opt);
    EXPECT_NEAR(cal.residual, 0.0, 1e-12);
}

TEST(Calibrate, InfeasibleIncreasingTargets) {
    const LifetimeTarget targets[] = {{2.0, 0.5}, {10.0, 0.8}};
    try {
        calibrate(targets);
        FAIL() << "expected CalibrationError";
    } catch (const CalibrationError &e) {
        EXPECT_GT(e.best_residual(), 0.01);
    }
}

TEST(Calibrate, UnreachableFirstTarget) {
    CalibrationOptions opt;
    opt.spatial_white_noise = 0.9;
    const LifetimeTarget targets[] = {{2.0, 0.95}, {10.0, 0.5}};
    EXPECT_THROW(calibrate(targets, opt), CalibrationError);
}

}  // namespace
