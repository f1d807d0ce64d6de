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

/**
 * @file
 * One-way single-qubit rotation on the four-qubit cluster.
 *
 * The cluster is reordered to (spin spatial, photon spatial, photon
 * polarization, spin polarization), Hadamards are applied to the first and
 * last of these, and the first is removed by postselecting |0>. The resulting
 * three-qubit linear cluster is consumed by measuring the photon spatial qubit
 * in B(alpha) (outcome s2) and the photon polarization qubit in B(+/-beta)
 * (outcome s3). The spin polarization qubit carries
 *
 *   sigma_x^{s3} sigma_z^{s2} R_x((-1)^{s2+1} beta) R_z(-alpha) |+>
 *
 * when the second basis is fixed to B(beta). Type-I feedforward flips the
 * second basis to B(-beta) when s2 = 1; type-II feedforward undoes the Pauli
 * byproduct, leaving R_x(-beta) R_z(-alpha)|+> on every branch.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "oneway/cluster.hpp"
#include "oneway/measure.hpp"
#include "oneway/noise.hpp"
#include "oneway/qcore.hpp"

namespace oneway::mbqc {

/// New position k holds cluster qubit kLin3Order[k].
inline constexpr std::array<std::size_t, 4> kLin3Order{
    cluster::EncodingMap::kSpinSpatial, cluster::EncodingMap::kPhotonSpatial,
    cluster::EncodingMap::kPhotonPolarization, cluster::EncodingMap::kSpinPolarization};

/// Three-qubit register: 0 = photon spatial, 1 = photon polarization, 2 = spin polarization.
struct Lin3State {
    DensityMatrix state;
    double postselect_prob = 0.0;
};

Lin3State to_lin3(const DensityMatrix &cluster_rho, int postselect_outcome = 0);

/// Imperfections applied to the resource: preparation, then storage for `storage_time_us`.
struct NoiseModel {
    cluster::PreparationParams prep;
    noise::StorageNoiseParams storage;
    double storage_time_us = 0.0;

    /// Reference calibration with the first-readout storage time.
    static NoiseModel calibrated();
};

/// The 4-qubit cluster the protocol consumes: ideal, or prepared and stored per `noise`.
DensityMatrix resource_state(const std::optional<NoiseModel> &noise);

enum class Mode { exact, sampled };

struct RotationRequest {
    double alpha = 0.0;
    double beta = 0.0;
    bool feedforward_enabled = true;
    Mode mode = Mode::exact;
    std::uint64_t shots = 0;  ///< sampled mode only; must be >= 1 there
    std::optional<NoiseModel> noise;

    void validate() const;
};

/// Feedforward decisions taken on one branch, in order.
struct FeedforwardTrace {
    int s2 = 0;
    double q3_basis_angle = 0.0;  ///< (-1)^{s2} beta with feedforward, beta without
    int s3 = 0;
    bool z_correction = false;    ///< sigma_z applied because s2 = 1
    bool x_correction = false;    ///< sigma_x applied because s3 = 1
};

struct BranchOutput {
    int s2 = 0;
    int s3 = 0;
    double probability = 0.0;
    bool reachable = true;          ///< false when the branch has zero probability
    DensityMatrix raw_output;       ///< output qubit before Pauli corrections
    DensityMatrix corrected_output; ///< after corrections (equal to raw without feedforward)
    FeedforwardTrace trace;
    std::uint64_t shots = 0;        ///< sampled mode tally
};

struct RotationResult {
    std::array<BranchOutput, 4> branches;  ///< index 2 * s2 + s3
    DensityMatrix corrected_output;        ///< branch mixture after corrections
    StateVector target;                    ///< R_x(-beta) R_z(-alpha) |+>
    double fidelity = 0.0;
    double postselect_prob = 0.0;

    const BranchOutput &branch(int s2, int s3) const { return branches[static_cast<std::size_t>(2 * s2 + s3)]; }
};

StateVector plus_state();

/// R_x(-beta) R_z(-alpha) |+>
StateVector rotation_target(double alpha, double beta);

/// sigma_x^{s3} sigma_z^{s2} R_x((-1)^{s2+1} beta) R_z(-alpha) |+>
StateVector byproduct_state(double alpha, double beta, int s2, int s3);

RotationResult run_rotation(const RotationRequest &req, measure::RandomSource &rng);

struct BranchCheck {
    bool passed = false;
    /// Fixed basis B(beta), raw output vs the byproduct formula, per branch 2*s2+s3.
    std::array<double, 4> residuals{};
    /// Adaptive basis, corrected output vs the target, per branch.
    std::array<double, 4> corrected_residuals{};
    double max_residual = 0.0;
};

BranchCheck branch_verify(double alpha, double beta, double tol = 1e-9);

enum class SweepMode {
    rx,  ///< alpha = pi/2, beta swept
    rz,  ///< beta = 0, alpha swept
};

struct SweepPoint {
    double angle = 0.0;
    double fidelity = 0.0;
    std::array<double, 4> branch_fidelities{};
    std::array<double, 4> branch_probabilities{};
};

/// Angles 0, step, ..., 2 pi (inclusive). The template's alpha/beta are overridden.
std::vector<SweepPoint> sweep(SweepMode mode, double step, const RotationRequest &templ,
                              const measure::RandomSource &rng);

double mean_fidelity(const std::vector<SweepPoint> &points);

}  // namespace oneway::mbqc
