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

#include "oneway/mbqc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oneway/constants.hpp"

namespace oneway::mbqc {

namespace {

constexpr std::size_t kSpatialQubit = 0;
constexpr std::size_t kPolarizationQubit = 1;

UnitaryOperator pauli_power(const UnitaryOperator &p, bool apply) {
    return apply ? p : gates::identity();
}

// Exact per-branch outputs; probabilities are the Born weights of (s2, s3).
std::array<BranchOutput, 4> enumerate_branches(const DensityMatrix &lin3, double alpha, double beta,
                                               bool feedforward) {
    std::array<BranchOutput, 4> out;
    const auto b2 = measure::MeasurementBasis::equatorial(alpha);
    const DensityMatrix placeholder = DensityMatrix::maximally_mixed(1);
    for (int s2 = 0; s2 < 2; ++s2) {
        std::optional<measure::Conditioned> after2;
        try {
            after2 = measure::condition_on(lin3, kSpatialQubit, b2, s2);
        } catch (const std::domain_error &) {
            after2.reset();
        }
        const double angle = feedforward && s2 == 1 ? -beta : beta;
        const auto b3 = measure::MeasurementBasis::equatorial(angle);
        for (int s3 = 0; s3 < 2; ++s3) {
            auto &br = out[static_cast<std::size_t>(2 * s2 + s3)];
            br.s2 = s2;
            br.s3 = s3;
            br.trace = {s2, angle, s3, feedforward && s2 == 1, feedforward && s3 == 1};
            br.raw_output = placeholder;
            br.corrected_output = placeholder;
            if (!after2) {
                br.reachable = false;
                continue;
            }
            // After removing qubit 0 the polarization qubit sits at index 0.
            std::optional<measure::Conditioned> after3;
            try {
                after3 = measure::condition_on(after2->state, kPolarizationQubit - 1, b3, s3);
            } catch (const std::domain_error &) {
                after3.reset();
            }
            if (!after3) {
                br.reachable = false;
                continue;
            }
            br.probability = after2->probability * after3->probability;
            br.raw_output = after3->state;
            DensityMatrix corrected = after3->state;
            if (feedforward) {
                corrected = apply_unitary(corrected, pauli_power(gates::pauli_z(), s2 == 1), {0});
                corrected = apply_unitary(corrected, pauli_power(gates::pauli_x(), s3 == 1), {0});
            }
            br.corrected_output = corrected;
        }
    }
    return out;
}

DensityMatrix mix(const std::array<BranchOutput, 4> &branches, const std::array<double, 4> &w) {
    std::vector<double> weights;
    std::vector<DensityMatrix> states;
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (branches[i].reachable && w[i] > 0.0) {
            weights.push_back(w[i]);
            states.push_back(branches[i].corrected_output);
            total += w[i];
        }
    }
    for (auto &x : weights) {
        x /= total;
    }
    return DensityMatrix::mixture(weights, states);
}

}  // namespace

NoiseModel NoiseModel::calibrated() {
    const auto &cal = noise::reference_calibration();
    return {cal.prep, cal.noise, constants::kFirstReadoutStorageUs};
}

Lin3State to_lin3(const DensityMatrix &cluster_rho, int postselect_outcome) {
    if (cluster_rho.num_qubits() != 4) {
        throw std::invalid_argument("lin3 reduction needs the 4-qubit cluster");
    }
    const DensityMatrix reordered = permute_qubits(cluster_rho, kLin3Order);
    const DensityMatrix rotated = apply_unitary(
        apply_unitary(reordered, gates::hadamard(), {0}), gates::hadamard(), {3});
    const auto cond = measure::condition_on(rotated, 0, measure::MeasurementBasis::computational(),
                                            postselect_outcome);
    return {cond.state, cond.probability};
}

DensityMatrix resource_state(const std::optional<NoiseModel> &noise) {
    if (!noise) {
        return DensityMatrix::from_state(cluster::ideal_cluster_state());
    }
    const DensityMatrix prepared = cluster::prepare_cluster(noise->prep);
    return noise::apply_storage(prepared, noise->storage_time_us, noise->storage);
}

void RotationRequest::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::invalid_argument("rotation angles must be finite");
    }
    if (mode == Mode::sampled && shots < 1) {
        throw std::invalid_argument("sampled mode needs at least one shot");
    }
    if (noise) {
        noise->prep.validate();
        noise->storage.validate();
        if (noise->storage_time_us < 0.0) {
            throw std::invalid_argument("storage time must be nonnegative");
        }
    }
}

StateVector plus_state() {
    Vector v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    return StateVector::from_amplitudes(std::move(v));
}

StateVector rotation_target(double alpha, double beta) {
    const StateVector rz = apply_unitary(plus_state(), rotation_gate(Axis::z, -alpha), {0});
    return apply_unitary(rz, rotation_gate(Axis::x, -beta), {0});
}

StateVector byproduct_state(double alpha, double beta, int s2, int s3) {
    const double sign = s2 == 1 ? 1.0 : -1.0;  // (-1)^{s2+1}
    StateVector s = apply_unitary(plus_state(), rotation_gate(Axis::z, -alpha), {0});
    s = apply_unitary(s, rotation_gate(Axis::x, sign * beta), {0});
    s = apply_unitary(s, pauli_power(gates::pauli_z(), s2 == 1), {0});
    return apply_unitary(s, pauli_power(gates::pauli_x(), s3 == 1), {0});
}

RotationResult run_rotation(const RotationRequest &req, measure::RandomSource &rng) {
    req.validate();
    const Lin3State lin3 = to_lin3(resource_state(req.noise));
    auto branches = enumerate_branches(lin3.state, req.alpha, req.beta, req.feedforward_enabled);

    std::array<double, 4> weights{};
    if (req.mode == Mode::exact) {
        for (std::size_t i = 0; i < 4; ++i) {
            weights[i] = branches[i].probability;
        }
    } else {
        // Sequential Born draws: s2 first, then s3 conditioned on s2.
        const double p_s2_0 = branches[0].probability + branches[1].probability;
        const double p_s2_1 = branches[2].probability + branches[3].probability;
        for (std::uint64_t shot = 0; shot < req.shots; ++shot) {
            const std::array<double, 2> p2{p_s2_0, p_s2_1};
            const auto s2 = rng.categorical(p2);
            const std::array<double, 2> p3{branches[2 * s2].probability, branches[2 * s2 + 1].probability};
            const auto s3 = rng.categorical(p3);
            ++branches[2 * s2 + s3].shots;
        }
        for (std::size_t i = 0; i < 4; ++i) {
            weights[i] = static_cast<double>(branches[i].shots) / static_cast<double>(req.shots);
        }
    }

    const StateVector target = rotation_target(req.alpha, req.beta);
    DensityMatrix corrected = mix(branches, weights);
    const double f = fidelity(target, corrected);
    return {std::move(branches), std::move(corrected), target, f, lin3.postselect_prob};
}

BranchCheck branch_verify(double alpha, double beta, double tol) {
    const Lin3State lin3 = to_lin3(resource_state(std::nullopt));
    const auto fixed = enumerate_branches(lin3.state, alpha, beta, false);
    const auto adaptive = enumerate_branches(lin3.state, alpha, beta, true);
    const StateVector target = rotation_target(alpha, beta);
    BranchCheck check;
    for (int s2 = 0; s2 < 2; ++s2) {
        for (int s3 = 0; s3 < 2; ++s3) {
            const auto i = static_cast<std::size_t>(2 * s2 + s3);
            check.residuals[i] = phase_aligned_distance(byproduct_state(alpha, beta, s2, s3),
                                                        dominant_eigenvector(fixed[i].raw_output));
            check.corrected_residuals[i] =
                phase_aligned_distance(target, dominant_eigenvector(adaptive[i].corrected_output));
            check.max_residual = std::max({check.max_residual, check.residuals[i],
                                           check.corrected_residuals[i]});
        }
    }
    check.passed = check.max_residual < tol;
    return check;
}

std::vector<SweepPoint> sweep(SweepMode mode, double step, const RotationRequest &templ,
                              const measure::RandomSource &rng) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("sweep step must be positive");
    }
    const auto count = static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi / step));
    std::vector<SweepPoint> out;
    out.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
        const double angle = static_cast<double>(k) * step;
        RotationRequest req = templ;
        if (mode == SweepMode::rx) {
            req.alpha = std::numbers::pi / 2.0;
            req.beta = angle;
        } else {
            req.alpha = angle;
            req.beta = 0.0;
        }
        measure::RandomSource stream(rng.seed(), rng.stream_id() + k);
        const RotationResult r = run_rotation(req, stream);
        SweepPoint p{angle, r.fidelity, {}, {}};
        for (std::size_t i = 0; i < 4; ++i) {
            p.branch_fidelities[i] =
                r.branches[i].reachable ? fidelity(r.target, r.branches[i].corrected_output) : 0.0;
            p.branch_probabilities[i] = r.branches[i].probability;
        }
        out.push_back(p);
    }
    return out;
}

double mean_fidelity(const std::vector<SweepPoint> &points) {
    if (points.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto &p : points) {
        acc += p.fidelity;
    }
    return acc / static_cast<double>(points.size());
}

}  // namespace oneway::mbqc
