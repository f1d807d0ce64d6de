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

#include "oneway/cluster.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail.hpp"

namespace oneway::cluster {

void PreparationParams::validate() const {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("theta must be finite");
    }
    if (!(imbalance > 0.0) || !std::isfinite(imbalance)) {
        throw std::invalid_argument("imbalance must be a positive finite ratio");
    }
    if (!(spatial_white_noise >= 0.0 && spatial_white_noise <= 1.0)) {
        throw std::invalid_argument("spatial_white_noise must lie in [0, 1]");
    }
}

StateVector ideal_cluster_state() {
    Vector v = Vector::Zero(16);
    v(0b0000) = 0.5;
    v(0b1010) = 0.5;
    v(0b0101) = 0.5;
    v(0b1111) = -0.5;
    return StateVector::from_amplitudes(std::move(v));
}

StateVector bell_state(bool minus) {
    Vector v = Vector::Zero(4);
    v(0) = 1.0 / std::numbers::sqrt2;
    v(3) = (minus ? -1.0 : 1.0) / std::numbers::sqrt2;
    return StateVector::from_amplitudes(std::move(v));
}

DensityMatrix prepare_hyper(const PreparationParams &params) {
    params.validate();

    // Polarization pair (photon, spin): |00> + r|11>.
    Vector pol = Vector::Zero(4);
    pol(0) = 1.0;
    pol(3) = params.imbalance;
    const auto pol_rho = DensityMatrix::from_state(StateVector::normalized(pol));

    // Spatial pair (photon, spin): |00> + e^{i theta}|11>, mixed with white noise.
    Vector sp = Vector::Zero(4);
    sp(0) = 1.0;
    sp(3) = std::polar(1.0, params.theta);
    const Matrix pure = StateVector::normalized(sp).amplitudes() *
                        StateVector::normalized(sp).amplitudes().adjoint();
    const double p = params.spatial_white_noise;
    const auto sp_rho =
        detail::Access::density(2, (1.0 - p) * pure + p * Matrix::Identity(4, 4) / 4.0);

    // tensor order is (photon pol, spin pol, photon spatial, spin spatial).
    const DensityMatrix grouped = tensor({pol_rho, sp_rho});
    return permute_qubits(grouped, {0, 2, 1, 3});
}

DensityMatrix toggle_cluster_phase(const DensityMatrix &rho) {
    if (rho.num_qubits() != 4) {
        throw std::invalid_argument("cluster phase acts on the 4-qubit register");
    }
    return apply_unitary(rho, gates::controlled_z(),
                         {EncodingMap::kPhotonPolarization, EncodingMap::kPhotonSpatial});
}

DensityMatrix prepare_cluster(const PreparationParams &params) {
    return toggle_cluster_phase(prepare_hyper(params));
}

ObservableOperator witness_operator() {
    static const ObservableOperator w = [] {
        ObservableOperator sum = ObservableOperator::identity(4) * 4.0;
        for (auto term : kWitnessTerms) {
            sum = sum - ObservableOperator::pauli_string(term);
        }
        return sum * 0.5;
    }();
    return w;
}

WitnessReport witness_report(double expectation) {
    return {expectation, 0.5 - 0.5 * expectation, expectation < 0.0};
}

WitnessReport evaluate_witness(const DensityMatrix &rho) {
    if (rho.num_qubits() != 4) {
        throw std::invalid_argument("witness is defined on 4-qubit states");
    }
    return witness_report(expectation(rho, witness_operator()));
}

}  // namespace oneway::cluster
