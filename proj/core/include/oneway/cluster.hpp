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
 * Hyperentangled photon/spin-wave state, the four-qubit cluster derived from
 * it, and the stabilizer witness used to certify it.
 *
 * Logical register (index 0 first):
 *   0  Stokes photon polarization   |H>,|V>     -> |0>,|1>
 *   1  Stokes photon spatial mode   |l>,|r>     -> |0>,|1>
 *   2  spin-wave polarization       |b0>,|b+2>  -> |0>,|1>
 *   3  spin-wave wave vector        |dn>,|up>   -> |0>,|1>
 */

#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "oneway/qcore.hpp"

namespace oneway::cluster {

/// Index of each physical degree of freedom in the logical register.
struct EncodingMap {
    static constexpr std::size_t kPhotonPolarization = 0;
    static constexpr std::size_t kPhotonSpatial = 1;
    static constexpr std::size_t kSpinPolarization = 2;
    static constexpr std::size_t kSpinSpatial = 3;

    struct Degree {
        std::string_view name;
        std::string_view zero_label;
        std::string_view one_label;
    };
    static constexpr std::array<Degree, 4> kDegrees{{
        {"photon_polarization", "H", "V"},
        {"photon_spatial", "l", "r"},
        {"spin_polarization", "b0", "b+2"},
        {"spin_spatial", "down", "up"},
    }};
};

struct PreparationParams {
    double theta = 0.0;                ///< spatial propagation phase, radians
    double imbalance = 1.0;            ///< amplitude ratio of |V b+2> to |H b0>
    double spatial_white_noise = 0.0;  ///< weight of I/4 on the spatial pair

    static PreparationParams ideal() { return {}; }
    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Ideal |C4> = (|0000> + |1010> + |0101> - |1111>) / 2.
StateVector ideal_cluster_state();

/// (|00> +/- |11>)/sqrt(2) on two qubits.
StateVector bell_state(bool minus = false);

DensityMatrix prepare_hyper(const PreparationParams &params);

/// prepare_hyper followed by a controlled phase on (photon polarization, photon spatial).
DensityMatrix prepare_cluster(const PreparationParams &params);

/// Maps a hyperentangled state to its cluster counterpart and back (self-inverse).
DensityMatrix toggle_cluster_phase(const DensityMatrix &rho);

/// The six stabilizer products entering the witness, as Pauli strings.
inline constexpr std::array<std::string_view, 6> kWitnessTerms{
    "XIXZ", "XZXI", "IZIZ", "IXZX", "ZXIX", "ZIZI"};

/// W = (4 I - sum of the six stabilizer products) / 2.
ObservableOperator witness_operator();

struct WitnessReport {
    double expectation = 0.0;
    double fidelity_lower_bound = 0.0;  ///< 1/2 - expectation/2
    bool genuinely_entangled = false;   ///< expectation < 0
};

WitnessReport witness_report(double expectation);
WitnessReport evaluate_witness(const DensityMatrix &rho);

}  // namespace oneway::cluster
