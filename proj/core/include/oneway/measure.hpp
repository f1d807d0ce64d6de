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
 * Projective single-qubit measurements, seeded sampling and count tables.
 *
 * Outcome 0 is the "+" projector of an equatorial basis
 * (|0> + e^{i alpha}|1>)/sqrt(2) and |0> of the computational basis.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oneway/qcore.hpp"

namespace oneway::measure {

struct MeasurementBasis {
    enum class Kind { computational, equatorial };
    Kind kind = Kind::computational;
    double alpha = 0.0;  ///< equatorial phase; ignored for computational

    static MeasurementBasis computational() { return {Kind::computational, 0.0}; }
    static MeasurementBasis equatorial(double alpha) { return {Kind::equatorial, alpha}; }
    static MeasurementBasis pauli_x() { return equatorial(0.0); }
    static MeasurementBasis pauli_y();
    static MeasurementBasis pauli_z() { return computational(); }
    /// 'X', 'Y' or 'Z'.
    static MeasurementBasis pauli(char label);

    /// Basis vectors for outcomes 0 and 1.
    std::array<Vector, 2> vectors() const;

    friend bool operator==(const MeasurementBasis &, const MeasurementBasis &) = default;
};

/// One basis per qubit of the register.
using MeasurementSetting = std::vector<MeasurementBasis>;

/// All 3^n combinations of X, Y, Z eigenbases, first qubit varying slowest.
std::vector<MeasurementSetting> pauli_settings(std::size_t num_qubits);
/// "XZY..." label for a setting built from Pauli bases; throws otherwise.
std::string setting_label(const MeasurementSetting &setting);

struct CountTable {
    MeasurementSetting setting;
    std::uint64_t shots = 0;
    /// Outcome bitstring (qubit 0 first) -> count; zero counts may be omitted.
    std::map<std::string, std::uint64_t> counts;

    /// Checks counts sum to shots and every key matches the register size.
    void validate() const;
};

/**
 * Seeded generator. The same (seed, stream_id) pair always reproduces the
 * same draws; uniform() is derived from raw 64-bit outputs so results do not
 * depend on the standard library's distribution implementations.
 */
class RandomSource {
  public:
    RandomSource(std::uint64_t seed = 0, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    /// Uniform double in [0, 1).
    double uniform();
    /// Index i drawn with probability weights[i] / sum(weights).
    std::size_t categorical(std::span<const double> weights);

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

std::pair<ObservableOperator, ObservableOperator> projectors(const MeasurementBasis &basis);

template <typename State>
struct MeasurementOutcome {
    int outcome = 0;
    double probability = 0.0;
    State post_state;
};

/// Samples an outcome with its Born probability and collapses the measured qubit.
MeasurementOutcome<DensityMatrix> measure_qubit(const DensityMatrix &rho, std::size_t qubit,
                                                const MeasurementBasis &basis, RandomSource &rng);
MeasurementOutcome<StateVector> measure_qubit(const StateVector &psi, std::size_t qubit,
                                              const MeasurementBasis &basis, RandomSource &rng);

/// Born probabilities {p0, p1} for measuring one qubit.
std::array<double, 2> outcome_probabilities(const DensityMatrix &rho, std::size_t qubit,
                                            const MeasurementBasis &basis);

struct Conditioned {
    double probability = 0.0;
    DensityMatrix state;  ///< remaining qubits, renormalized
};

/// Projects `qubit` onto the given outcome and removes it from the register.
/// Throws std::domain_error when the outcome probability is below 1e-12.
Conditioned condition_on(const DensityMatrix &rho, std::size_t qubit,
                         const MeasurementBasis &basis, int outcome);

/// Joint outcome distribution for a full setting, indexed by bitstring value.
std::vector<double> setting_probabilities(const DensityMatrix &rho, const MeasurementSetting &setting);

/// Product measurement vector for one outcome of a setting.
Vector setting_vector(const MeasurementSetting &setting, std::size_t outcome);

/**
 * Multinomial shot counts for every setting. Setting k draws from its own
 * stream (rng.seed(), rng.stream_id() + k), so tables are reproducible and
 * independent of evaluation order.
 */
std::vector<CountTable> sample_counts(const DensityMatrix &rho,
                                      std::span<const MeasurementSetting> settings,
                                      std::uint64_t shots, const RandomSource &rng);

std::string outcome_bitstring(std::size_t outcome, std::size_t num_qubits);

}  // namespace oneway::measure
