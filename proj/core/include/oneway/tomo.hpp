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
 * Maximum-likelihood state tomography from Pauli-basis count tables.
 *
 * The estimate is parametrized as rho = T^dagger T / tr(T^dagger T) with T
 * lower triangular, so every iterate is a physical state. Iterations follow
 * the diluted R-rho-R ascent T <- T (I + eps R) with R the likelihood
 * gradient, followed by re-triangularization; eps adapts so the likelihood
 * never decreases between accepted iterates.
 */

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "oneway/measure.hpp"
#include "oneway/qcore.hpp"

namespace oneway::tomo {

struct MLConfig {
    int max_iterations = 5000;
    /// Stop once the mean log-likelihood per count improves by less than this.
    double ll_tolerance = 1e-10;
    /// Added to the diagonal of the maximally mixed starting factor.
    double regularizer = 1e-3;

    void validate() const;
};

/// Settings whose projectors do not span the operator space.
class IncompleteSettingsError : public std::invalid_argument {
  public:
    IncompleteSettingsError(std::size_t rank, std::size_t required);
    std::size_t rank() const { return rank_; }
    std::size_t required() const { return required_; }

  private:
    std::size_t rank_;
    std::size_t required_;
};

struct MLResult {
    DensityMatrix rho_hat;
    Matrix cholesky_factor;  ///< lower-triangular T, rho_hat = T^dagger T / tr
    double log_likelihood = 0.0;
    int iterations_used = 0;
    bool converged = false;
    /// Log-likelihood of the starting point followed by every accepted iterate.
    std::vector<double> ll_history;
};

/// Rank of the span of all outcome projectors of the given settings.
std::size_t design_rank(std::span<const measure::MeasurementSetting> settings);

/// Multinomial log-likelihood sum n(o|s) log p(o|s; rho).
double log_likelihood(const DensityMatrix &rho, std::span<const measure::CountTable> tables);

MLResult maximum_likelihood(std::span<const measure::CountTable> tables, const MLConfig &cfg = {});

struct ReducedFidelities {
    double polarization = 0.0;  ///< qubits (0, 2) against (|00> +/- |11>)/sqrt(2)
    double spatial = 0.0;       ///< qubits (1, 3), same targets
};

/// Expects the hyperentangled (pre-phase) state; use toggle_cluster_phase on a cluster first.
ReducedFidelities reduced_fidelities(const DensityMatrix &rho4_pre_phase);

struct TomographyReport {
    DensityMatrix rho_hat;
    double log_likelihood = 0.0;
    int iterations_used = 0;
    bool converged = false;
    std::vector<double> ll_history;
    // Populated for 4-qubit reconstructions only.
    std::optional<double> fidelity_vs_C4;
    std::optional<double> reduced_polarization_fidelity;
    std::optional<double> reduced_spatial_fidelity;
};

TomographyReport reconstruct(std::span<const measure::CountTable> tables, const MLConfig &cfg = {});

}  // namespace oneway::tomo
