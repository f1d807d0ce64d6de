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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oneway/qcore.hpp"

namespace oneway::detail {

// Builds value types from already-trusted matrices, skipping the O(d^3)
// validation. Only internal code paths whose output is invariant-preserving
// by construction may use it.
struct Access {
    static StateVector state(std::size_t n, Vector v) { return StateVector(n, std::move(v)); }
    static DensityMatrix density(std::size_t n, Matrix m) {
        // Symmetrize away rounding so downstream Hermitian checks stay tight.
        Matrix h = 0.5 * (m + m.adjoint());
        return DensityMatrix(n, std::move(h));
    }
    static UnitaryOperator unitary(std::size_t n, Matrix m) { return UnitaryOperator(n, std::move(m)); }
    static ObservableOperator observable(std::size_t n, Matrix m) {
        return ObservableOperator(n, std::move(m));
    }
    static QuantumChannel channel(std::size_t n, std::vector<Matrix> k) {
        return QuantumChannel(n, std::move(k));
    }
};

std::size_t qubits_for_dimension(Eigen::Index dim);
void check_targets(std::span<const std::size_t> targets, std::size_t num_qubits);

// m <- (op embedded on targets) * m, acting on the row index.
void left_apply(Matrix &m, const Matrix &op, std::span<const std::size_t> targets,
                std::size_t num_qubits);

}  // namespace oneway::detail
