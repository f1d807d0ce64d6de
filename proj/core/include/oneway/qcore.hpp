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
 * Dense complex linear algebra for small qubit registers.
 *
 * Qubit index 0 is the most significant bit of a basis-state index, so the
 * ket |q0 q1 ... q(n-1)> is read left to right. Every module in the library
 * shares this ordering.
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace oneway {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Registers are dense; 8 qubits (256 amplitudes) is the ceiling.
inline constexpr std::size_t kMaxQubits = 8;

/// Numerical tolerances used by the validating constructors and comparisons.
struct Tolerances {
    double norm = 1e-12;       ///< |sum |a_i|^2 - 1| for state vectors
    double hermitian = 1e-10;  ///< max |A - A^dagger|
    double trace = 1e-10;      ///< |tr(rho) - 1|
    double psd = 1e-9;         ///< smallest admissible eigenvalue is -psd
    double unitary = 1e-10;    ///< max |U^dagger U - I|
    double kraus = 1e-10;      ///< max |sum K^dagger K - I|
    double imaginary = 1e-10;  ///< residue discarded from real-valued traces
};

inline constexpr Tolerances kDefaultTolerances{};

namespace detail {
struct Access;
}

/// Pure state on n qubits, unit norm.
class StateVector {
  public:
    /// Single-qubit |0>.
    StateVector() : num_qubits_(1), amps_(Vector::Unit(2, 0)) {}
    static StateVector from_amplitudes(Vector amplitudes,
                                       const Tolerances &tol = kDefaultTolerances);
    /// Normalizes the input first; throws if the vector is zero.
    static StateVector normalized(Vector amplitudes);
    static StateVector basis(std::size_t num_qubits, std::size_t index);
    /// Computational basis state from a bitstring such as "0101".
    static StateVector basis(std::string_view bits);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector &amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  private:
    friend struct detail::Access;
    StateVector(std::size_t n, Vector amps) : num_qubits_(n), amps_(std::move(amps)) {}
    std::size_t num_qubits_;
    Vector amps_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
  public:
    /// Single-qubit |0><0|.
    DensityMatrix() : num_qubits_(1), rho_(Matrix::Zero(2, 2)) { rho_(0, 0) = 1.0; }
    static DensityMatrix from_matrix(Matrix entries,
                                     const Tolerances &tol = kDefaultTolerances);
    static DensityMatrix from_state(const StateVector &psi);
    static DensityMatrix maximally_mixed(std::size_t num_qubits);
    /// Convex combination sum_i w_i rho_i; weights must be nonnegative and sum to 1.
    static DensityMatrix mixture(std::span<const double> weights,
                                 std::span<const DensityMatrix> states);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(rho_.rows()); }
    const Matrix &matrix() const { return rho_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

  private:
    friend struct detail::Access;
    DensityMatrix(std::size_t n, Matrix rho) : num_qubits_(n), rho_(std::move(rho)) {}
    std::size_t num_qubits_;
    Matrix rho_;
};

class UnitaryOperator {
  public:
    static UnitaryOperator from_matrix(Matrix entries,
                                       const Tolerances &tol = kDefaultTolerances);
    static UnitaryOperator identity(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    const Matrix &matrix() const { return u_; }
    UnitaryOperator adjoint() const { return UnitaryOperator(num_qubits_, u_.adjoint()); }
    UnitaryOperator operator*(const UnitaryOperator &rhs) const;

  private:
    friend struct detail::Access;
    UnitaryOperator(std::size_t n, Matrix u) : num_qubits_(n), u_(std::move(u)) {}
    std::size_t num_qubits_;
    Matrix u_;
};

class ObservableOperator {
  public:
    static ObservableOperator from_matrix(Matrix entries,
                                          const Tolerances &tol = kDefaultTolerances);
    static ObservableOperator identity(std::size_t num_qubits);
    /// Tensor product of Pauli factors, e.g. "XIXZ". Letters I, X, Y, Z.
    static ObservableOperator pauli_string(std::string_view paulis);
    /// Rank-1 projector |v><v| for a normalized vector v.
    static ObservableOperator projector(const Vector &v);

    std::size_t num_qubits() const { return num_qubits_; }
    const Matrix &matrix() const { return h_; }

    ObservableOperator operator+(const ObservableOperator &rhs) const;
    ObservableOperator operator-(const ObservableOperator &rhs) const;
    ObservableOperator operator*(double scale) const;

  private:
    friend struct detail::Access;
    ObservableOperator(std::size_t n, Matrix h) : num_qubits_(n), h_(std::move(h)) {}
    std::size_t num_qubits_;
    Matrix h_;
};

/// Completely positive, trace-preserving map given by its Kraus operators.
class QuantumChannel {
  public:
    static QuantumChannel from_kraus(std::vector<Matrix> kraus,
                                     const Tolerances &tol = kDefaultTolerances);
    static QuantumChannel identity(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Matrix> &kraus_operators() const { return kraus_; }

  private:
    friend struct detail::Access;
    QuantumChannel(std::size_t n, std::vector<Matrix> k) : num_qubits_(n), kraus_(std::move(k)) {}
    std::size_t num_qubits_;
    std::vector<Matrix> kraus_;
};

namespace gates {
UnitaryOperator identity();
UnitaryOperator hadamard();
UnitaryOperator pauli_x();
UnitaryOperator pauli_y();
UnitaryOperator pauli_z();
/// diag(1, 1, 1, -1)
UnitaryOperator controlled_z();
}  // namespace gates

enum class Axis { x, z };

/// exp(-i angle sigma_axis / 2)
UnitaryOperator rotation_gate(Axis axis, double angle);

// Kronecker products; the first factor occupies the most significant qubits.
StateVector tensor(std::span<const StateVector> factors);
UnitaryOperator tensor(std::span<const UnitaryOperator> factors);
DensityMatrix tensor(std::span<const DensityMatrix> factors);
ObservableOperator tensor(std::span<const ObservableOperator> factors);
StateVector tensor(std::initializer_list<StateVector> factors);
UnitaryOperator tensor(std::initializer_list<UnitaryOperator> factors);
DensityMatrix tensor(std::initializer_list<DensityMatrix> factors);

/// Embeds u on `targets` (listed order = u's qubit order), identity elsewhere.
StateVector apply_unitary(const StateVector &psi, const UnitaryOperator &u,
                          std::span<const std::size_t> targets);
DensityMatrix apply_unitary(const DensityMatrix &rho, const UnitaryOperator &u,
                            std::span<const std::size_t> targets);
StateVector apply_unitary(const StateVector &psi, const UnitaryOperator &u,
                          std::initializer_list<std::size_t> targets);
DensityMatrix apply_unitary(const DensityMatrix &rho, const UnitaryOperator &u,
                            std::initializer_list<std::size_t> targets);

DensityMatrix apply_channel(const DensityMatrix &rho, const QuantumChannel &channel,
                            std::span<const std::size_t> targets);
DensityMatrix apply_channel(const DensityMatrix &rho, const QuantumChannel &channel,
                            std::initializer_list<std::size_t> targets);

/**
 * Reorders qubits. `order[k]` names the old qubit placed at new position k,
 * so order = {3, 1, 0, 2} moves old qubit 3 to the front.
 */
StateVector permute_qubits(const StateVector &psi, std::span<const std::size_t> order);
DensityMatrix permute_qubits(const DensityMatrix &rho, std::span<const std::size_t> order);
StateVector permute_qubits(const StateVector &psi, std::initializer_list<std::size_t> order);
DensityMatrix permute_qubits(const DensityMatrix &rho, std::initializer_list<std::size_t> order);

/// Traces out every qubit not in `keep`; the result lists kept qubits in `keep` order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::size_t> keep);

/// Re tr(rho * obs).
double expectation(const DensityMatrix &rho, const ObservableOperator &obs);
double expectation(const StateVector &psi, const ObservableOperator &obs);

/// |<a|b>|^2, <a|rho|a>, or the Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const StateVector &a, const StateVector &b);
double fidelity(const StateVector &a, const DensityMatrix &b);
double fidelity(const DensityMatrix &a, const StateVector &b);
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

/**
 * Distance between two pure states after removing the global phase. The phase
 * is fixed on the largest-magnitude amplitude of `a`. Returns the max-norm of
 * the entrywise difference.
 */
double phase_aligned_distance(const StateVector &a, const StateVector &b);
bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol = 1e-10);

/// Largest-magnitude eigenvector of a density matrix, i.e. its best pure approximation.
StateVector dominant_eigenvector(const DensityMatrix &rho);

/// Bloch vector (<X>, <Y>, <Z>) of a single-qubit state.
std::array<double, 3> bloch_vector(const DensityMatrix &rho);

std::vector<double> eigenvalues(const DensityMatrix &rho);

}  // namespace oneway
