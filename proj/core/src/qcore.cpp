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

#include "oneway/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "detail.hpp"

namespace oneway {

namespace detail {

std::size_t qubits_for_dimension(Eigen::Index dim) {
    if (dim < 2) {
        throw std::invalid_argument("register dimension must be at least 2");
    }
    std::size_t n = 0;
    Eigen::Index d = dim;
    while (d > 1) {
        if (d % 2 != 0) {
            throw std::invalid_argument("register dimension " + std::to_string(dim) +
                                        " is not a power of two");
        }
        d /= 2;
        ++n;
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("registers are limited to " + std::to_string(kMaxQubits) +
                                    " qubits");
    }
    return n;
}

void check_targets(std::span<const std::size_t> targets, std::size_t num_qubits) {
    if (targets.empty()) {
        throw std::invalid_argument("target list is empty");
    }
    std::vector<bool> seen(num_qubits, false);
    for (auto q : targets) {
        if (q >= num_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                    std::to_string(num_qubits) + "-qubit register");
        }
        if (seen[q]) {
            throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
        }
        seen[q] = true;
    }
}

void left_apply(Matrix &m, const Matrix &op, std::span<const std::size_t> targets,
                std::size_t num_qubits) {
    const std::size_t k = targets.size();
    const std::size_t sub = std::size_t{1} << k;
    if (static_cast<std::size_t>(op.rows()) != sub || static_cast<std::size_t>(op.cols()) != sub) {
        throw std::invalid_argument("operator arity does not match target count");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;

    // Bit position (from the least significant end) of each target.
    std::vector<std::size_t> shift(k);
    std::size_t target_mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
        shift[j] = num_qubits - 1 - targets[j];
        target_mask |= std::size_t{1} << shift[j];
    }
    // Offsets for every local index s; targets[0] is the local MSB.
    std::vector<std::size_t> offset(sub, 0);
    for (std::size_t s = 0; s < sub; ++s) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((s >> (k - 1 - j)) & 1U) {
                offset[s] |= std::size_t{1} << shift[j];
            }
        }
    }

    Vector in(static_cast<Eigen::Index>(sub));
    Vector out(static_cast<Eigen::Index>(sub));
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & target_mask) {
            continue;
        }
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            for (std::size_t s = 0; s < sub; ++s) {
                in(static_cast<Eigen::Index>(s)) = m(static_cast<Eigen::Index>(base | offset[s]), c);
            }
            out.noalias() = op * in;
            for (std::size_t s = 0; s < sub; ++s) {
                m(static_cast<Eigen::Index>(base | offset[s]), c) = out(static_cast<Eigen::Index>(s));
            }
        }
    }
}

}  // namespace detail

namespace {

double max_abs(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_square(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("operator matrix must be square");
    }
}

void require_same_dimension(std::size_t a, std::size_t b) {
    if (a != b) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                                    std::to_string(b));
    }
}

// Eigenvalues at rounding level are zeroed; their square roots would otherwise
// leak O(1e-8) into fidelities of rank-deficient states.
Eigen::VectorXd clean_spectrum(const Eigen::VectorXd &vals) {
    const double cut = 1e-14 * std::max(1.0, vals.cwiseAbs().maxCoeff());
    return vals.unaryExpr([cut](double v) { return v < cut ? 0.0 : v; });
}

Matrix sqrt_psd(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd vals = clean_spectrum(es.eigenvalues()).cwiseSqrt();
    return es.eigenvectors() * vals.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

template <typename T, typename Get>
std::pair<std::size_t, Matrix> kron_chain(std::span<const T> factors, Get get) {
    if (factors.empty()) {
        throw std::invalid_argument("tensor product of an empty list");
    }
    Matrix acc = get(factors[0]);
    std::size_t n = factors[0].num_qubits();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        n += factors[i].num_qubits();
        if (n > kMaxQubits) {
            throw std::invalid_argument("tensor product exceeds the qubit limit");
        }
        acc = kron(acc, get(factors[i]));
    }
    return {n, std::move(acc)};
}

Matrix pauli_matrix(char p) {
    Matrix m(2, 2);
    switch (p) {
    case 'I':
        m << 1, 0, 0, 1;
        break;
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, Complex(0, -1), Complex(0, 1), 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        throw std::invalid_argument(std::string("unknown Pauli letter '") + p + "'");
    }
    return m;
}

std::vector<std::size_t> check_permutation(std::span<const std::size_t> order, std::size_t n) {
    if (order.size() != n) {
        throw std::invalid_argument("permutation length does not match the register");
    }
    std::vector<bool> seen(n, false);
    for (auto q : order) {
        if (q >= n || seen[q]) {
            throw std::invalid_argument("qubit map is not a bijection");
        }
        seen[q] = true;
    }
    return {order.begin(), order.end()};
}

// new index for an old basis index, given order[new_pos] = old_qubit.
std::size_t permuted_index(std::size_t old_index, std::span<const std::size_t> order, std::size_t n) {
    std::size_t out = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t bit = (old_index >> (n - 1 - order[pos])) & 1U;
        out |= bit << (n - 1 - pos);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Value types

StateVector StateVector::from_amplitudes(Vector amplitudes, const Tolerances &tol) {
    const std::size_t n = detail::qubits_for_dimension(amplitudes.size());
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol.norm) {
        throw std::invalid_argument("state vector is not normalized (norm^2 = " +
                                    std::to_string(norm2) + ")");
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::normalized(Vector amplitudes) {
    const std::size_t n = detail::qubits_for_dimension(amplitudes.size());
    const double norm = amplitudes.norm();
    if (norm < 1e-300) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    amplitudes /= norm;
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    const auto dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(num_qubits, std::move(v));
}

StateVector StateVector::basis(std::string_view bits) {
    std::size_t index = 0;
    for (char b : bits) {
        if (b != '0' && b != '1') {
            throw std::invalid_argument("bitstring must contain only 0 and 1");
        }
        index = (index << 1) | static_cast<std::size_t>(b - '0');
    }
    return basis(bits.size(), index);
}

DensityMatrix DensityMatrix::from_matrix(Matrix entries, const Tolerances &tol) {
    require_square(entries);
    const std::size_t n = detail::qubits_for_dimension(entries.rows());
    if (max_abs(entries - entries.adjoint()) > tol.hermitian) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(entries.trace() - Complex(1.0)) > tol.trace) {
        throw std::invalid_argument("density matrix does not have unit trace");
    }
    Matrix h = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.psd) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    return DensityMatrix(n, std::move(h));
}

DensityMatrix DensityMatrix::from_state(const StateVector &psi) {
    return DensityMatrix(psi.num_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return DensityMatrix(num_qubits, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights,
                                     std::span<const DensityMatrix> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw std::invalid_argument("mixture needs one weight per state");
    }
    double total = 0.0;
    Matrix acc = Matrix::Zero(states[0].matrix().rows(), states[0].matrix().cols());
    for (std::size_t i = 0; i < states.size(); ++i) {
        require_same_dimension(states[i].dimension(), states[0].dimension());
        if (weights[i] < 0.0) {
            throw std::invalid_argument("mixture weights must be nonnegative");
        }
        total += weights[i];
        acc += weights[i] * states[i].matrix();
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("mixture weights must sum to 1");
    }
    return detail::Access::density(states[0].num_qubits(), acc / total);
}

UnitaryOperator UnitaryOperator::from_matrix(Matrix entries, const Tolerances &tol) {
    require_square(entries);
    const std::size_t n = detail::qubits_for_dimension(entries.rows());
    const Matrix gram = entries.adjoint() * entries;
    if (max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) > tol.unitary) {
        throw std::invalid_argument("matrix is not unitary");
    }
    return UnitaryOperator(n, std::move(entries));
}

UnitaryOperator UnitaryOperator::identity(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return UnitaryOperator(num_qubits, Matrix::Identity(dim, dim));
}

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator &rhs) const {
    require_same_dimension(num_qubits_, rhs.num_qubits_);
    return UnitaryOperator(num_qubits_, u_ * rhs.u_);
}

ObservableOperator ObservableOperator::from_matrix(Matrix entries, const Tolerances &tol) {
    require_square(entries);
    const std::size_t n = detail::qubits_for_dimension(entries.rows());
    if (max_abs(entries - entries.adjoint()) > tol.hermitian) {
        throw std::invalid_argument("observable is not Hermitian");
    }
    return ObservableOperator(n, std::move(entries));
}

ObservableOperator ObservableOperator::identity(std::size_t num_qubits) {
    auto u = UnitaryOperator::identity(num_qubits);
    return ObservableOperator(num_qubits, u.matrix());
}

ObservableOperator ObservableOperator::pauli_string(std::string_view paulis) {
    if (paulis.empty() || paulis.size() > kMaxQubits) {
        throw std::invalid_argument("Pauli string length out of range");
    }
    Matrix acc = pauli_matrix(paulis[0]);
    for (std::size_t i = 1; i < paulis.size(); ++i) {
        acc = kron(acc, pauli_matrix(paulis[i]));
    }
    return ObservableOperator(paulis.size(), std::move(acc));
}

ObservableOperator ObservableOperator::projector(const Vector &v) {
    const std::size_t n = detail::qubits_for_dimension(v.size());
    if (std::abs(v.squaredNorm() - 1.0) > 1e-12) {
        throw std::invalid_argument("projector vector must be normalized");
    }
    return ObservableOperator(n, v * v.adjoint());
}

ObservableOperator ObservableOperator::operator+(const ObservableOperator &rhs) const {
    require_same_dimension(num_qubits_, rhs.num_qubits_);
    return ObservableOperator(num_qubits_, h_ + rhs.h_);
}

ObservableOperator ObservableOperator::operator-(const ObservableOperator &rhs) const {
    require_same_dimension(num_qubits_, rhs.num_qubits_);
    return ObservableOperator(num_qubits_, h_ - rhs.h_);
}

ObservableOperator ObservableOperator::operator*(double scale) const {
    return ObservableOperator(num_qubits_, h_ * scale);
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus, const Tolerances &tol) {
    if (kraus.empty()) {
        throw std::invalid_argument("channel needs at least one Kraus operator");
    }
    require_square(kraus[0]);
    const std::size_t n = detail::qubits_for_dimension(kraus[0].rows());
    Matrix sum = Matrix::Zero(kraus[0].rows(), kraus[0].cols());
    for (const auto &k : kraus) {
        if (k.rows() != kraus[0].rows() || k.cols() != kraus[0].cols()) {
            throw std::invalid_argument("Kraus operators must share one dimension");
        }
        sum += k.adjoint() * k;
    }
    if (max_abs(sum - Matrix::Identity(sum.rows(), sum.cols())) > tol.kraus) {
        throw std::invalid_argument("channel is not trace-preserving");
    }
    return QuantumChannel(n, std::move(kraus));
}

QuantumChannel QuantumChannel::identity(std::size_t num_qubits) {
    return QuantumChannel(num_qubits, {UnitaryOperator::identity(num_qubits).matrix()});
}

// ---------------------------------------------------------------------------
// Gates

namespace gates {

UnitaryOperator identity() { return detail::Access::unitary(1, pauli_matrix('I')); }
UnitaryOperator pauli_x() { return detail::Access::unitary(1, pauli_matrix('X')); }
UnitaryOperator pauli_y() { return detail::Access::unitary(1, pauli_matrix('Y')); }
UnitaryOperator pauli_z() { return detail::Access::unitary(1, pauli_matrix('Z')); }

UnitaryOperator hadamard() {
    Matrix h = (pauli_matrix('X') + pauli_matrix('Z')) / std::numbers::sqrt2;
    return detail::Access::unitary(1, std::move(h));
}

UnitaryOperator controlled_z() {
    Matrix cz = Matrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    return detail::Access::unitary(2, std::move(cz));
}

}  // namespace gates

UnitaryOperator rotation_gate(Axis axis, double angle) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("rotation angle must be finite");
    }
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    Matrix r(2, 2);
    if (axis == Axis::x) {
        r << c, Complex(0, -s), Complex(0, -s), c;
    } else {
        r << Complex(c, -s), 0, 0, Complex(c, s);
    }
    return detail::Access::unitary(1, std::move(r));
}

// ---------------------------------------------------------------------------
// Tensor products

StateVector tensor(std::span<const StateVector> factors) {
    auto [n, m] = kron_chain(factors, [](const StateVector &s) -> Matrix { return s.amplitudes(); });
    return detail::Access::state(n, m.col(0));
}

UnitaryOperator tensor(std::span<const UnitaryOperator> factors) {
    auto [n, m] = kron_chain(factors, [](const UnitaryOperator &u) -> Matrix { return u.matrix(); });
    return detail::Access::unitary(n, std::move(m));
}

DensityMatrix tensor(std::span<const DensityMatrix> factors) {
    auto [n, m] = kron_chain(factors, [](const DensityMatrix &r) -> Matrix { return r.matrix(); });
    return detail::Access::density(n, std::move(m));
}

ObservableOperator tensor(std::span<const ObservableOperator> factors) {
    auto [n, m] = kron_chain(factors, [](const ObservableOperator &o) -> Matrix { return o.matrix(); });
    return detail::Access::observable(n, std::move(m));
}

StateVector tensor(std::initializer_list<StateVector> factors) {
    return tensor(std::span<const StateVector>(factors.begin(), factors.size()));
}
UnitaryOperator tensor(std::initializer_list<UnitaryOperator> factors) {
    return tensor(std::span<const UnitaryOperator>(factors.begin(), factors.size()));
}
DensityMatrix tensor(std::initializer_list<DensityMatrix> factors) {
    return tensor(std::span<const DensityMatrix>(factors.begin(), factors.size()));
}

// ---------------------------------------------------------------------------
// Unitaries and channels

StateVector apply_unitary(const StateVector &psi, const UnitaryOperator &u,
                          std::span<const std::size_t> targets) {
    detail::check_targets(targets, psi.num_qubits());
    if (u.num_qubits() != targets.size()) {
        throw std::invalid_argument("unitary arity does not match target count");
    }
    Matrix m = psi.amplitudes();
    detail::left_apply(m, u.matrix(), targets, psi.num_qubits());
    return detail::Access::state(psi.num_qubits(), m.col(0));
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const UnitaryOperator &u,
                            std::span<const std::size_t> targets) {
    detail::check_targets(targets, rho.num_qubits());
    if (u.num_qubits() != targets.size()) {
        throw std::invalid_argument("unitary arity does not match target count");
    }
    // U rho U^dagger = (U (U rho)^dagger)^dagger
    Matrix m = rho.matrix();
    detail::left_apply(m, u.matrix(), targets, rho.num_qubits());
    Matrix t = m.adjoint();
    detail::left_apply(t, u.matrix(), targets, rho.num_qubits());
    return detail::Access::density(rho.num_qubits(), t.adjoint());
}

StateVector apply_unitary(const StateVector &psi, const UnitaryOperator &u,
                          std::initializer_list<std::size_t> targets) {
    return apply_unitary(psi, u, std::span<const std::size_t>(targets.begin(), targets.size()));
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const UnitaryOperator &u,
                            std::initializer_list<std::size_t> targets) {
    return apply_unitary(rho, u, std::span<const std::size_t>(targets.begin(), targets.size()));
}

DensityMatrix apply_channel(const DensityMatrix &rho, const QuantumChannel &channel,
                            std::span<const std::size_t> targets) {
    detail::check_targets(targets, rho.num_qubits());
    if (channel.num_qubits() != targets.size()) {
        throw std::invalid_argument("channel arity does not match target count");
    }
    Matrix acc = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto &k : channel.kraus_operators()) {
        Matrix m = rho.matrix();
        detail::left_apply(m, k, targets, rho.num_qubits());
        Matrix t = m.adjoint();
        detail::left_apply(t, k, targets, rho.num_qubits());
        acc += t.adjoint();
    }
    return detail::Access::density(rho.num_qubits(), std::move(acc));
}

DensityMatrix apply_channel(const DensityMatrix &rho, const QuantumChannel &channel,
                            std::initializer_list<std::size_t> targets) {
    return apply_channel(rho, channel, std::span<const std::size_t>(targets.begin(), targets.size()));
}

// ---------------------------------------------------------------------------
// Reordering and reduction

StateVector permute_qubits(const StateVector &psi, std::span<const std::size_t> order) {
    const std::size_t n = psi.num_qubits();
    check_permutation(order, n);
    Vector out(psi.amplitudes().size());
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
        out(static_cast<Eigen::Index>(permuted_index(i, order, n))) = psi[i];
    }
    return detail::Access::state(n, std::move(out));
}

DensityMatrix permute_qubits(const DensityMatrix &rho, std::span<const std::size_t> order) {
    const std::size_t n = rho.num_qubits();
    check_permutation(order, n);
    const std::size_t dim = rho.dimension();
    std::vector<std::size_t> map(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        map[i] = permuted_index(i, order, n);
    }
    Matrix out(rho.matrix().rows(), rho.matrix().cols());
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out(static_cast<Eigen::Index>(map[r]), static_cast<Eigen::Index>(map[c])) = rho(r, c);
        }
    }
    return detail::Access::density(n, std::move(out));
}

StateVector permute_qubits(const StateVector &psi, std::initializer_list<std::size_t> order) {
    return permute_qubits(psi, std::span<const std::size_t>(order.begin(), order.size()));
}

DensityMatrix permute_qubits(const DensityMatrix &rho, std::initializer_list<std::size_t> order) {
    return permute_qubits(rho, std::span<const std::size_t>(order.begin(), order.size()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    const std::size_t n = rho.num_qubits();
    detail::check_targets(keep, n);
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    // Move kept qubits to the front (in keep order), then contract the tail.
    std::vector<std::size_t> order(keep.begin(), keep.end());
    order.insert(order.end(), traced.begin(), traced.end());
    const DensityMatrix p = permute_qubits(rho, order);

    const auto dk = static_cast<Eigen::Index>(std::size_t{1} << keep.size());
    const auto dt = static_cast<Eigen::Index>(std::size_t{1} << traced.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex acc = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                acc += p.matrix()(r * dt + t, c * dt + t);
            }
            out(r, c) = acc;
        }
    }
    return detail::Access::density(keep.size(), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

// ---------------------------------------------------------------------------
// Scalars

double expectation(const DensityMatrix &rho, const ObservableOperator &obs) {
    require_same_dimension(rho.num_qubits(), obs.num_qubits());
    // tr(A B) = sum_ij A_ij B_ji
    const Complex v = (rho.matrix().cwiseProduct(obs.matrix().transpose())).sum();
    return v.real();
}

double expectation(const StateVector &psi, const ObservableOperator &obs) {
    require_same_dimension(psi.num_qubits(), obs.num_qubits());
    return psi.amplitudes().dot(obs.matrix() * psi.amplitudes()).real();
}

double fidelity(const StateVector &a, const StateVector &b) {
    require_same_dimension(a.num_qubits(), b.num_qubits());
    return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

double fidelity(const StateVector &a, const DensityMatrix &b) {
    require_same_dimension(a.num_qubits(), b.num_qubits());
    const Complex v = a.amplitudes().dot(b.matrix() * a.amplitudes());
    return std::clamp(v.real(), 0.0, 1.0);
}

double fidelity(const DensityMatrix &a, const StateVector &b) { return fidelity(b, a); }

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    require_same_dimension(a.num_qubits(), b.num_qubits());
    const Matrix sa = sqrt_psd(a.matrix());
    Matrix m = sa * b.matrix() * sa;
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double root_sum = clean_spectrum(es.eigenvalues()).cwiseSqrt().sum();
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double phase_aligned_distance(const StateVector &a, const StateVector &b) {
    require_same_dimension(a.num_qubits(), b.num_qubits());
    Eigen::Index pivot = 0;
    a.amplitudes().cwiseAbs().maxCoeff(&pivot);
    const Complex pa = a.amplitudes()(pivot);
    const Complex pb = b.amplitudes()(pivot);
    if (std::abs(pb) < 1e-300) {
        return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() + std::abs(pa);
    }
    // Rotate b so its pivot amplitude has the same phase as a's.
    const Complex phase = (pa / std::abs(pa)) / (pb / std::abs(pb));
    return (a.amplitudes() - phase * b.amplitudes()).cwiseAbs().maxCoeff();
}

bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol) {
    return phase_aligned_distance(a, b) < tol;
}

StateVector dominant_eigenvector(const DensityMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const Eigen::Index last = es.eigenvalues().size() - 1;
    return StateVector::normalized(es.eigenvectors().col(last));
}

std::array<double, 3> bloch_vector(const DensityMatrix &rho) {
    if (rho.num_qubits() != 1) {
        throw std::invalid_argument("Bloch vector needs a single-qubit state");
    }
    return {expectation(rho, ObservableOperator::pauli_string("X")),
            expectation(rho, ObservableOperator::pauli_string("Y")),
            expectation(rho, ObservableOperator::pauli_string("Z"))};
}

std::vector<double> eigenvalues(const DensityMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

}  // namespace oneway
