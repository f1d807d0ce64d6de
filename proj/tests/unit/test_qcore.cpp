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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oneway/qcore.hpp"
#include "oracles.hpp"

namespace {

using namespace oneway;
using std::numbers::pi;

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

Vector random_vector(std::size_t dim, std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    Vector v(static_cast<Eigen::Index>(dim));
    for (auto &x : v) x = Complex(g(gen), g(gen));
    return v.normalized();
}

StateVector random_state(std::size_t n, std::mt19937_64 &gen) {
    return StateVector::from_amplitudes(random_vector(std::size_t{1} << n, gen));
}

UnitaryOperator random_unitary(std::size_t n, std::mt19937_64 &gen) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    std::normal_distribution<double> g;
    Matrix a(dim, dim);
    for (auto &x : a.reshaped()) x = Complex(g(gen), g(gen));
    Eigen::HouseholderQR<Matrix> qr(a);
    return UnitaryOperator::from_matrix(qr.householderQ() * Matrix::Identity(dim, dim));
}

DensityMatrix random_density(std::size_t n, std::mt19937_64 &gen) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    std::normal_distribution<double> g;
    Matrix a(dim, dim);
    for (auto &x : a.reshaped()) x = Complex(g(gen), g(gen));
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return DensityMatrix::from_matrix(rho);
}

StateVector c4() { return StateVector::from_amplitudes(oracle::cluster_c4()); }

TEST(StateVector, ValidatesNormAndLength) {
    EXPECT_THROW(StateVector::from_amplitudes(Vector::Ones(2)), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes(Vector::Unit(3, 0)), std::invalid_argument);
    EXPECT_THROW(StateVector::normalized(Vector::Zero(4)), std::invalid_argument);
    EXPECT_EQ(StateVector::basis("0101").num_qubits(), 4u);
    EXPECT_EQ(StateVector::basis("0101")[5], Complex(1.0));
    EXPECT_THROW(StateVector::basis("01a"), std::invalid_argument);
    EXPECT_THROW(StateVector::basis(2, 4), std::out_of_range);
}

TEST(StateVector, QubitLimit) {
    EXPECT_NO_THROW(StateVector::basis(kMaxQubits, 0));
    EXPECT_THROW(StateVector::basis(kMaxQubits + 1, 0), std::invalid_argument);
}

TEST(DensityMatrix, Validates) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(m), std::invalid_argument);  // trace
    m(1, 1) = 0.5;
    m(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix::from_matrix(m), std::invalid_argument);  // not Hermitian
    m(0, 1) = 0.0;
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(m), std::invalid_argument);  // negative
}

TEST(DensityMatrix, Mixture) {
    const std::vector<double> w{0.25, 0.75};
    const std::vector<DensityMatrix> s{DensityMatrix::from_state(StateVector::basis(1, 0)),
                                       DensityMatrix::from_state(StateVector::basis(1, 1))};
    const auto rho = DensityMatrix::mixture(w, s);
    EXPECT_NEAR(rho(0, 0).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho(1, 1).real(), 0.75, 1e-15);
    const std::vector<double> bad{0.5, 0.6};
    EXPECT_THROW(DensityMatrix::mixture(bad, s), std::invalid_argument);
}

TEST(Operators, Validation) {
    EXPECT_THROW(UnitaryOperator::from_matrix(Matrix::Ones(2, 2)), std::invalid_argument);
    Matrix nh = Matrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    EXPECT_THROW(ObservableOperator::from_matrix(nh), std::invalid_argument);
    EXPECT_THROW(ObservableOperator::pauli_string("XQ"), std::invalid_argument);
    EXPECT_THROW(QuantumChannel::from_kraus({Matrix::Identity(2, 2) * 0.5}), std::invalid_argument);
    EXPECT_THROW(QuantumChannel::from_kraus({}), std::invalid_argument);
}

TEST(Tensor, Examples) {
    const auto a = tensor({StateVector::basis(1, 0), StateVector::basis(1, 0)});
    EXPECT_TRUE(equal_up_to_phase(a, StateVector::basis("00")));

    const auto hh = tensor({gates::hadamard(), gates::hadamard()});
    const auto out = apply_unitary(StateVector::basis("00"), hh, {0, 1});
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out[i] - 0.5), 0.0, 1e-15);

    const auto zi = tensor({gates::pauli_z(), gates::identity()});
    const auto v = StateVector::basis("10").amplitudes();
    EXPECT_NEAR(std::abs((zi.matrix() * v)(2) + 1.0), 0.0, 1e-15);

    EXPECT_THROW(tensor(std::span<const StateVector>{}), std::invalid_argument);
}

TEST(Tensor, MatchesIndexLoopOracle) {
    std::mt19937_64 gen(1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto u = random_unitary(1, gen);
        const auto w = random_unitary(2, gen);
        const auto t = tensor({u, w});
        EXPECT_LT(max_abs(t.matrix() - oracle::kron(u.matrix(), w.matrix())), 1e-14);
        const auto p = random_density(1, gen);
        const auto q = random_density(2, gen);
        const auto pq = tensor({p, q});
        EXPECT_LT(max_abs(pq.matrix() - oracle::kron(p.matrix(), q.matrix())), 1e-14);
    }
}

TEST(ApplyUnitary, Examples) {
    const auto plus = apply_unitary(StateVector::basis(1, 0), gates::hadamard(), {0});
    EXPECT_NEAR(std::abs(plus[0] - 1.0 / std::numbers::sqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(plus[1] - 1.0 / std::numbers::sqrt2), 0.0, 1e-15);

    std::mt19937_64 gen(2);
    const auto rho = random_density(3, gen);
    EXPECT_LT(max_abs(apply_unitary(rho, gates::identity(), {1}).matrix() - rho.matrix()), 1e-14);
}

TEST(ApplyUnitary, HadamardsOnC4MatchFullMatrix) {
    const auto out = apply_unitary(apply_unitary(c4(), gates::hadamard(), {0}), gates::hadamard(), {3});
    const oracle::M full = oracle::kron(
        oracle::kron(oracle::kron(oracle::hadamard(), oracle::pauli('I')), oracle::pauli('I')),
        oracle::hadamard());
    const oracle::V expected = full * oracle::cluster_c4();
    EXPECT_LT((out.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ApplyUnitary, MatchesEmbeddingOracle) {
    std::mt19937_64 gen(3);
    const std::vector<std::vector<std::size_t>> target_sets{{0}, {3}, {2, 0}, {1, 3}, {3, 1, 2}};
    for (const auto &targets : target_sets) {
        const auto u = random_unitary(targets.size(), gen);
        const auto psi = random_state(4, gen);
        const auto out = apply_unitary(psi, u, targets);
        const oracle::V expected = oracle::embed(u.matrix(), targets, 4) * psi.amplitudes();
        EXPECT_LT((out.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-13);

        const auto rho = random_density(4, gen);
        const oracle::M e = oracle::embed(u.matrix(), targets, 4);
        const auto rout = apply_unitary(rho, u, targets);
        EXPECT_LT(max_abs(rout.matrix() - e * rho.matrix() * e.adjoint()), 1e-13);
    }
}

TEST(ApplyUnitary, Errors) {
    const auto psi = StateVector::basis("00");
    EXPECT_THROW(apply_unitary(psi, gates::controlled_z(), {0, 0}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(psi, gates::hadamard(), {2}), std::out_of_range);
    EXPECT_THROW(apply_unitary(psi, gates::controlled_z(), {0}), std::invalid_argument);
}

TEST(ApplyUnitary, InverseRoundTripAndNorm) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = random_state(3, gen);
        const auto u = random_unitary(2, gen);
        const auto once = apply_unitary(psi, u, {2, 0});
        EXPECT_NEAR(once.amplitudes().squaredNorm(), 1.0, 1e-10);
        const auto back = apply_unitary(once, u.adjoint(), {2, 0});
        EXPECT_LT((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);

        const auto rho = random_density(3, gen);
        const auto r1 = apply_unitary(rho, u, {1, 2});
        EXPECT_NEAR(r1.matrix().trace().real(), 1.0, 1e-10);
        const auto r2 = apply_unitary(r1, u.adjoint(), {1, 2});
        EXPECT_LT(max_abs(r2.matrix() - rho.matrix()), 1e-10);
    }
}

TEST(Permute, Examples) {
    const auto swapped = permute_qubits(StateVector::basis("01"), {1, 0});
    EXPECT_TRUE(equal_up_to_phase(swapped, StateVector::basis("10")));
    std::mt19937_64 gen(5);
    const auto psi = random_state(3, gen);
    EXPECT_LT((permute_qubits(psi, {0, 1, 2}).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(),
              1e-15);
    EXPECT_THROW(permute_qubits(psi, {0, 0, 1}), std::invalid_argument);
    EXPECT_THROW(permute_qubits(psi, {0, 1}), std::invalid_argument);
}

TEST(Permute, ClusterReorderMatchesBitOracle) {
    const auto out = permute_qubits(c4(), {3, 1, 0, 2});
    const oracle::V expected = oracle::permute(oracle::cluster_c4(), {3, 1, 0, 2});
    EXPECT_LT((out.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-15);

    std::mt19937_64 gen(6);
    const auto rho = random_density(4, gen);
    const auto prho = permute_qubits(rho, {2, 0, 3, 1});
    // Density permutation equals P rho P^T with P built from the vector oracle.
    oracle::M p = oracle::M::Zero(16, 16);
    for (int i = 0; i < 16; ++i) p.col(i) = oracle::permute(oracle::V::Unit(16, i), {2, 0, 3, 1});
    EXPECT_LT(max_abs(prho.matrix() - p * rho.matrix() * p.adjoint()), 1e-14);
}

TEST(PartialTrace, Examples) {
    const oracle::V phi = (oracle::V::Unit(4, 0) + oracle::V::Unit(4, 3)) / std::numbers::sqrt2;
    const auto bell = DensityMatrix::from_state(StateVector::from_amplitudes(phi));
    EXPECT_LT(max_abs(partial_trace(bell, {0}).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);

    const auto zz = DensityMatrix::from_state(StateVector::basis("00"));
    EXPECT_NEAR(partial_trace(zz, {1})(0, 0).real(), 1.0, 1e-15);

    // tracing qubits 1 and 3 of |C4>: equal mixture of the two Bell states on (0, 2)
    const auto rho = DensityMatrix::from_state(c4());
    const auto red = partial_trace(rho, {0, 2});
    const oracle::V phim = (oracle::V::Unit(4, 0) - oracle::V::Unit(4, 3)) / std::numbers::sqrt2;
    const oracle::M expected = 0.5 * phi * phi.adjoint() + 0.5 * phim * phim.adjoint();
    EXPECT_LT(max_abs(red.matrix() - expected), 1e-15);

    EXPECT_THROW(partial_trace(rho, std::span<const std::size_t>{}), std::invalid_argument);
    EXPECT_THROW(partial_trace(rho, {1, 1}), std::invalid_argument);
}

TEST(PartialTrace, MatchesBruteForceAndComposes) {
    std::mt19937_64 gen(7);
    const auto rho = random_density(4, gen);
    const std::vector<std::vector<std::size_t>> keeps{{0}, {3}, {2, 0}, {1, 3}, {3, 0, 1}};
    for (const auto &keep : keeps) {
        const auto red = partial_trace(rho, keep);
        EXPECT_LT(max_abs(red.matrix() - oracle::partial_trace(rho.matrix(), keep, 4)), 1e-14);
        EXPECT_NEAR(red.matrix().trace().real(), 1.0, 1e-12);
    }
    // tracing 3 then 0, or 0 then 3, gives the same marginal on {1, 2}
    const auto a = partial_trace(partial_trace(rho, {0, 1, 2}), {1, 2});
    const auto b = partial_trace(partial_trace(rho, {1, 2, 3}), {0, 1});
    EXPECT_LT(max_abs(a.matrix() - b.matrix()), 1e-14);
}

TEST(Expectation, Examples) {
    EXPECT_NEAR(expectation(DensityMatrix::from_state(StateVector::basis(1, 0)),
                            ObservableOperator::pauli_string("Z")),
                1.0, 1e-15);
    EXPECT_NEAR(expectation(DensityMatrix::maximally_mixed(1), ObservableOperator::pauli_string("X")),
                0.0, 1e-15);
    EXPECT_NEAR(expectation(DensityMatrix::from_state(c4()), ObservableOperator::pauli_string("ZIZI")),
                1.0, 1e-14);
    EXPECT_THROW(expectation(DensityMatrix::maximally_mixed(2), ObservableOperator::pauli_string("X")),
                 std::invalid_argument);
}

TEST(Expectation, PauliStringsBounded) {
    std::mt19937_64 gen(8);
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::string s;
        for (int q = 0; q < 3; ++q) s += letters[pick(gen)];
        const auto obs = ObservableOperator::pauli_string(s);
        EXPECT_LT(max_abs(obs.matrix() - oracle::pauli_string(s)), 1e-15);
        const double e = expectation(random_density(3, gen), obs);
        EXPECT_GE(e, -1.0 - 1e-12);
        EXPECT_LE(e, 1.0 + 1e-12);
    }
}

TEST(Rotation, Examples) {
    EXPECT_LT(max_abs(rotation_gate(Axis::z, 0.0).matrix() - Matrix::Identity(2, 2)), 1e-15);
    EXPECT_LT(max_abs(rotation_gate(Axis::x, 2 * pi).matrix() + Matrix::Identity(2, 2)), 1e-15);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::polar(1.0, -pi / 4);
    d(1, 1) = std::polar(1.0, pi / 4);
    EXPECT_LT(max_abs(rotation_gate(Axis::z, pi / 2).matrix() - d), 1e-14);
    EXPECT_LT(max_abs(rotation_gate(Axis::z, pi / 2).matrix() - oracle::rotation('Z', pi / 2)), 1e-14);
    EXPECT_THROW(rotation_gate(Axis::x, std::nan("")), std::invalid_argument);
}

TEST(Rotation, MatchesExponentialOracleOnGrid) {
    for (int k = 0; k <= 32; ++k) {
        const double a = -2 * pi + k * pi / 8;
        EXPECT_LT(max_abs(rotation_gate(Axis::x, a).matrix() - oracle::rotation('X', a)), 1e-13);
        EXPECT_LT(max_abs(rotation_gate(Axis::z, a).matrix() - oracle::rotation('Z', a)), 1e-13);
    }
}

TEST(Fidelity, Examples) {
    std::mt19937_64 gen(9);
    const auto rho = random_density(2, gen);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    EXPECT_NEAR(fidelity(StateVector::basis(1, 0), StateVector::basis(1, 1)), 0.0, 1e-15);
    const auto plus = apply_unitary(StateVector::basis(1, 0), gates::hadamard(), {0});
    EXPECT_NEAR(fidelity(plus, DensityMatrix::maximally_mixed(1)), 0.5, 1e-15);
    EXPECT_THROW(fidelity(plus, StateVector::basis("00")), std::invalid_argument);
}

TEST(Fidelity, Properties) {
    std::mt19937_64 gen(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_density(2, gen);
        const auto b = random_density(2, gen);
        const double fab = fidelity(a, b);
        EXPECT_NEAR(fab, fidelity(b, a), 1e-9);
        EXPECT_GE(fab, -1e-12);
        EXPECT_LE(fab, 1.0 + 1e-9);
        const auto u = random_unitary(2, gen);
        EXPECT_NEAR(fidelity(apply_unitary(a, u, {0, 1}), apply_unitary(b, u, {0, 1})), fab, 1e-9);

        const auto psi = random_state(2, gen);
        const auto phased = StateVector::from_amplitudes(psi.amplitudes() * std::polar(1.0, 0.7));
        EXPECT_NEAR(fidelity(psi, phased), 1.0, 1e-12);
        EXPECT_TRUE(equal_up_to_phase(psi, phased));
        EXPECT_NEAR(fidelity(psi, a), fidelity(a, psi), 1e-15);
        EXPECT_NEAR(fidelity(DensityMatrix::from_state(psi), a), fidelity(psi, a), 1e-8);
    }
}

TEST(Channel, Examples) {
    std::mt19937_64 gen(11);
    const auto rho = random_density(2, gen);
    const auto same = apply_channel(rho, QuantumChannel::identity(1), {1});
    EXPECT_LT(max_abs(same.matrix() - rho.matrix()), 1e-15);

    const auto plus = DensityMatrix::from_state(apply_unitary(StateVector::basis(1, 0), gates::hadamard(), {0}));
    const auto full = QuantumChannel::from_kraus({Matrix::Identity(2, 2) / std::numbers::sqrt2,
                                                  gates::pauli_z().matrix() / std::numbers::sqrt2});
    EXPECT_LT(max_abs(apply_channel(plus, full, {0}).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);

    for (double p : {0.1, 0.35, 0.8}) {
        // dephasing with flip weight p/2 scales coherences by (1 - p)
        const auto ch = QuantumChannel::from_kraus({std::sqrt(1 - p / 2) * Matrix::Identity(2, 2),
                                                    std::sqrt(p / 2) * gates::pauli_z().matrix()});
        const auto out = apply_channel(plus, ch, {0});
        EXPECT_NEAR(out(0, 1).real(), (1 - p) / 2, 1e-15);
        EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-10);
    }
    EXPECT_THROW(apply_channel(rho, full, {0, 1}), std::invalid_argument);
}

TEST(Helpers, BlochAndEigen) {
    const auto plus = DensityMatrix::from_state(apply_unitary(StateVector::basis(1, 0), gates::hadamard(), {0}));
    const auto b = bloch_vector(plus);
    EXPECT_NEAR(b[0], 1.0, 1e-15);
    EXPECT_NEAR(b[1], 0.0, 1e-15);
    EXPECT_NEAR(b[2], 0.0, 1e-15);
    const auto ev = eigenvalues(DensityMatrix::maximally_mixed(2));
    ASSERT_EQ(ev.size(), 4u);
    for (double e : ev) EXPECT_NEAR(e, 0.25, 1e-15);
    const auto dom = dominant_eigenvector(DensityMatrix::from_state(c4()));
    EXPECT_TRUE(equal_up_to_phase(dom, c4()));
    EXPECT_THROW(bloch_vector(DensityMatrix::maximally_mixed(2)), std::invalid_argument);
}

}  // namespace
