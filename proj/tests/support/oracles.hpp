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

// Brute-force reference computations for the test suites. Everything here is
// written with explicit index loops on plain Eigen matrices and never calls
// into the library under test.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline std::size_t bit(std::size_t index, std::size_t qubit, std::size_t n) {
    return (index >> (n - 1 - qubit)) & 1U;
}

inline M kron(const M &a, const M &b) {
    M out = M::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline M pauli(char p) {
    M m(2, 2);
    if (p == 'I') m << 1, 0, 0, 1;
    if (p == 'X') m << 0, 1, 1, 0;
    if (p == 'Y') m << 0, C(0, -1), C(0, 1), 0;
    if (p == 'Z') m << 1, 0, 0, -1;
    return m;
}

inline M pauli_string(const std::string &s) {
    M acc = pauli(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) acc = kron(acc, pauli(s[i]));
    return acc;
}

inline M hadamard() { return (pauli('X') + pauli('Z')) / std::numbers::sqrt2; }

// Full 2^n operator with `op` acting on `targets` (targets[0] = op's MSB).
inline M embed(const M &op, const std::vector<std::size_t> &targets, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = targets.size();
    M out = M::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            bool rest_equal = true;
            for (std::size_t q = 0; q < n; ++q) {
                bool is_target = false;
                for (auto t : targets) is_target = is_target || t == q;
                if (!is_target && bit(i, q, n) != bit(j, q, n)) rest_equal = false;
            }
            if (!rest_equal) continue;
            std::size_t si = 0, sj = 0;
            for (std::size_t t = 0; t < k; ++t) {
                si = (si << 1) | bit(i, targets[t], n);
                sj = (sj << 1) | bit(j, targets[t], n);
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                op(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sj));
        }
    }
    return out;
}

// Result qubits listed in `keep` order.
inline M partial_trace(const M &rho, const std::vector<std::size_t> &keep, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t dk = std::size_t{1} << keep.size();
    M out = M::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            bool traced_equal = true;
            for (std::size_t q = 0; q < n; ++q) {
                bool kept = false;
                for (auto k : keep) kept = kept || k == q;
                if (!kept && bit(i, q, n) != bit(j, q, n)) traced_equal = false;
            }
            if (!traced_equal) continue;
            std::size_t a = 0, b = 0;
            for (auto k : keep) {
                a = (a << 1) | bit(i, k, n);
                b = (b << 1) | bit(j, k, n);
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

// order[new_pos] = old_qubit
inline V permute(const V &psi, const std::vector<std::size_t> &order) {
    const std::size_t n = order.size();
    V out = V::Zero(psi.size());
    for (std::size_t old_i = 0; old_i < static_cast<std::size_t>(psi.size()); ++old_i) {
        std::size_t new_i = 0;
        for (std::size_t pos = 0; pos < n; ++pos) new_i = (new_i << 1) | bit(old_i, order[pos], n);
        out(static_cast<Eigen::Index>(new_i)) = psi(static_cast<Eigen::Index>(old_i));
    }
    return out;
}

// Scaling-and-squaring Taylor series.
inline M expm(const M &a) {
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    const M scaled = a / std::pow(2.0, squarings);
    M term = M::Identity(a.rows(), a.cols());
    M sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

inline M rotation(char axis, double angle) { return expm(C(0, -angle / 2.0) * pauli(axis)); }

inline V equatorial(double alpha, int outcome) {
    V v(2);
    const C phase = std::polar(1.0, alpha);
    v << 1.0 / std::numbers::sqrt2, (outcome == 0 ? 1.0 : -1.0) * phase / std::numbers::sqrt2;
    return v;
}

inline V plus() {
    V v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    return v;
}

// |C4> amplitudes written out from the four-term ket expansion.
inline V cluster_c4() {
    V v = V::Zero(16);
    v(0) = 0.5;   // 0000
    v(10) = 0.5;  // 1010
    v(5) = 0.5;   // 0101
    v(15) = -0.5; // 1111
    return v;
}

// Three-qubit linear cluster from |C4>: reorder (3,1,0,2), H on new 0 and 3,
// project new qubit 0 onto |0>. Returns the unnormalized 8-amplitude vector.
inline V lin3_from_c4() {
    const V reordered = permute(cluster_c4(), {3, 1, 0, 2});
    const M h = embed(hadamard(), {0}, 4) * embed(hadamard(), {3}, 4);
    const V rotated = h * reordered;
    V out(8);
    for (Eigen::Index i = 0; i < 8; ++i) out(i) = rotated(i);  // leading bit 0
    return out;
}

/**
 * Output density matrix on the last qubit of an 8-dim (3-qubit) density matrix
 * after projecting qubit 0 onto v2 and qubit 1 onto v3, unnormalized.
 */
inline M project_two(const M &rho3, const V &v2, const V &v3) {
    M out = M::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp)
                    for (int c = 0; c < 2; ++c)
                        for (int cp = 0; cp < 2; ++cp)
                            out(c, cp) += std::conj(v2(a)) * std::conj(v3(b)) * v2(ap) * v3(bp) *
                                          rho3(a * 4 + b * 2 + c, ap * 4 + bp * 2 + cp);
    return out;
}

/// R_x(-beta) R_z(-alpha)|+>.
inline V rotation_target(double alpha, double beta) {
    return rotation('X', -beta) * rotation('Z', -alpha) * plus();
}

/// Normalized density matrix of lin3_from_c4().
inline M lin3_density() {
    const V psi = lin3_from_c4();
    return psi * psi.adjoint() / psi.squaredNorm();
}

/// Feedforward disabled: both qubits in their fixed bases, no corrections.
inline double fixed_basis_fidelity(double alpha, double beta) {
    const M rho3 = lin3_density();
    M mix = M::Zero(2, 2);
    for (int s2 = 0; s2 < 2; ++s2)
        for (int s3 = 0; s3 < 2; ++s3) mix += project_two(rho3, equatorial(alpha, s2), equatorial(beta, s3));
    const V t = rotation_target(alpha, beta);
    return (t.adjoint() * mix * t)(0, 0).real();
}

}  // namespace oracle
