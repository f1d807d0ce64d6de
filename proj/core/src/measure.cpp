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

#include "oneway/measure.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "detail.hpp"

namespace oneway::measure {

namespace {

constexpr double kUnderflow = 1e-12;

// Rows are <v0| and <v1|, so U rho U^dagger has Born probabilities on its diagonal.
Matrix basis_change(const MeasurementBasis &basis) {
    const auto v = basis.vectors();
    Matrix u(2, 2);
    u.row(0) = v[0].adjoint();
    u.row(1) = v[1].adjoint();
    return u;
}

void check_qubit(std::size_t qubit, std::size_t n) {
    if (qubit >= n) {
        throw std::out_of_range("qubit index out of range");
    }
}

}  // namespace

MeasurementBasis MeasurementBasis::pauli_y() { return equatorial(std::numbers::pi / 2.0); }

MeasurementBasis MeasurementBasis::pauli(char label) {
    switch (label) {
    case 'X':
        return pauli_x();
    case 'Y':
        return pauli_y();
    case 'Z':
        return pauli_z();
    default:
        throw std::invalid_argument(std::string("unknown Pauli basis '") + label + "'");
    }
}

std::array<Vector, 2> MeasurementBasis::vectors() const {
    Vector plus(2);
    Vector minus(2);
    if (kind == Kind::computational) {
        plus << 1.0, 0.0;
        minus << 0.0, 1.0;
    } else {
        const Complex phase = std::polar(1.0, alpha);
        plus << 1.0 / std::numbers::sqrt2, phase / std::numbers::sqrt2;
        minus << 1.0 / std::numbers::sqrt2, -phase / std::numbers::sqrt2;
    }
    return {plus, minus};
}

std::vector<MeasurementSetting> pauli_settings(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    static constexpr char kLabels[] = {'X', 'Y', 'Z'};
    std::size_t total = 1;
    for (std::size_t i = 0; i < num_qubits; ++i) {
        total *= 3;
    }
    std::vector<MeasurementSetting> out;
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        MeasurementSetting s(num_qubits);
        std::size_t c = code;
        for (std::size_t q = num_qubits; q-- > 0;) {
            s[q] = MeasurementBasis::pauli(kLabels[c % 3]);
            c /= 3;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string setting_label(const MeasurementSetting &setting) {
    std::string out;
    for (const auto &b : setting) {
        if (b == MeasurementBasis::pauli_x()) {
            out += 'X';
        } else if (b == MeasurementBasis::pauli_y()) {
            out += 'Y';
        } else if (b.kind == MeasurementBasis::Kind::computational) {
            out += 'Z';
        } else {
            throw std::invalid_argument("setting contains a non-Pauli basis");
        }
    }
    return out;
}

void CountTable::validate() const {
    if (setting.empty()) {
        throw std::invalid_argument("count table has an empty setting");
    }
    std::uint64_t total = 0;
    for (const auto &[bits, n] : counts) {
        if (bits.size() != setting.size() ||
            bits.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("malformed outcome bitstring '" + bits + "'");
        }
        total += n;
    }
    if (total != shots) {
        throw std::invalid_argument("counts do not sum to the shot total");
    }
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x6f6e6577U};
    engine_.seed(seq);
}

double RandomSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t RandomSource::categorical(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("categorical draw needs at least one weight");
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    const double u = uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            last_positive = i;
        }
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    return last_positive;
}

std::pair<ObservableOperator, ObservableOperator> projectors(const MeasurementBasis &basis) {
    const auto v = basis.vectors();
    return {ObservableOperator::projector(v[0]), ObservableOperator::projector(v[1])};
}

std::array<double, 2> outcome_probabilities(const DensityMatrix &rho, std::size_t qubit,
                                            const MeasurementBasis &basis) {
    check_qubit(qubit, rho.num_qubits());
    const auto [p0, p1] = projectors(basis);
    const std::size_t target[] = {qubit};
    Matrix m0 = rho.matrix();
    detail::left_apply(m0, p0.matrix(), target, rho.num_qubits());
    const double a = std::max(0.0, m0.trace().real());
    return {a, std::max(0.0, 1.0 - a)};
}

namespace {

template <typename State>
MeasurementOutcome<State> collapse(const State &s, std::size_t qubit, const MeasurementBasis &basis,
                                   RandomSource &rng, std::array<double, 2> probs) {
    if (probs[0] + probs[1] < kUnderflow) {
        throw std::domain_error("both measurement outcomes have vanishing probability");
    }
    const int outcome = static_cast<int>(rng.categorical(probs));
    const auto proj = projectors(basis);
    const Matrix &p = outcome == 0 ? proj.first.matrix() : proj.second.matrix();
    const std::size_t target[] = {qubit};
    if constexpr (std::is_same_v<State, DensityMatrix>) {
        Matrix m = s.matrix();
        detail::left_apply(m, p, target, s.num_qubits());
        Matrix t = m.adjoint();
        detail::left_apply(t, p, target, s.num_qubits());
        return {outcome, probs[outcome],
                detail::Access::density(s.num_qubits(), t.adjoint() / probs[outcome])};
    } else {
        Matrix m = s.amplitudes();
        detail::left_apply(m, p, target, s.num_qubits());
        return {outcome, probs[outcome], StateVector::normalized(m.col(0))};
    }
}

}  // namespace

MeasurementOutcome<DensityMatrix> measure_qubit(const DensityMatrix &rho, std::size_t qubit,
                                                const MeasurementBasis &basis, RandomSource &rng) {
    return collapse(rho, qubit, basis, rng, outcome_probabilities(rho, qubit, basis));
}

MeasurementOutcome<StateVector> measure_qubit(const StateVector &psi, std::size_t qubit,
                                              const MeasurementBasis &basis, RandomSource &rng) {
    check_qubit(qubit, psi.num_qubits());
    const auto v = basis.vectors();
    const std::size_t target[] = {qubit};
    Matrix m = psi.amplitudes();
    detail::left_apply(m, ObservableOperator::projector(v[0]).matrix(), target, psi.num_qubits());
    const double a = m.col(0).squaredNorm();
    return collapse(psi, qubit, basis, rng, {a, std::max(0.0, 1.0 - a)});
}

Conditioned condition_on(const DensityMatrix &rho, std::size_t qubit, const MeasurementBasis &basis,
                         int outcome) {
    const std::size_t n = rho.num_qubits();
    check_qubit(qubit, n);
    if (n < 2) {
        throw std::invalid_argument("conditioning needs at least two qubits");
    }
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("outcome must be 0 or 1");
    }
    std::vector<std::size_t> order{qubit};
    for (std::size_t q = 0; q < n; ++q) {
        if (q != qubit) {
            order.push_back(q);
        }
    }
    const DensityMatrix front = permute_qubits(rho, order);
    const Vector v = basis.vectors()[static_cast<std::size_t>(outcome)];
    const Eigen::Index half = front.matrix().rows() / 2;
    Matrix reduced = Matrix::Zero(half, half);
    for (Eigen::Index a = 0; a < 2; ++a) {
        for (Eigen::Index b = 0; b < 2; ++b) {
            reduced += std::conj(v(a)) * v(b) * front.matrix().block(a * half, b * half, half, half);
        }
    }
    const double p = reduced.trace().real();
    if (p < kUnderflow) {
        throw std::domain_error("conditioning on a zero-probability outcome");
    }
    return {p, detail::Access::density(n - 1, reduced / p)};
}

std::vector<double> setting_probabilities(const DensityMatrix &rho, const MeasurementSetting &setting) {
    const std::size_t n = rho.num_qubits();
    if (setting.size() != n) {
        throw std::invalid_argument("setting must cover every qubit exactly once");
    }
    Matrix m = rho.matrix();
    for (std::size_t q = 0; q < n; ++q) {
        const Matrix u = basis_change(setting[q]);
        const std::size_t target[] = {q};
        detail::left_apply(m, u, target, n);
        Matrix t = m.adjoint();
        detail::left_apply(t, u, target, n);
        m = t.adjoint();
    }
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out[static_cast<std::size_t>(i)] = std::max(0.0, m(i, i).real());
    }
    return out;
}

Vector setting_vector(const MeasurementSetting &setting, std::size_t outcome) {
    const std::size_t n = setting.size();
    Vector acc = Vector::Ones(1);
    for (std::size_t q = 0; q < n; ++q) {
        const std::size_t bit = (outcome >> (n - 1 - q)) & 1U;
        const Vector v = setting[q].vectors()[bit];
        Vector next(acc.size() * 2);
        for (Eigen::Index i = 0; i < acc.size(); ++i) {
            next(2 * i) = acc(i) * v(0);
            next(2 * i + 1) = acc(i) * v(1);
        }
        acc = std::move(next);
    }
    return acc;
}

std::string outcome_bitstring(std::size_t outcome, std::size_t num_qubits) {
    std::string s(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if ((outcome >> (num_qubits - 1 - q)) & 1U) {
            s[q] = '1';
        }
    }
    return s;
}

std::vector<CountTable> sample_counts(const DensityMatrix &rho,
                                      std::span<const MeasurementSetting> settings,
                                      std::uint64_t shots, const RandomSource &rng) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const std::size_t n = rho.num_qubits();
    std::vector<CountTable> out;
    out.reserve(settings.size());
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto probs = setting_probabilities(rho, settings[k]);
        RandomSource stream(rng.seed(), rng.stream_id() + k);
        std::vector<std::uint64_t> tally(probs.size(), 0);
        for (std::uint64_t s = 0; s < shots; ++s) {
            ++tally[stream.categorical(probs)];
        }
        CountTable table{settings[k], shots, {}};
        for (std::size_t o = 0; o < tally.size(); ++o) {
            if (tally[o] > 0) {
                table.counts[outcome_bitstring(o, n)] = tally[o];
            }
        }
        out.push_back(std::move(table));
    }
    return out;
}

}  // namespace oneway::measure
