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

#include "oneway/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oneway/cluster.hpp"
#include "detail.hpp"

namespace oneway::tomo {

namespace {

// Every nonzero count as a column vector of V with weight w.
struct Design {
    std::size_t num_qubits = 0;
    Matrix vectors;
    Eigen::VectorXd weights;
    double total = 0.0;
};

Design build_design(std::span<const measure::CountTable> tables) {
    if (tables.empty()) {
        throw std::invalid_argument("tomography needs at least one count table");
    }
    Design d;
    d.num_qubits = tables[0].setting.size();
    std::vector<Vector> cols;
    std::vector<double> w;
    for (const auto &t : tables) {
        t.validate();
        if (t.setting.size() != d.num_qubits) {
            throw std::invalid_argument("count tables describe different register sizes");
        }
        for (const auto &[bits, n] : t.counts) {
            if (n == 0) {
                continue;
            }
            std::size_t outcome = 0;
            for (char b : bits) {
                outcome = (outcome << 1) | static_cast<std::size_t>(b - '0');
            }
            cols.push_back(measure::setting_vector(t.setting, outcome));
            w.push_back(static_cast<double>(n));
        }
    }
    if (cols.empty()) {
        throw std::invalid_argument("count tables contain no shots");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << d.num_qubits);
    d.vectors.resize(dim, static_cast<Eigen::Index>(cols.size()));
    d.weights.resize(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) {
        d.vectors.col(static_cast<Eigen::Index>(i)) = cols[i];
        d.weights(static_cast<Eigen::Index>(i)) = w[i];
    }
    d.total = d.weights.sum();
    return d;
}

Eigen::VectorXd probabilities(const Design &d, const Matrix &rho) {
    const Matrix rv = rho * d.vectors;
    return (d.vectors.conjugate().cwiseProduct(rv)).colwise().sum().real().transpose();
}

double log_likelihood_of(const Design &d, const Matrix &rho) {
    const Eigen::VectorXd p = probabilities(d, rho);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        acc += d.weights(i) * std::log(std::max(p(i), 1e-300));
    }
    return acc;
}

Matrix rho_from_factor(const Matrix &t) {
    Matrix rho = t.adjoint() * t;
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

// Lower-triangular L with L^dagger L = T^dagger T, via QR of the column-reversed T.
Matrix retriangularize(const Matrix &t) {
    Matrix rev = t.rowwise().reverse();
    Eigen::HouseholderQR<Matrix> qr(rev);
    Matrix upper = qr.matrixQR().triangularView<Eigen::Upper>();
    Matrix lower = upper.reverse();  // J U J
    return lower / lower.norm();
}

}  // namespace

void MLConfig::validate() const {
    if (max_iterations < 0) {
        throw std::invalid_argument("max_iterations must be nonnegative");
    }
    if (!(ll_tolerance > 0.0)) {
        throw std::invalid_argument("ll_tolerance must be positive");
    }
    if (!(regularizer >= 0.0)) {
        throw std::invalid_argument("regularizer must be nonnegative");
    }
}

IncompleteSettingsError::IncompleteSettingsError(std::size_t rank, std::size_t required)
    : std::invalid_argument("measurement settings are not informationally complete (rank " +
                            std::to_string(rank) + " of " + std::to_string(required) + ")"),
      rank_(rank), required_(required) {}

std::size_t design_rank(std::span<const measure::MeasurementSetting> settings) {
    if (settings.empty()) {
        return 0;
    }
    const std::size_t n = settings[0].size();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    const Eigen::Index ops = dim * dim;
    Matrix gram = Matrix::Zero(ops, ops);
    for (const auto &s : settings) {
        if (s.size() != n) {
            throw std::invalid_argument("settings describe different register sizes");
        }
        for (std::size_t o = 0; o < static_cast<std::size_t>(dim); ++o) {
            const Vector v = measure::setting_vector(s, o);
            const Matrix p = v * v.adjoint();
            const Eigen::Map<const Vector> vec(p.data(), ops);
            gram.noalias() += vec * vec.adjoint();
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > 1e-9 * top) {
            ++rank;
        }
    }
    return rank;
}

double log_likelihood(const DensityMatrix &rho, std::span<const measure::CountTable> tables) {
    const Design d = build_design(tables);
    if (d.num_qubits != rho.num_qubits()) {
        throw std::invalid_argument("state and count tables differ in register size");
    }
    return log_likelihood_of(d, rho.matrix());
}

MLResult maximum_likelihood(std::span<const measure::CountTable> tables, const MLConfig &cfg) {
    cfg.validate();
    const Design d = build_design(tables);

    std::vector<measure::MeasurementSetting> settings;
    settings.reserve(tables.size());
    for (const auto &t : tables) {
        settings.push_back(t.setting);
    }
    const std::size_t required = std::size_t{1} << (2 * d.num_qubits);
    const std::size_t rank = design_rank(settings);
    if (rank < required) {
        throw IncompleteSettingsError(rank, required);
    }

    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << d.num_qubits);
    const Matrix identity = Matrix::Identity(dim, dim);
    Matrix t = identity * (1.0 / std::sqrt(static_cast<double>(dim)) + cfg.regularizer);
    t = retriangularize(t);
    Matrix rho = rho_from_factor(t);
    double ll = log_likelihood_of(d, rho);

    MLResult out{detail::Access::density(d.num_qubits, rho), t, ll, 0, false, {ll}};
    double eps = 1.0;
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        const Eigen::VectorXd p = probabilities(d, rho);
        const Eigen::VectorXd scale = d.weights.cwiseQuotient(p.cwiseMax(1e-300)) / d.total;
        const Matrix r = d.vectors * scale.cast<Complex>().asDiagonal() * d.vectors.adjoint();

        bool accepted = false;
        Matrix next_t;
        Matrix next_rho;
        double next_ll = ll;
        for (int attempt = 0; attempt < 60; ++attempt) {
            next_t = t * (identity + eps * r);
            next_rho = rho_from_factor(next_t);
            next_ll = log_likelihood_of(d, next_rho);
            if (next_ll >= ll) {
                accepted = true;
                break;
            }
            eps *= 0.5;
        }
        if (!accepted) {
            out.converged = true;
            break;
        }
        const double gain = (next_ll - ll) / d.total;
        t = retriangularize(next_t);
        rho = rho_from_factor(t);
        ll = log_likelihood_of(d, rho);
        // Re-triangularization is exact up to rounding; keep the history monotone.
        ll = std::max(ll, out.ll_history.back());
        out.ll_history.push_back(ll);
        eps = std::min(eps * 2.0, 1e8);
        if (gain < cfg.ll_tolerance) {
            out.converged = true;
            ++it;
            break;
        }
    }

    out.rho_hat = DensityMatrix::from_matrix(rho);
    out.cholesky_factor = retriangularize(t);
    out.log_likelihood = ll;
    out.iterations_used = it;
    return out;
}

ReducedFidelities reduced_fidelities(const DensityMatrix &rho4_pre_phase) {
    if (rho4_pre_phase.num_qubits() != 4) {
        throw std::invalid_argument("reduced fidelities need the 4-qubit state");
    }
    using cluster::EncodingMap;
    const auto best_bell = [](const DensityMatrix &pair) {
        return std::max(fidelity(cluster::bell_state(false), pair),
                        fidelity(cluster::bell_state(true), pair));
    };
    const auto pol = partial_trace(rho4_pre_phase,
                                   {EncodingMap::kPhotonPolarization, EncodingMap::kSpinPolarization});
    const auto sp = partial_trace(rho4_pre_phase, {EncodingMap::kPhotonSpatial, EncodingMap::kSpinSpatial});
    return {best_bell(pol), best_bell(sp)};
}

TomographyReport reconstruct(std::span<const measure::CountTable> tables, const MLConfig &cfg) {
    MLResult ml = maximum_likelihood(tables, cfg);
    TomographyReport report{ml.rho_hat, ml.log_likelihood, ml.iterations_used, ml.converged,
                            std::move(ml.ll_history), std::nullopt, std::nullopt, std::nullopt};
    if (report.rho_hat.num_qubits() == 4) {
        report.fidelity_vs_C4 = fidelity(cluster::ideal_cluster_state(), report.rho_hat);
        const auto reduced = reduced_fidelities(cluster::toggle_cluster_phase(report.rho_hat));
        report.reduced_polarization_fidelity = reduced.polarization;
        report.reduced_spatial_fidelity = reduced.spatial;
    }
    return report;
}

}  // namespace oneway::tomo
