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

#include "oneway/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oneway/constants.hpp"

namespace oneway::noise {

namespace {

double witness_bound(const DensityMatrix &cluster_rho, double t_us, const StorageNoiseParams &noise) {
    return cluster::evaluate_witness(apply_storage(cluster_rho, t_us, noise)).fidelity_lower_bound;
}

StorageNoiseParams with_tau(StorageNoiseParams p, double tau) {
    p.tau_us = tau;
    return p;
}

// Bisection in log(tau) for bound(t) == target; the bound grows with tau.
struct TauSolve {
    double tau;
    double achieved;
};

TauSolve solve_tau(const DensityMatrix &cluster_rho, double t_us, double target,
                   const CalibrationOptions &opt) {
    double lo = std::log(opt.tau_min_us);
    double hi = std::log(opt.tau_max_us);
    const double b_lo = witness_bound(cluster_rho, t_us, with_tau(opt.noise_template, opt.tau_min_us));
    const double b_hi = witness_bound(cluster_rho, t_us, with_tau(opt.noise_template, opt.tau_max_us));
    if (target >= b_hi) {
        return {opt.tau_max_us, b_hi};
    }
    if (target <= b_lo) {
        return {opt.tau_min_us, b_lo};
    }
    for (int i = 0; i < opt.bisection_steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double b = witness_bound(cluster_rho, t_us, with_tau(opt.noise_template, std::exp(mid)));
        if (b < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double tau = std::exp(0.5 * (lo + hi));
    return {tau, witness_bound(cluster_rho, t_us, with_tau(opt.noise_template, tau))};
}

cluster::PreparationParams prep_for(double imbalance, const CalibrationOptions &opt) {
    cluster::PreparationParams p;
    p.theta = opt.theta;
    p.imbalance = imbalance;
    p.spatial_white_noise = opt.spatial_white_noise;
    return p;
}

CalibrationResult finish(std::span<const LifetimeTarget> targets, cluster::PreparationParams prep,
                         StorageNoiseParams noise) {
    CalibrationResult out{prep, noise, 0.0, {}};
    const DensityMatrix rho = cluster::prepare_cluster(prep);
    for (const auto &t : targets) {
        const double b = witness_bound(rho, t.t_us, noise);
        out.achieved.push_back(b);
        out.residual = std::max(out.residual, std::abs(b - t.fidelity_bound));
    }
    return out;
}

}  // namespace

void StorageNoiseParams::validate() const {
    if (!(tau_us > 0.0)) {
        throw std::invalid_argument("tau must be positive");
    }
    if (!(osc_amp >= 0.0 && osc_amp < 1.0)) {
        throw std::invalid_argument("oscillation amplitude must lie in [0, 1)");
    }
    if (!std::isfinite(osc_freq)) {
        throw std::invalid_argument("oscillation frequency must be finite");
    }
}

double coherence_retention(double t_us, const StorageNoiseParams &params) {
    params.validate();
    if (t_us < 0.0) {
        throw std::invalid_argument("storage time must be nonnegative");
    }
    const double x = t_us / params.tau_us;
    const double envelope =
        params.envelope == Envelope::gaussian ? std::exp(-x * x) : std::exp(-x);
    const double modulation = 1.0 - params.osc_amp * (1.0 - std::cos(params.osc_freq * t_us)) / 2.0;
    return std::clamp(envelope * modulation, 0.0, 1.0);
}

QuantumChannel dephasing_channel(double retention) {
    if (!(retention >= 0.0 && retention <= 1.0)) {
        throw std::invalid_argument("retention must lie in [0, 1]");
    }
    Matrix k0 = Matrix::Identity(2, 2) * std::sqrt((1.0 + retention) / 2.0);
    Matrix k1 = Matrix::Zero(2, 2);
    k1(0, 0) = std::sqrt((1.0 - retention) / 2.0);
    k1(1, 1) = -std::sqrt((1.0 - retention) / 2.0);
    return QuantumChannel::from_kraus({std::move(k0), std::move(k1)});
}

QuantumChannel storage_channel(double t_us, const StorageNoiseParams &params) {
    const double g = coherence_retention(t_us, params);
    const auto single = dephasing_channel(g).kraus_operators();
    std::vector<Matrix> joint;
    for (const auto &a : single) {
        for (const auto &b : single) {
            Matrix k(4, 4);
            for (Eigen::Index r = 0; r < 2; ++r) {
                for (Eigen::Index c = 0; c < 2; ++c) {
                    k.block(2 * r, 2 * c, 2, 2) = a(r, c) * b;
                }
            }
            joint.push_back(std::move(k));
        }
    }
    return QuantumChannel::from_kraus(std::move(joint));
}

DensityMatrix apply_storage(const DensityMatrix &rho, double t_us, const StorageNoiseParams &params) {
    if (rho.num_qubits() != 4) {
        throw std::invalid_argument("storage acts on the 4-qubit cluster register");
    }
    return apply_channel(rho, storage_channel(t_us, params),
                         {cluster::EncodingMap::kSpinPolarization, cluster::EncodingMap::kSpinSpatial});
}

std::vector<LifetimePoint> lifetime_curve(std::span<const double> times,
                                          const cluster::PreparationParams &prep,
                                          const StorageNoiseParams &noise) {
    if (!std::is_sorted(times.begin(), times.end())) {
        throw std::invalid_argument("lifetime times must be sorted ascending");
    }
    noise.validate();
    const DensityMatrix rho = cluster::prepare_cluster(prep);
    std::vector<LifetimePoint> out;
    out.reserve(times.size());
    for (double t : times) {
        out.push_back({t, witness_bound(rho, t, noise)});
    }
    return out;
}

std::vector<double> time_grid(double t0, double t_max, double step) {
    if (!(step > 0.0) || t_max < t0) {
        throw std::invalid_argument("time grid needs step > 0 and t_max >= t0");
    }
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((t_max - t0) / step + 1e-6));
    for (std::size_t i = 0; i <= count; ++i) {
        out.push_back(t0 + static_cast<double>(i) * step);
    }
    return out;
}

CalibrationResult calibrate(std::span<const LifetimeTarget> targets, const CalibrationOptions &opt) {
    if (targets.empty() || targets.size() > 2) {
        throw std::invalid_argument("calibration takes one or two lifetime targets");
    }
    opt.noise_template.validate();
    std::vector<LifetimeTarget> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &a, const auto &b) { return a.t_us < b.t_us; });

    if (sorted.size() == 1) {
        const auto prep = prep_for(opt.imbalance_max, opt);
        const DensityMatrix rho = cluster::prepare_cluster(prep);
        const auto [tau, achieved] = solve_tau(rho, sorted[0].t_us, sorted[0].fidelity_bound, opt);
        auto result = finish(sorted, prep, with_tau(opt.noise_template, tau));
        if (result.residual > opt.tolerance) {
            throw CalibrationError("lifetime target out of reach", result.residual);
        }
        return result;
    }

    const auto &first = sorted[0];
    const auto &second = sorted[1];
    if (opt.noise_template.osc_amp == 0.0 && second.t_us > first.t_us &&
        second.fidelity_bound > first.fidelity_bound + opt.tolerance) {
        // A monotone envelope cannot raise the bound later in time.
        throw CalibrationError("later target exceeds earlier target under monotone decay",
                               0.5 * (second.fidelity_bound - first.fidelity_bound));
    }

    auto late_bound = [&](double r) {
        const DensityMatrix rho = cluster::prepare_cluster(prep_for(r, opt));
        const auto solve = solve_tau(rho, first.t_us, first.fidelity_bound, opt);
        return std::pair{solve, witness_bound(rho, second.t_us, with_tau(opt.noise_template, solve.tau))};
    };

    // The best-prepared state must be able to reach the first target at all.
    const DensityMatrix best = cluster::prepare_cluster(prep_for(opt.imbalance_max, opt));
    const double ceiling = witness_bound(best, first.t_us, with_tau(opt.noise_template, opt.tau_max_us));
    if (ceiling < first.fidelity_bound - opt.tolerance) {
        throw CalibrationError("first target exceeds the best preparable bound",
                               first.fidelity_bound - ceiling);
    }

    // Smallest imbalance for which the first target is still reachable.
    double r_lo = opt.imbalance_min;
    double r_hi = opt.imbalance_max;
    {
        const DensityMatrix worst = cluster::prepare_cluster(prep_for(r_lo, opt));
        if (witness_bound(worst, first.t_us, with_tau(opt.noise_template, opt.tau_max_us)) <
            first.fidelity_bound) {
            double a = r_lo;
            double b = r_hi;
            for (int i = 0; i < opt.bisection_steps; ++i) {
                const double mid = 0.5 * (a + b);
                const DensityMatrix rho = cluster::prepare_cluster(prep_for(mid, opt));
                if (witness_bound(rho, first.t_us, with_tau(opt.noise_template, opt.tau_max_us)) <
                    first.fidelity_bound) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            r_lo = b;
        }
    }

    // Larger r makes the state better, which forces faster decay to match the
    // first target and lowers the late bound.
    const double g_hi = late_bound(r_hi).second - second.fidelity_bound;
    const double g_lo = late_bound(r_lo).second - second.fidelity_bound;
    double r_best = r_hi;
    if (g_hi > 0.0) {
        r_best = r_hi;
    } else if (g_lo < 0.0) {
        r_best = r_lo;
    } else {
        double a = r_lo;
        double b = r_hi;
        for (int i = 0; i < opt.bisection_steps; ++i) {
            const double mid = 0.5 * (a + b);
            if (late_bound(mid).second - second.fidelity_bound > 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        r_best = 0.5 * (a + b);
    }

    const auto [solve, late] = late_bound(r_best);
    auto result = finish(sorted, prep_for(r_best, opt), with_tau(opt.noise_template, solve.tau));
    if (result.residual > opt.tolerance) {
        throw CalibrationError("lifetime targets cannot be met inside the parameter bounds",
                               result.residual);
    }
    return result;
}

const CalibrationResult &reference_calibration() {
    static const CalibrationResult cached = [] {
        const LifetimeTarget targets[] = {
            {constants::kFirstReadoutStorageUs, constants::kFidelityBoundAtFirstReadout},
            {constants::kClusterLifetimeUs, constants::kLifetimeThresholdBound},
        };
        return calibrate(targets);
    }();
    return cached;
}

}  // namespace oneway::noise
