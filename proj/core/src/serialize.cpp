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

#include "oneway/serialize.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace oneway::io {

namespace {

using Json = nlohmann::ordered_json;

Json basis_to_json(const measure::MeasurementBasis &b) {
    if (b.kind == measure::MeasurementBasis::Kind::computational) {
        return "Z";
    }
    if (b.alpha == 0.0) {
        return "X";
    }
    if (b.alpha == std::numbers::pi / 2.0) {
        return "Y";
    }
    return b.alpha;
}

measure::MeasurementBasis basis_from_json(const Json &j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.size() != 1) {
            throw std::invalid_argument("basis label must be X, Y or Z");
        }
        return measure::MeasurementBasis::pauli(s[0]);
    }
    if (j.is_number()) {
        return measure::MeasurementBasis::equatorial(j.get<double>());
    }
    throw std::invalid_argument("basis must be a Pauli letter or an equatorial phase");
}

Json table_json(const measure::CountTable &t) {
    Json setting = Json::array();
    for (const auto &b : t.setting) {
        setting.push_back(basis_to_json(b));
    }
    Json counts = Json::object();
    for (const auto &[bits, n] : t.counts) {
        counts[bits] = n;
    }
    return Json{{"setting", setting}, {"shots", t.shots}, {"counts", counts}};
}

measure::CountTable table_from(const Json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("count table must be a JSON object");
    }
    for (const auto &[key, _] : j.items()) {
        if (key != "setting" && key != "shots" && key != "counts") {
            throw std::invalid_argument("unknown count table key '" + key + "'");
        }
    }
    measure::CountTable t;
    for (const auto &b : j.at("setting")) {
        t.setting.push_back(basis_from_json(b));
    }
    t.shots = j.at("shots").get<std::uint64_t>();
    for (const auto &[bits, n] : j.at("counts").items()) {
        t.counts[bits] = n.get<std::uint64_t>();
    }
    t.validate();
    return t;
}

Json rho_json(const DensityMatrix &rho) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
        for (std::size_t c = 0; c < rho.dimension(); ++c) {
            const Complex v = rho(r, c);
            entries.push_back(Json::array({r, c, v.real(), v.imag()}));
        }
    }
    return Json{{"num_qubits", rho.num_qubits()}, {"dimension", rho.dimension()}, {"entries", entries}};
}

Json optional_number(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

Json state_json(const StateVector &s) {
    Json amps = Json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        amps.push_back(Json::array({s[i].real(), s[i].imag()}));
    }
    return amps;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_json(const measure::CountTable &table) { return dump(table_json(table)); }

std::string to_json(std::span<const measure::CountTable> tables) {
    Json arr = Json::array();
    for (const auto &t : tables) {
        arr.push_back(table_json(t));
    }
    return dump(arr);
}

measure::CountTable count_table_from_json(std::string_view text) {
    return table_from(Json::parse(text));
}

std::vector<measure::CountTable> count_tables_from_json(std::string_view text) {
    const Json j = Json::parse(text);
    std::vector<measure::CountTable> out;
    if (j.is_array()) {
        for (const auto &t : j) {
            out.push_back(table_from(t));
        }
    } else {
        out.push_back(table_from(j));
    }
    return out;
}

std::string to_json(const DensityMatrix &rho) { return dump(rho_json(rho)); }

DensityMatrix density_matrix_from_json(std::string_view text) {
    const Json j = Json::parse(text);
    const auto dim = j.at("dimension").get<Eigen::Index>();
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto &e : j.at("entries")) {
        const auto r = e.at(0).get<Eigen::Index>();
        const auto c = e.at(1).get<Eigen::Index>();
        if (r < 0 || c < 0 || r >= dim || c >= dim) {
            throw std::invalid_argument("density matrix entry index out of range");
        }
        m(r, c) = Complex(e.at(2).get<double>(), e.at(3).get<double>());
    }
    return DensityMatrix::from_matrix(std::move(m));
}

std::string to_json(const tomo::TomographyReport &report) {
    Json j{
        {"log_likelihood", report.log_likelihood},
        {"iterations_used", report.iterations_used},
        {"converged", report.converged},
        {"fidelity_vs_C4", optional_number(report.fidelity_vs_C4)},
        {"reduced_polarization_fidelity", optional_number(report.reduced_polarization_fidelity)},
        {"reduced_spatial_fidelity", optional_number(report.reduced_spatial_fidelity)},
        {"rho_hat", rho_json(report.rho_hat)},
    };
    return dump(j);
}

std::string to_json(const cluster::WitnessReport &report) {
    Json j{{"expectation", report.expectation},
           {"bound", report.fidelity_lower_bound},
           {"genuinely_entangled", report.genuinely_entangled}};
    return dump(j);
}

std::string to_json(const mbqc::RotationResult &result) {
    Json branches = Json::object();
    for (const auto &b : result.branches) {
        const std::string key = std::to_string(b.s2) + std::to_string(b.s3);
        const auto bloch = bloch_vector(b.corrected_output);
        branches[key] = Json{
            {"probability", b.probability},
            {"reachable", b.reachable},
            {"shots", b.shots},
            {"q3_basis_angle", b.trace.q3_basis_angle},
            {"z_correction", b.trace.z_correction},
            {"x_correction", b.trace.x_correction},
            {"fidelity", b.reachable ? fidelity(result.target, b.corrected_output) : 0.0},
            {"corrected_bloch", Json::array({bloch[0], bloch[1], bloch[2]})},
            {"raw_output", rho_json(b.raw_output)},
        };
    }
    const auto bloch = bloch_vector(result.corrected_output);
    Json j{
        {"fidelity", result.fidelity},
        {"postselect_prob", result.postselect_prob},
        {"target", state_json(result.target)},
        {"corrected_bloch", Json::array({bloch[0], bloch[1], bloch[2]})},
        {"corrected_output", rho_json(result.corrected_output)},
        {"branches", branches},
    };
    return dump(j);
}

std::string to_json(const timing::LatencyBudget &budget) {
    Json j{
        {"eom_response_us", budget.eom_response},
        {"optical_propagation_us", budget.optical_propagation},
        {"signal_processing_us", budget.signal_processing},
        {"storage_before_first_readout_us", budget.storage_before_first_readout},
        {"coherence_time_us", budget.coherence_time},
        {"cycle_us", timing::cycle_time(budget)},
        {"max_steps", timing::max_steps(budget)},
        {"max_steps_rule", "floor((coherence - first_readout_storage) / cycle), inferred"},
    };
    return dump(j);
}

std::string lifetime_csv(std::span<const noise::LifetimePoint> points) {
    std::string out = "t_us,fidelity_bound\n";
    for (const auto &p : points) {
        out += format_double(p.t_us) + "," + format_double(p.fidelity_bound) + "\n";
    }
    return out;
}

std::string sweep_csv(std::span<const mbqc::SweepPoint> points, std::string_view mode,
                      std::string_view noise_tag, bool per_branch) {
    std::string out = "angle_rad,fidelity,mode,noise_tag,branch_s2,branch_s3\n";
    const std::string tail = "," + std::string(mode) + "," + std::string(noise_tag);
    for (const auto &p : points) {
        out += format_double(p.angle) + "," + format_double(p.fidelity) + tail + ",,\n";
        if (per_branch) {
            for (int i = 0; i < 4; ++i) {
                out += format_double(p.angle) + "," + format_double(p.branch_fidelities[static_cast<std::size_t>(i)]) +
                       tail + "," + std::to_string(i / 2) + "," + std::to_string(i % 2) + "\n";
            }
        }
    }
    return out;
}

}  // namespace oneway::io
