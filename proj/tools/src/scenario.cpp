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

#include "oneway/cli/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "oneway/constants.hpp"
#include "oneway/mbqc.hpp"
#include "oneway/measure.hpp"
#include "oneway/serialize.hpp"
#include "oneway/tomo.hpp"

namespace oneway::cli {

namespace {

#ifndef ONEWAY_VERSION
#define ONEWAY_VERSION "0.0.0"
#endif
constexpr const char *kVersionString = ONEWAY_VERSION;

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

double angle_for(std::string_view key, std::string_view text) {
    try {
        return parse_angle(text);
    } catch (const ConfigError &) {
        throw ConfigError("invalid angle for '" + std::string(key) + "': '" + std::string(trim(text)) + "'");
    }
}

Scenario parse_scenario(std::string_view text) {
    static constexpr std::pair<std::string_view, Scenario> kNames[] = {
        {"witness", Scenario::witness},       {"lifetime", Scenario::lifetime},
        {"tomography", Scenario::tomography}, {"rotate", Scenario::rotate},
        {"sweep", Scenario::sweep},           {"budget", Scenario::budget},
    };
    for (const auto &[name, s] : kNames) {
        if (text == name) {
            return s;
        }
    }
    throw ConfigError("unknown scenario '" + std::string(text) + "'");
}

struct Model {
    cluster::PreparationParams prep;
    noise::StorageNoiseParams storage;
    double storage_time_us = 0.0;
    bool noiseless = true;
    std::string tag;
};

bool has_overrides(const ScenarioConfig &c) {
    return c.theta || c.imbalance || c.spatial_white_noise || c.tau_us || c.osc_amp || c.osc_freq ||
           c.envelope;
}

std::vector<noise::LifetimeTarget> parse_fit(std::string_view text) {
    std::vector<noise::LifetimeTarget> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw ConfigError("fit targets must look like t:F,t:F");
        }
        out.push_back({parse_double("fit", item.substr(0, colon)), parse_double("fit", item.substr(colon + 1))});
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    if (out.empty() || out.size() > 2) {
        throw ConfigError("fit takes one or two t:F targets");
    }
    return out;
}

Model resolve_model(const ScenarioConfig &cfg) {
    Model m;
    m.tag = cfg.noise_base;
    if (!cfg.fit.empty()) {
        const auto targets = parse_fit(cfg.fit);
        const auto cal = noise::calibrate(targets);
        m.prep = cal.prep;
        m.storage = cal.noise;
        m.tag = "fitted";
    } else if (cfg.noise_base == "calibrated") {
        const auto &cal = noise::reference_calibration();
        m.prep = cal.prep;
        m.storage = cal.noise;
    }
    if (cfg.theta) m.prep.theta = *cfg.theta;
    if (cfg.imbalance) m.prep.imbalance = *cfg.imbalance;
    if (cfg.spatial_white_noise) m.prep.spatial_white_noise = *cfg.spatial_white_noise;
    if (cfg.tau_us) m.storage.tau_us = *cfg.tau_us;
    if (cfg.osc_amp) m.storage.osc_amp = *cfg.osc_amp;
    if (cfg.osc_freq) m.storage.osc_freq = *cfg.osc_freq;
    if (cfg.envelope) m.storage.envelope = *cfg.envelope;
    if (has_overrides(cfg)) {
        m.tag = "custom";
    }
    m.noiseless = m.tag == "ideal" && !cfg.storage_time_us;
    m.storage_time_us = cfg.storage_time_us.value_or(m.tag == "ideal" ? 0.0 : constants::kFirstReadoutStorageUs);
    m.prep.validate();
    m.storage.validate();
    if (m.storage_time_us < 0.0) {
        throw ConfigError("storage_time must be nonnegative");
    }
    return m;
}

std::optional<mbqc::NoiseModel> noise_model(const Model &m) {
    if (m.noiseless) {
        return std::nullopt;
    }
    return mbqc::NoiseModel{m.prep, m.storage, m.storage_time_us};
}

DensityMatrix model_state(const Model &m) { return mbqc::resource_state(noise_model(m)); }

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw InvariantViolation("verification failed: " + what);
    }
}

void verify_physical(const DensityMatrix &rho, const std::string &label) {
    require(std::abs(rho.matrix().trace().real() - 1.0) < 1e-9, label + " has unit trace");
    const auto ev = eigenvalues(rho);
    require(*std::min_element(ev.begin(), ev.end()) >= -1e-9, label + " is positive semidefinite");
}

Json with_header(const ScenarioConfig &cfg, const std::string &tag) {
    return Json{{"scenario", scenario_name(cfg.scenario)}, {"noise_tag", tag}};
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

void merge(Json &into, const std::string &text) {
    const Json parsed = Json::parse(text);
    for (const auto &[k, v] : parsed.items()) {
        into[k] = v;
    }
}

std::string run_witness(const ScenarioConfig &cfg, Format fmt) {
    if (fmt != Format::json) {
        throw ConfigError("witness output is JSON only");
    }
    const Model m = resolve_model(cfg);
    const DensityMatrix rho = model_state(m);
    const auto report = cluster::evaluate_witness(rho);
    if (cfg.verify) {
        const auto ideal = cluster::evaluate_witness(DensityMatrix::from_state(cluster::ideal_cluster_state()));
        require(std::abs(ideal.expectation + 1.0) < 1e-10, "ideal witness expectation is -1");
        for (auto term : cluster::kWitnessTerms) {
            require(std::abs(expectation(cluster::ideal_cluster_state(),
                                         ObservableOperator::pauli_string(term)) - 1.0) < 1e-10,
                    "witness term " + std::string(term) + " stabilizes the cluster");
        }
        verify_physical(rho, "state");
        require(report.fidelity_lower_bound <= fidelity(cluster::ideal_cluster_state(), rho) + 1e-9,
                "witness bound does not exceed the cluster fidelity");
    }
    Json j;
    merge(j, io::to_json(report));
    j["fidelity_vs_C4"] = fidelity(cluster::ideal_cluster_state(), rho);
    j["storage_time_us"] = m.storage_time_us;
    Json out = with_header(cfg, m.tag);
    for (auto &[k, v] : j.items()) out[k] = v;
    return dump(out);
}

std::string run_lifetime(const ScenarioConfig &cfg, Format fmt) {
    const Model m = resolve_model(cfg);
    const auto grid = noise::time_grid(0.0, cfg.t_max, cfg.t_step);
    const auto curve = noise::lifetime_curve(grid, m.prep, m.storage);
    if (cfg.verify) {
        const DensityMatrix rho = cluster::prepare_cluster(m.prep);
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const auto &p = curve[i];
            require(p.fidelity_bound >= -0.5 - 1e-12 && p.fidelity_bound <= 1.0 + 1e-12,
                    "lifetime bound lies in [-0.5, 1]");
            const auto stored = noise::apply_storage(rho, p.t_us, m.storage);
            require(p.fidelity_bound <= fidelity(cluster::ideal_cluster_state(), stored) + 1e-9,
                    "lifetime bound does not exceed the cluster fidelity");
            if (m.storage.osc_amp == 0.0 && i > 0) {
                require(p.fidelity_bound <= curve[i - 1].fidelity_bound + 1e-12,
                        "lifetime curve is non-increasing without oscillation");
            }
        }
    }
    if (fmt == Format::csv) {
        return io::lifetime_csv(curve);
    }
    Json out = with_header(cfg, m.tag);
    out["imbalance"] = m.prep.imbalance;
    out["spatial_white_noise"] = m.prep.spatial_white_noise;
    out["tau_us"] = m.storage.tau_us;
    Json pts = Json::array();
    for (const auto &p : curve) {
        pts.push_back(Json{{"t_us", p.t_us}, {"fidelity_bound", p.fidelity_bound}});
    }
    out["points"] = pts;
    return dump(out);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string run_tomography(const ScenarioConfig &cfg, Format fmt) {
    if (fmt != Format::json) {
        throw ConfigError("tomography output is JSON only");
    }
    const Model m = resolve_model(cfg);
    std::vector<measure::CountTable> tables;
    std::optional<double> true_fidelity;
    const std::uint64_t shots = cfg.shots == 0 ? 10000 : cfg.shots;
    if (!cfg.counts_file.empty()) {
        try {
            tables = io::count_tables_from_json(read_file(cfg.counts_file));
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError("malformed counts file: " + std::string(e.what()));
        }
    } else {
        const DensityMatrix rho = model_state(m);
        true_fidelity = fidelity(cluster::ideal_cluster_state(), rho);
        const auto settings = measure::pauli_settings(4);
        tables = measure::sample_counts(rho, settings, shots, measure::RandomSource(cfg.seed));
    }
    tomo::TomographyReport report;
    try {
        report = tomo::reconstruct(tables);
    } catch (const tomo::IncompleteSettingsError &e) {
        throw ConfigError(e.what());
    }
    if (cfg.verify) {
        verify_physical(report.rho_hat, "reconstruction");
        for (std::size_t i = 1; i < report.ll_history.size(); ++i) {
            require(report.ll_history[i] >= report.ll_history[i - 1], "log-likelihood is non-decreasing");
        }
        if (report.fidelity_vs_C4) {
            const auto w = cluster::evaluate_witness(report.rho_hat);
            require(w.fidelity_lower_bound <= *report.fidelity_vs_C4 + 1e-6,
                    "witness bound of the estimate does not exceed its fidelity");
        }
    }
    Json out = with_header(cfg, cfg.counts_file.empty() ? m.tag : "counts_file");
    if (cfg.counts_file.empty()) {
        out["shots_per_setting"] = shots;
        out["seed"] = cfg.seed;
        out["settings"] = tables.size();
        out["true_fidelity_vs_C4"] = *true_fidelity;
    }
    merge(out, io::to_json(report));
    return dump(out);
}

mbqc::RotationRequest rotation_request(const ScenarioConfig &cfg, const Model &m) {
    mbqc::RotationRequest req;
    req.alpha = cfg.alpha;
    req.beta = cfg.beta;
    req.feedforward_enabled = cfg.feedforward;
    req.mode = cfg.shots > 0 ? mbqc::Mode::sampled : mbqc::Mode::exact;
    req.shots = cfg.shots;
    req.noise = noise_model(m);
    return req;
}

void verify_branches(const mbqc::RotationResult &r, double alpha, double beta, bool noiseless, bool ff) {
    double total = 0.0;
    for (const auto &b : r.branches) total += b.probability;
    require(std::abs(total - 1.0) < 1e-9, "branch probabilities sum to 1");
    const auto check = mbqc::branch_verify(alpha, beta);
    require(check.passed, "branch identity holds on every branch");
    if (noiseless && ff) {
        const StateVector ref = dominant_eigenvector(r.branches[0].corrected_output);
        for (const auto &b : r.branches) {
            require(phase_aligned_distance(ref, dominant_eigenvector(b.corrected_output)) < 1e-9,
                    "corrected outputs agree across branches");
        }
    }
}

std::string run_rotate(const ScenarioConfig &cfg, Format fmt) {
    if (fmt != Format::json) {
        throw ConfigError("rotate output is JSON only");
    }
    const Model m = resolve_model(cfg);
    const auto req = rotation_request(cfg, m);
    measure::RandomSource rng(cfg.seed);
    const auto result = mbqc::run_rotation(req, rng);
    if (cfg.verify) {
        verify_branches(result, cfg.alpha, cfg.beta, m.noiseless, cfg.feedforward);
        verify_physical(result.corrected_output, "corrected output");
    }
    Json out = with_header(cfg, m.tag);
    out["alpha"] = cfg.alpha;
    out["beta"] = cfg.beta;
    out["feedforward"] = cfg.feedforward;
    out["mode"] = req.mode == mbqc::Mode::exact ? "exact" : "sampled";
    out["shots"] = cfg.shots;
    out["seed"] = cfg.seed;
    merge(out, io::to_json(result));
    return dump(out);
}

std::string run_sweep(const ScenarioConfig &cfg, Format fmt) {
    const Model m = resolve_model(cfg);
    const auto mode = cfg.sweep_mode == "rx" ? mbqc::SweepMode::rx : mbqc::SweepMode::rz;
    const auto templ = rotation_request(cfg, m);
    const auto points = mbqc::sweep(mode, cfg.sweep_step, templ, measure::RandomSource(cfg.seed));
    if (cfg.verify) {
        for (const auto &p : points) {
            const double alpha = mode == mbqc::SweepMode::rx ? std::numbers::pi / 2.0 : p.angle;
            const double beta = mode == mbqc::SweepMode::rx ? p.angle : 0.0;
            require(mbqc::branch_verify(alpha, beta).passed, "branch identity holds at every sweep angle");
            double total = 0.0;
            for (double q : p.branch_probabilities) total += q;
            require(std::abs(total - 1.0) < 1e-9, "branch probabilities sum to 1");
            if (m.noiseless && cfg.feedforward && cfg.shots == 0) {
                require(std::abs(p.fidelity - 1.0) < 1e-9, "noiseless sweep fidelity is 1");
            }
        }
    }
    if (fmt == Format::csv) {
        return io::sweep_csv(points, cfg.sweep_mode, m.tag, cfg.branches);
    }
    Json out = with_header(cfg, m.tag);
    out["mode"] = cfg.sweep_mode;
    out["feedforward"] = cfg.feedforward;
    out["mean_fidelity"] = mbqc::mean_fidelity(points);
    Json pts = Json::array();
    for (const auto &p : points) {
        Json row{{"angle_rad", p.angle}, {"fidelity", p.fidelity}};
        if (cfg.branches) {
            row["branch_fidelities"] = p.branch_fidelities;
            row["branch_probabilities"] = p.branch_probabilities;
        }
        pts.push_back(std::move(row));
    }
    out["points"] = pts;
    return dump(out);
}

std::string run_budget(const ScenarioConfig &cfg, Format fmt) {
    if (fmt != Format::json) {
        throw ConfigError("budget output is JSON only");
    }
    const auto &b = cfg.budget;
    if (timing::cycle_time(b) <= 0.0) {
        throw ConfigError("cycle time must be positive");
    }
    if (cfg.verify) {
        const auto n = timing::max_steps(b);
        if (b.coherence_time >= b.storage_before_first_readout) {
            require(static_cast<double>(n) * timing::cycle_time(b) + b.storage_before_first_readout <=
                        b.coherence_time + 1e-9,
                    "budget fits inside the coherence time");
        } else {
            require(n == 0, "budget is empty when storage exceeds coherence");
        }
    }
    Json out{{"scenario", scenario_name(cfg.scenario)}};
    merge(out, io::to_json(b));
    return dump(out);
}

}  // namespace

std::string_view scenario_name(Scenario s) {
    switch (s) {
    case Scenario::witness:
        return "witness";
    case Scenario::lifetime:
        return "lifetime";
    case Scenario::tomography:
        return "tomography";
    case Scenario::rotate:
        return "rotate";
    case Scenario::sweep:
        return "sweep";
    case Scenario::budget:
        return "budget";
    }
    return "unknown";
}

double parse_angle(std::string_view text) {
    text = trim(text);
    const auto pos = text.find("pi");
    if (pos == std::string_view::npos) {
        return parse_double("angle", text);
    }
    std::string_view coef = text.substr(0, pos);
    std::string_view rest = text.substr(pos + 2);
    double scale = 1.0;
    if (coef == "-") {
        scale = -1.0;
    } else if (!coef.empty() && coef != "+") {
        if (coef.back() == '*') coef.remove_suffix(1);
        scale = parse_double("angle", coef);
    }
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw ConfigError("invalid angle");
        }
        divisor = parse_double("angle", rest.substr(1));
        if (divisor == 0.0) {
            throw ConfigError("invalid angle");
        }
    }
    return scale * std::numbers::pi / divisor;
}

void apply_key(ScenarioConfig &cfg, std::string_view key, std::string_view raw) {
    const std::string_view v = trim(raw);
    if (key == "scenario") {
        cfg.scenario = parse_scenario(v);
    } else if (key == "noise") {
        if (v == "ideal" || v == "noiseless") {
            cfg.noise_base = "ideal";
        } else if (v == "calibrated") {
            cfg.noise_base = "calibrated";
        } else {
            throw ConfigError("noise must be ideal, noiseless or calibrated");
        }
    } else if (key == "theta") {
        cfg.theta = angle_for(key, v);
    } else if (key == "imbalance") {
        cfg.imbalance = parse_double(key, v);
    } else if (key == "spatial_white_noise") {
        cfg.spatial_white_noise = parse_double(key, v);
    } else if (key == "tau_us") {
        cfg.tau_us = parse_double(key, v);
    } else if (key == "osc_amp") {
        cfg.osc_amp = parse_double(key, v);
    } else if (key == "osc_freq") {
        cfg.osc_freq = parse_double(key, v);
    } else if (key == "envelope") {
        if (v == "gaussian") {
            cfg.envelope = noise::Envelope::gaussian;
        } else if (v == "exponential") {
            cfg.envelope = noise::Envelope::exponential;
        } else {
            throw ConfigError("envelope must be gaussian or exponential");
        }
    } else if (key == "storage_time") {
        cfg.storage_time_us = parse_double(key, v);
    } else if (key == "fit") {
        cfg.fit = std::string(v);
    } else if (key == "shots") {
        cfg.shots = parse_unsigned(key, v);
    } else if (key == "seed") {
        cfg.seed = parse_unsigned(key, v);
    } else if (key == "out") {
        cfg.out = std::string(v);
    } else if (key == "format") {
        if (v == "json") {
            cfg.format = Format::json;
        } else if (v == "csv") {
            cfg.format = Format::csv;
        } else {
            throw ConfigError("format must be json or csv");
        }
    } else if (key == "verify") {
        cfg.verify = parse_bool(key, v);
    } else if (key == "alpha") {
        cfg.alpha = angle_for(key, v);
    } else if (key == "beta") {
        cfg.beta = angle_for(key, v);
    } else if (key == "feedforward") {
        cfg.feedforward = parse_bool(key, v);
    } else if (key == "mode") {
        if (v != "rx" && v != "rz") {
            throw ConfigError("mode must be rx or rz");
        }
        cfg.sweep_mode = std::string(v);
    } else if (key == "step") {
        cfg.sweep_step = angle_for(key, v);
        if (!(cfg.sweep_step > 0.0)) {
            throw ConfigError("step must be positive");
        }
    } else if (key == "branches") {
        cfg.branches = parse_bool(key, v);
    } else if (key == "t_max") {
        cfg.t_max = parse_double(key, v);
    } else if (key == "t_step") {
        cfg.t_step = parse_double(key, v);
        if (!(cfg.t_step > 0.0)) {
            throw ConfigError("t_step must be positive");
        }
    } else if (key == "counts") {
        cfg.counts_file = std::string(v);
    } else if (key == "budget") {
        if (v == "reference") {
            cfg.budget = timing::LatencyBudget::reference();
        } else if (v == "fast_eom") {
            cfg.budget = timing::LatencyBudget::fast_eom_projection();
        } else {
            throw ConfigError("budget must be reference or fast_eom");
        }
    } else if (key == "eom_response") {
        cfg.budget.eom_response = parse_double(key, v);
    } else if (key == "optical_propagation") {
        cfg.budget.optical_propagation = parse_double(key, v);
    } else if (key == "signal_processing") {
        cfg.budget.signal_processing = parse_double(key, v);
    } else if (key == "storage_before_first_readout") {
        cfg.budget.storage_before_first_readout = parse_double(key, v);
    } else if (key == "coherence_time") {
        cfg.budget.coherence_time = parse_double(key, v);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

const std::vector<std::string> &noise_file_keys() {
    static const std::vector<std::string> keys{"noise",  "theta",    "imbalance", "spatial_white_noise",
                                               "tau_us", "osc_amp",  "osc_freq",  "envelope",
                                               "storage_time", "fit"};
    return keys;
}

void apply_key_value_text(ScenarioConfig &cfg, std::string_view text, const std::vector<std::string> &allowed) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' is not allowed here");
        }
        try {
            apply_key(cfg, key, line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::optional<ScenarioConfig> parse_command_line(int argc, const char *const *argv, std::ostream &info) {
    CLI::App app{"Simulate the four-qubit photon/spin-wave cluster and one-way rotations.", "oneway_cli"};
    app.set_version_flag("--version", std::string(kVersionString));

    std::string positional;
    std::string config_file;
    std::string noise_file;
    app.add_option("scenario_name", positional, "witness | lifetime | tomography | rotate | sweep | budget");
    app.add_option("--config", config_file, "key=value scenario file");
    app.add_option("--noise-file", noise_file, "key=value file with preparation and noise keys");

    // Flag name -> config key, applied in this order after both files.
    struct Valued {
        const char *flag;
        const char *key;
        const char *help;
        std::string value;
    };
    std::vector<Valued> valued{
        {"--scenario", "scenario", "scenario to run", {}},
        {"--alpha", "alpha", "first measurement angle (radians, accepts pi/4 style)", {}},
        {"--beta", "beta", "second measurement angle", {}},
        {"--shots", "shots", "shots per setting, or rotation shots (0 = exact)", {}},
        {"--seed", "seed", "random seed", {}},
        {"--out", "out", "output file (default stdout)", {}},
        {"--format", "format", "json | csv", {}},
        {"--mode", "mode", "sweep mode: rx | rz", {}},
        {"--step", "step", "sweep step (default pi/8)", {}},
        {"--t-max", "t_max", "lifetime grid end, us", {}},
        {"--t-step", "t_step", "lifetime grid step, us", {}},
        {"--storage-time", "storage_time", "storage time before readout, us", {}},
        {"--feedforward", "feedforward", "on | off", {}},
        {"--fit", "fit", "lifetime targets t:F[,t:F] to calibrate against", {}},
        {"--counts", "counts", "count-table JSON input for tomography", {}},
        {"--budget", "budget", "reference | fast_eom", {}},
        {"--theta", "theta", "spatial phase", {}},
        {"--imbalance", "imbalance", "polarization amplitude ratio r", {}},
        {"--spatial-white-noise", "spatial_white_noise", "white-noise weight on the spatial pair", {}},
        {"--tau", "tau_us", "dephasing time constant, us", {}},
        {"--osc-amp", "osc_amp", "revival modulation depth", {}},
        {"--osc-freq", "osc_freq", "revival angular frequency, rad/us", {}},
        {"--envelope", "envelope", "gaussian | exponential", {}},
        {"--eom-response", "eom_response", "EOM response, us", {}},
        {"--optical-propagation", "optical_propagation", "optical propagation, us", {}},
        {"--signal-processing", "signal_processing", "signal processing, us", {}},
        {"--first-readout", "storage_before_first_readout", "storage before first readout, us", {}},
        {"--coherence-time", "coherence_time", "memory coherence time, us", {}},
    };
    std::vector<CLI::Option *> valued_opts;
    for (auto &v : valued) {
        valued_opts.push_back(app.add_option(v.flag, v.value, v.help));
    }

    bool verify = false;
    bool ideal = false;
    bool calibrated = false;
    bool branches = false;
    bool no_feedforward = false;
    auto *verify_opt = app.add_flag("--verify", verify, "run invariant checks before emitting");
    auto *ideal_opt = app.add_flag("--ideal,--noiseless", ideal, "ideal preparation, no storage noise");
    auto *cal_opt = app.add_flag("--calibrated", calibrated, "reference calibrated noise model");
    auto *branch_opt = app.add_flag("--branches", branches, "per-branch rows in sweep output");
    auto *noff_opt = app.add_flag("--no-feedforward", no_feedforward, "disable both feedforward stages");
    ideal_opt->excludes(cal_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        info << app.help();
        return std::nullopt;
    } catch (const CLI::CallForVersion &) {
        info << kVersionString << "\n";
        return std::nullopt;
    } catch (const CLI::ParseError &e) {
        throw ConfigError(e.what());
    }

    ScenarioConfig cfg;
    if (!config_file.empty()) {
        apply_key_value_text(cfg, read_file(config_file));
    }
    if (!noise_file.empty()) {
        apply_key_value_text(cfg, read_file(noise_file), noise_file_keys());
    }
    if (!positional.empty()) {
        apply_key(cfg, "scenario", positional);
    }
    if (ideal_opt->count() > 0) apply_key(cfg, "noise", "ideal");
    if (cal_opt->count() > 0) apply_key(cfg, "noise", "calibrated");
    for (std::size_t i = 0; i < valued.size(); ++i) {
        if (valued_opts[i]->count() > 0) {
            apply_key(cfg, valued[i].key, valued[i].value);
        }
    }
    if (verify_opt->count() > 0) cfg.verify = true;
    if (branch_opt->count() > 0) cfg.branches = true;
    if (noff_opt->count() > 0) cfg.feedforward = false;
    return cfg;
}

std::string noise_tag(const ScenarioConfig &cfg) {
    if (has_overrides(cfg)) return "custom";
    if (!cfg.fit.empty()) return "fitted";
    return cfg.noise_base;
}

std::string render(const ScenarioConfig &cfg) {
    const bool tabular = cfg.scenario == Scenario::lifetime || cfg.scenario == Scenario::sweep;
    const Format fmt = cfg.format.value_or(tabular ? Format::csv : Format::json);
    try {
        switch (cfg.scenario) {
        case Scenario::witness:
            return run_witness(cfg, fmt);
        case Scenario::lifetime:
            return run_lifetime(cfg, fmt);
        case Scenario::tomography:
            return run_tomography(cfg, fmt);
        case Scenario::rotate:
            return run_rotate(cfg, fmt);
        case Scenario::sweep:
            return run_sweep(cfg, fmt);
        case Scenario::budget:
            return run_budget(cfg, fmt);
        }
    } catch (const std::invalid_argument &e) {
        // Parameter validation inside the library is a configuration problem here.
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown scenario");
}

int report_error(std::exception_ptr error, std::ostream &err) {
    try {
        std::rethrow_exception(error);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const noise::CalibrationError &e) {
        err << "error: " << e.what() << " (best residual " << io::format_double(e.best_residual()) << ")\n";
        return kExitInfeasible;
    } catch (const InvariantViolation &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (...) {
        err << "error: unknown failure\n";
        return 1;
    }
}

int run_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    try {
        const auto cfg = parse_command_line(argc, argv, out);
        if (!cfg) {
            return kExitOk;
        }
        const std::string text = render(*cfg);
        if (cfg->out.empty()) {
            out << text;
        } else {
            std::ofstream file(cfg->out, std::ios::binary | std::ios::trunc);
            if (!file || !(file << text) || !file.flush()) {
                throw ConfigError("cannot write '" + cfg->out + "'");
            }
        }
        return kExitOk;
    } catch (...) {
        return report_error(std::current_exception(), err);
    }
}

}  // namespace oneway::cli
