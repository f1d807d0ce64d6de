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
 * Scenario runner behind the oneway_cli executable.
 *
 * A run is described by a ScenarioConfig assembled from, in increasing
 * precedence, built-in defaults, a key=value config file, a key=value noise
 * file and command-line flags. Every run is a pure function of its config.
 */

#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oneway/cluster.hpp"
#include "oneway/noise.hpp"
#include "oneway/timing.hpp"

namespace oneway::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitInfeasible = 3,
    kExitInvariant = 4,
};

enum class Scenario { witness, lifetime, tomography, rotate, sweep, budget };
enum class Format { json, csv };

std::string_view scenario_name(Scenario s);

/// Invalid or unknown configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A --verify check failed; maps to exit code 4.
class InvariantViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::witness;

    /// "ideal" or "calibrated" base model.
    std::string noise_base = "ideal";
    /// Explicit model parameters; any of them turns the model into "custom".
    std::optional<double> theta;
    std::optional<double> imbalance;
    std::optional<double> spatial_white_noise;
    std::optional<double> tau_us;
    std::optional<double> osc_amp;
    std::optional<double> osc_freq;
    std::optional<noise::Envelope> envelope;
    /// Storage time before readout; defaults to the first-readout time when noise is on.
    std::optional<double> storage_time_us;
    /// Lifetime targets "t:F,t:F" to fit instead of the reference calibration.
    std::string fit;

    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::optional<Format> format;
    bool verify = false;

    double alpha = 0.0;
    double beta = 0.0;
    bool feedforward = true;

    std::string sweep_mode = "rx";
    double sweep_step = 0.39269908169872414;  // pi / 8
    bool branches = false;

    double t_max = 25.0;
    double t_step = 0.5;

    /// Tomography input; empty means simulate counts from the model.
    std::string counts_file;

    timing::LatencyBudget budget = timing::LatencyBudget::reference();
};

/// Applies one key=value pair. Throws ConfigError on unknown keys or bad values.
void apply_key(ScenarioConfig &cfg, std::string_view key, std::string_view value);

/**
 * Parses flat key=value text: one pair per line, '#' starts a comment, blank
 * lines ignored. When `allowed` is non-empty only those keys are accepted.
 */
void apply_key_value_text(ScenarioConfig &cfg, std::string_view text,
                          const std::vector<std::string> &allowed = {});

/// Keys accepted in a --noise-file.
const std::vector<std::string> &noise_file_keys();

/// Parses an angle such as "0.785", "pi", "-pi/4" or "3pi/8".
double parse_angle(std::string_view text);

/**
 * Builds a config from argv. Returns std::nullopt when help or version output
 * was requested; that text is written to `info`.
 */
std::optional<ScenarioConfig> parse_command_line(int argc, const char *const *argv, std::ostream &info);

/// Resolved label for the noise model: "ideal", "calibrated", "fitted" or "custom".
std::string noise_tag(const ScenarioConfig &cfg);

/// Produces the artifact text for a scenario. Throws ConfigError,
/// noise::CalibrationError or InvariantViolation.
std::string render(const ScenarioConfig &cfg);

/// Maps an in-flight exception to an exit code and writes its diagnostic to `err`.
int report_error(std::exception_ptr error, std::ostream &err);

/// Runs argv end to end and returns the process exit code.
int run_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace oneway::cli
