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
 * Wire formats: JSON documents for count tables, tomography reports,
 * rotation results, witness and budget reports; CSV for figure curves.
 *
 * Numbers are written in shortest round-trip form with '.' as the decimal
 * separator regardless of locale.
 */

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oneway/cluster.hpp"
#include "oneway/mbqc.hpp"
#include "oneway/measure.hpp"
#include "oneway/noise.hpp"
#include "oneway/timing.hpp"
#include "oneway/tomo.hpp"

namespace oneway::io {

/// Locale-independent shortest round-trip representation.
std::string format_double(double v);

// Count tables: {"setting": ["X", "Z", 0.3, ...], "shots": N, "counts": {"0101": n, ...}}.
// Pauli bases are written as letters; other equatorial bases as their phase in radians.
std::string to_json(const measure::CountTable &table);
std::string to_json(std::span<const measure::CountTable> tables);
measure::CountTable count_table_from_json(std::string_view text);
/// Accepts either a single table object or an array of tables.
std::vector<measure::CountTable> count_tables_from_json(std::string_view text);

/// {"num_qubits", "dimension", "entries": [[row, col, re, im], ...]} in row-major order.
std::string to_json(const DensityMatrix &rho);
DensityMatrix density_matrix_from_json(std::string_view text);

std::string to_json(const tomo::TomographyReport &report);
std::string to_json(const cluster::WitnessReport &report);
/// Branch map keyed "s2s3" ("00", "01", "10", "11").
std::string to_json(const mbqc::RotationResult &result);
std::string to_json(const timing::LatencyBudget &budget);

/// Header "t_us,fidelity_bound".
std::string lifetime_csv(std::span<const noise::LifetimePoint> points);

/**
 * Header "angle_rad,fidelity,mode,noise_tag,branch_s2,branch_s3". Aggregate
 * rows leave the branch columns empty; with `per_branch` each point is
 * followed by four rows holding the corrected fidelity of each branch.
 */
std::string sweep_csv(std::span<const mbqc::SweepPoint> points, std::string_view mode,
                      std::string_view noise_tag, bool per_branch = false);

}  // namespace oneway::io
