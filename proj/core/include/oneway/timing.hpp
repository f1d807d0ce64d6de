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

#pragma once

#include <cstdint>

namespace oneway::timing {

/// Latencies in microseconds.
struct LatencyBudget {
    double eom_response = 0.0;
    double optical_propagation = 0.0;
    double signal_processing = 0.0;
    double storage_before_first_readout = 0.0;
    double coherence_time = 0.0;

    /// Figures of the demonstrated setup.
    static LatencyBudget reference();
    /// Reference setup with a 65 ns EOM driver and a 100 ms lattice-confined memory.
    static LatencyBudget fast_eom_projection();
    void validate() const;
};

/// Delay of one feedforward cycle: EOM response + optical + electronic.
double cycle_time(const LatencyBudget &b);

/**
 * floor((coherence_time - storage_before_first_readout) / cycle_time),
 * clamped at 0. This is an inferred budget rule: the memory must outlast the
 * initial storage plus every subsequent cycle. Throws if cycle_time is zero.
 */
std::int64_t max_steps(const LatencyBudget &b);

}  // namespace oneway::timing
