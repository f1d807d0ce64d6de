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

#include "oneway/timing.hpp"

#include <cmath>
#include <stdexcept>

#include "oneway/constants.hpp"

namespace oneway::timing {

LatencyBudget LatencyBudget::reference() {
    return {constants::kEomResponseUs, constants::kOpticalPropagationUs, constants::kSignalProcessingUs,
            constants::kFirstReadoutStorageUs, constants::kClusterLifetimeUs};
}

LatencyBudget LatencyBudget::fast_eom_projection() {
    return {constants::kFastEomResponseUs, constants::kOpticalPropagationUs,
            constants::kSignalProcessingUs, 0.0, constants::kLatticeCoherenceUs};
}

void LatencyBudget::validate() const {
    for (double v : {eom_response, optical_propagation, signal_processing,
                     storage_before_first_readout, coherence_time}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("latency budget entries must be finite and nonnegative");
        }
    }
}

double cycle_time(const LatencyBudget &b) {
    b.validate();
    return b.eom_response + b.optical_propagation + b.signal_processing;
}

std::int64_t max_steps(const LatencyBudget &b) {
    const double cycle = cycle_time(b);
    if (cycle <= 0.0) {
        throw std::invalid_argument("cycle time must be positive");
    }
    const double window = b.coherence_time - b.storage_before_first_readout;
    if (window <= 0.0) {
        return 0;
    }
    auto n = static_cast<std::int64_t>(std::floor(window / cycle));
    // Guard the floor against rounding on either side of an exact multiple.
    while (n > 0 && static_cast<double>(n) * cycle > window) {
        --n;
    }
    while (static_cast<double>(n + 1) * cycle <= window) {
        ++n;
    }
    return n;
}

}  // namespace oneway::timing
