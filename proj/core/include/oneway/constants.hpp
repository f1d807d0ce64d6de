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

// Measured or quoted experimental figures used to anchor the models.
namespace oneway::constants {

inline constexpr double kFirstReadoutStorageUs = 2.27;
inline constexpr double kClusterLifetimeUs = 14.27;
inline constexpr double kWitnessAtFirstReadout = -0.60;
inline constexpr double kFidelityBoundAtFirstReadout = 0.800;
inline constexpr double kLifetimeThresholdBound = 0.5;

inline constexpr double kReconstructedFidelity = 0.817;
inline constexpr double kPolarizationReducedFidelity = 0.885;
inline constexpr double kSpatialReducedFidelity = 0.955;

inline constexpr double kRxSweepMeanFidelity = 0.82;
inline constexpr double kRzSweepMeanFidelity = 0.91;
inline constexpr double kQuarterTurnsFidelity = 0.93;

// Latency budget of one type-II feedforward cycle, in microseconds.
inline constexpr double kEomResponseUs = 1.56;
inline constexpr double kOpticalPropagationUs = 0.020;
inline constexpr double kSignalProcessingUs = 0.110;
inline constexpr double kFastEomResponseUs = 0.065;
inline constexpr double kLatticeCoherenceUs = 100'000.0;

// Detection efficiencies. Recorded for reference; no model consumes them.
inline constexpr double kStokesDetectionEfficiency = 0.25;
inline constexpr double kAntiStokesDetectionEfficiency = 0.20;
inline constexpr double kRetrievalEfficiency = 0.29;

}  // namespace oneway::constants
