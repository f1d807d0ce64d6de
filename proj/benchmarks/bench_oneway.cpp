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

#include <numbers>

#include <benchmark/benchmark.h>

#include "oneway/cluster.hpp"
#include "oneway/mbqc.hpp"
#include "oneway/measure.hpp"
#include "oneway/noise.hpp"
#include "oneway/tomo.hpp"

namespace {

using namespace oneway;

void BM_WitnessEvaluation(benchmark::State &state) {
    const auto rho = mbqc::resource_state(mbqc::NoiseModel::calibrated());
    for (auto _ : state) benchmark::DoNotOptimize(cluster::evaluate_witness(rho));
}
BENCHMARK(BM_WitnessEvaluation);

void BM_StorageChannel(benchmark::State &state) {
    const auto rho = cluster::prepare_cluster({0.0, 0.43, 0.06});
    noise::StorageNoiseParams p;
    p.tau_us = 20.0;
    for (auto _ : state) benchmark::DoNotOptimize(noise::apply_storage(rho, 2.27, p));
}
BENCHMARK(BM_StorageChannel);

void BM_ExactRotation(benchmark::State &state) {
    mbqc::RotationRequest req;
    req.alpha = std::numbers::pi / 4;
    req.beta = std::numbers::pi / 4;
    if (state.range(0) != 0) req.noise = mbqc::NoiseModel::calibrated();
    measure::RandomSource rng;
    for (auto _ : state) benchmark::DoNotOptimize(mbqc::run_rotation(req, rng));
}
BENCHMARK(BM_ExactRotation)->Arg(0)->Arg(1);

void BM_SampleCounts(benchmark::State &state) {
    const auto rho = DensityMatrix::from_state(cluster::ideal_cluster_state());
    const auto settings = measure::pauli_settings(4);
    const auto shots = static_cast<std::uint64_t>(state.range(0));
    const measure::RandomSource rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(measure::sample_counts(rho, settings, shots, rng));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(settings.size() * shots));
}
BENCHMARK(BM_SampleCounts)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MaximumLikelihood(benchmark::State &state) {
    const auto rho = mbqc::resource_state(mbqc::NoiseModel::calibrated());
    const auto tables = measure::sample_counts(rho, measure::pauli_settings(4), 10000, measure::RandomSource(3));
    for (auto _ : state) benchmark::DoNotOptimize(tomo::reconstruct(tables));
}
BENCHMARK(BM_MaximumLikelihood)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
