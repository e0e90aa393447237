/*
 * Copyright (C) 2026 regio-forecast contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <regio/rotation.hpp>
#include <regio/synth.hpp>

#include <benchmark/benchmark.h>

namespace {

const std::vector<regio::RegionalDataset>& data()
{
    static const auto d = regio::generate_synthetic({7, 362, 0.05, 1});
    return d;
}

void BM_TrainMtl(benchmark::State& state)
{
    const auto ontario = regio::RegionId::from_name("ontario");
    const auto pool = regio::pool_regions(data(), ontario);
    const auto& own = data()[4];
    const auto rows = regio::select_rows(own.rows, regio::split_train_test(own, 54, 1).train_indices);
    for (auto _ : state) {
        benchmark::DoNotOptimize(regio::train_mtl(pool, rows, ontario, {}));
    }
}
BENCHMARK(BM_TrainMtl)->Unit(benchmark::kMillisecond);

// One full seven-region rotation with B bootstrap replicates.
void BM_RotateRegions(benchmark::State& state)
{
    regio::RotationConfig cfg;
    cfg.bootstrap_replicates = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(regio::rotate_regions(data(), cfg));
    }
}
BENCHMARK(BM_RotateRegions)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace
