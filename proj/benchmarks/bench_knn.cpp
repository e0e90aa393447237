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
#include <regio/knn.hpp>
#include <regio/random.hpp>

#include <benchmark/benchmark.h>

namespace {

regio::InstanceStore make_store(std::size_t n, std::size_t dim, regio::Rng& rng)
{
    regio::InstanceStore store(dim, 4);
    std::vector<double> x(dim);
    std::vector<double> y(4);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : x) {
            v = rng.normal();
        }
        for (auto& v : y) {
            v = rng.uniform01();
        }
        store.append(x, y, {static_cast<int>(i % 7), 1.0});
    }
    return store;
}

// Store sizes bracket one rotation step: 308 own rows up to 2480 pooled rows.
void BM_PredictKnn(benchmark::State& state)
{
    regio::Rng rng(1);
    const auto store = make_store(static_cast<std::size_t>(state.range(0)), 13, rng);
    std::vector<double> q(13);
    for (auto& v : q) {
        v = rng.normal();
    }
    const regio::KnnConfig cfg{6};
    for (auto _ : state) {
        benchmark::DoNotOptimize(regio::predict_knn(store, q, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PredictKnn)->Arg(308)->Arg(2480)->Arg(20000);

void BM_KnnOracle(benchmark::State& state)
{
    regio::Rng rng(1);
    const auto store = make_store(static_cast<std::size_t>(state.range(0)), 13, rng);
    std::vector<double> q(13, 0.1);
    const regio::KnnConfig cfg{6};
    for (auto _ : state) {
        benchmark::DoNotOptimize(regio::knn_oracle(store, q, cfg));
    }
}
BENCHMARK(BM_KnnOracle)->Arg(2480);

} // namespace
