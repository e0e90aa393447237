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
#include <regio/random.hpp>
#include <regio/scaling.hpp>

#include <benchmark/benchmark.h>

namespace {

regio::FeatureMatrix random_features(std::size_t rows, std::size_t cols)
{
    regio::Rng rng(3);
    regio::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = std::exp(rng.normal());
        }
    }
    std::vector<std::string> codes;
    for (std::size_t c = 0; c < cols; ++c) {
        codes.push_back("c" + std::to_string(c));
    }
    return {m, codes};
}

void BM_InverseNormalCdf(benchmark::State& state)
{
    double p = 0.0;
    for (auto _ : state) {
        p += 0.000137;
        if (p >= 1.0) {
            p -= 1.0;
        }
        benchmark::DoNotOptimize(regio::inverse_normal_cdf(p == 0.0 ? 0.5 : p));
    }
}
BENCHMARK(BM_InverseNormalCdf);

void BM_FitQuantileScaler(benchmark::State& state)
{
    const auto m = random_features(static_cast<std::size_t>(state.range(0)), 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(regio::fit_quantile_scaler(m));
    }
}
BENCHMARK(BM_FitQuantileScaler)->Arg(362)->Arg(2534);

void BM_ApplyQuantileScaler(benchmark::State& state)
{
    const auto m = random_features(static_cast<std::size_t>(state.range(0)), 13);
    const auto scaler = regio::fit_quantile_scaler(m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(regio::apply_quantile_scaler(scaler, m));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplyQuantileScaler)->Arg(362)->Arg(2534);

} // namespace
