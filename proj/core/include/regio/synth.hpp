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
#pragma once

#include "regio/dataset.hpp"

#include <cstdint>
#include <vector>

namespace regio {

/// Parameters for synthetic regional datasets in the ingest schema.
///
/// Every region follows one shared two-wave epidemic curve. Regions differ by
/// a per-region amplitude on the targets and small per-region jitter on the
/// time-varying features; static geography (land area, health centres) is
/// shared. Rows from different regions on the same day therefore sit close
/// together after scaling, which is what makes pooling other regions useful.
struct SyntheticSpec {
    std::size_t regions = 7;
    std::size_t rows = 362;
    static constexpr double kDefaultNoise = 0.05;
    /// Standard deviation of the multiplicative noise on the four targets.
    /// Feature jitter scales with noise / kDefaultNoise, so 0 is noiseless.
    double noise = kDefaultNoise;
    std::uint64_t seed = 1;
};

/// Regions come out in reference-province order (Alberta, British Columbia,
/// Manitoba, New Brunswick, Ontario, Quebec, Saskatchewan), then the remaining
/// provinces. Throws BadSpec for rows < 10, negative noise, or a region count
/// outside 1..10.
std::vector<RegionalDataset> generate_synthetic(const SyntheticSpec& spec);

} // namespace regio
