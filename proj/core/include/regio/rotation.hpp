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
#include "regio/evaluation.hpp"
#include "regio/mtl.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace regio {

struct RotationConfig {
    MtlConfig mtl;
    std::size_t test_size = kDefaultTestDays;
    /// Master seed; split, truncation and bootstrap seeds derive from it per region.
    std::uint64_t seed = 1;
    std::size_t bootstrap_replicates = BootstrapConfig::kDefaultReplicates;
    double confidence_level = 0.95;
    /// Keep at most this many case-study training days (0 keeps all).
    std::size_t max_train_days = 0;
    /// When false, reported training times are 0 so reports are reproducible.
    bool record_timing = true;
};

/// Which case-study days are held out and which train.
struct CaseStudyPlan {
    TrainTestSplit split;
    /// Training indices actually used after truncation (ascending).
    std::vector<std::size_t> train_used;
};

/// Seeded split of one region's days (plus optional truncation), as used by
/// evaluate_case_study.
CaseStudyPlan plan_case_study(const RegionalDataset& own, const RotationConfig& cfg);

struct CaseStudyRun {
    TrainedModel trained;
    TrainTestSplit split;
    /// Training indices actually used after truncation (ascending).
    std::vector<std::size_t> train_used;
    MetricReport report;
};

/// Holds out `test_size` random days of the case study, trains on the other
/// regions plus the remaining case-study days, and scores the held-out days.
CaseStudyRun evaluate_case_study(std::span<const RegionalDataset> datasets, RegionId case_study,
                                 const RotationConfig& cfg);

/// evaluate_case_study with each region in turn as the case study, in input
/// order. Throws TooFewRegions for fewer than two datasets.
std::vector<MetricReport> rotate_regions(std::span<const RegionalDataset> datasets,
                                         const RotationConfig& cfg);

} // namespace regio
