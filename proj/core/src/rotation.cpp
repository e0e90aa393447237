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
#include "regio/rotation.hpp"

#include "regio/error.hpp"
#include "regio/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace regio {

namespace {

// Stream ids for derive_seed, offset by region code.
constexpr std::uint64_t kSplitStream = 0;
constexpr std::uint64_t kTruncateStream = 100;
constexpr std::uint64_t kBootstrapStream = 200;

void check_datasets(std::span<const RegionalDataset> datasets)
{
    if (datasets.size() < 2) {
        throw Error(ErrorCode::TooFewRegions, "need at least two regional datasets");
    }
    std::set<int> seen;
    for (const auto& ds : datasets) {
        if (!seen.insert(ds.region.code()).second) {
            throw Error(ErrorCode::BadConfig,
                        "region " + std::string(ds.region.name()) + " supplied twice");
        }
    }
}

} // namespace

CaseStudyPlan plan_case_study(const RegionalDataset& own, const RotationConfig& cfg)
{
    const auto code = static_cast<std::uint64_t>(own.region.code());
    CaseStudyPlan plan;
    plan.split = split_train_test(own, cfg.test_size, derive_seed(cfg.seed, kSplitStream + code));
    plan.train_used = plan.split.train_indices;
    if (cfg.max_train_days > 0 && cfg.max_train_days < plan.train_used.size()) {
        Rng rng(derive_seed(cfg.seed, kTruncateStream + code));
        for (std::size_t i = 0; i < cfg.max_train_days; ++i) {
            const std::size_t j = i + rng.uniform_index(plan.train_used.size() - i);
            std::swap(plan.train_used[i], plan.train_used[j]);
        }
        plan.train_used.resize(cfg.max_train_days);
        std::sort(plan.train_used.begin(), plan.train_used.end());
    }
    return plan;
}

CaseStudyRun evaluate_case_study(std::span<const RegionalDataset> datasets, RegionId case_study,
                                 const RotationConfig& cfg)
{
    check_datasets(datasets);
    auto it = std::find_if(datasets.begin(), datasets.end(),
                           [&](const RegionalDataset& ds) { return ds.region == case_study; });
    if (it == datasets.end()) {
        throw Error(ErrorCode::EmptyCaseData,
                    "no dataset for case study " + std::string(case_study.name()));
    }
    const RegionalDataset& own = *it;
    const auto code = static_cast<std::uint64_t>(case_study.code());

    CaseStudyRun run;
    auto plan = plan_case_study(own, cfg);
    run.split = std::move(plan.split);
    run.train_used = std::move(plan.train_used);

    const auto pool = pool_regions(datasets, case_study);
    const auto train_rows = select_rows(own.rows, run.train_used);
    const auto test_rows = select_rows(own.rows, run.split.test_indices);
    run.trained = train_mtl(pool, train_rows, case_study, cfg.mtl);

    BootstrapConfig boot;
    boot.replicates = cfg.bootstrap_replicates;
    boot.level = cfg.confidence_level;
    boot.seed = derive_seed(cfg.seed, kBootstrapStream + code);
    const double tt = cfg.record_timing ? run.trained.report.total_seconds() : 0.0;
    run.report = evaluate_model(run.trained.model, test_rows, boot, tt);
    return run;
}

std::vector<MetricReport> rotate_regions(std::span<const RegionalDataset> datasets,
                                         const RotationConfig& cfg)
{
    check_datasets(datasets);
    std::vector<MetricReport> reports;
    reports.reserve(datasets.size());
    for (const auto& ds : datasets) {
        reports.push_back(evaluate_case_study(datasets, ds.region, cfg).report);
    }
    return reports;
}

} // namespace regio
