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
#include "regio/mtl.hpp"

#include "regio/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace regio {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

TrainingBlock make_block(std::span<const DataRow> rows, std::span<const std::string> codes,
                         int region)
{
    return {selected_features(rows, codes), target_matrix(rows),
            std::vector<int>(rows.size(), region)};
}

TrainingBlock append_block(const TrainingBlock& a, const TrainingBlock& b)
{
    return {FeatureMatrix{vstack(a.features.values, b.features.values), a.features.codes},
            TargetMatrix{vstack(a.targets.values, b.targets.values)},
            [&] {
                auto r = a.regions;
                r.insert(r.end(), b.regions.begin(), b.regions.end());
                return r;
            }()};
}

// Encodes a block with fitted scalers into a store, tagging each row with its
// source region and unit weight.
InstanceStore encode_block(const FittedScalers& scalers, const TrainingBlock& block,
                           std::size_t& zero_rows)
{
    const auto unit = encode_features(scalers.features, block.features);
    zero_rows += unit.zero_count();
    const auto targets = apply_minmax(scalers.targets, block.targets);
    InstanceStore store(unit.values.cols(), kTargetCount);
    for (std::size_t i = 0; i < unit.values.rows(); ++i) {
        store.append(unit.values.row(i), targets.values.row(i), SourceTag{block.regions[i], 1.0});
    }
    return store;
}

} // namespace

std::vector<std::string> resolve_selection(const FeatureSelection& selection,
                                           std::span<const DataRow> rows)
{
    if (selection.mode == FeatureSelection::Mode::Explicit) {
        if (selection.codes.empty()) {
            throw Error(ErrorCode::BadConfig, "explicit feature selection is empty");
        }
        // Validate codes against the expanded schema without needing data.
        FeatureMatrix probe = expanded_features(std::span<const DataRow>{});
        for (const auto& code : selection.codes) {
            probe.index_of(code);
        }
        return selection.codes;
    }
    const auto expanded = expanded_features(rows);
    if (selection.top_n == 0 || selection.top_n > expanded.cols()) {
        throw Error(ErrorCode::BadTopN, fmt::format("top_n must be in 1..{}, got {}",
                                                    expanded.cols(), selection.top_n));
    }
    const auto report = score_relevance(expanded, target_matrix(rows));
    return top_feature_codes(report, selection.top_n);
}

FeatureMatrix selected_features(std::span<const DataRow> rows, std::span<const std::string> codes)
{
    return select_features(expanded_features(rows), codes);
}

FittedScalers fit_scalers(const FeatureMatrix& selected, const TargetMatrix& targets,
                          std::size_t n_quantiles)
{
    return {fit_quantile_scaler(selected, n_quantiles), fit_minmax(targets)};
}

UnitRowMatrix encode_features(const QuantileNormalScaler& scaler, const FeatureMatrix& selected)
{
    return l2_normalize_rows(apply_quantile_scaler(scaler, selected).values);
}

GenericComponent train_generic(std::span<const PooledRow> pool, RegionId case_study,
                               const MtlConfig& cfg)
{
    if (pool.empty()) {
        throw Error(ErrorCode::EmptyPool, "generic component needs pooled rows");
    }
    std::vector<DataRow> rows;
    std::vector<int> regions;
    rows.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i].region == case_study) {
            throw Error(ErrorCode::CaseStudyLeak,
                        "pool contains rows of case-study region " +
                            std::string(case_study.name()),
                        i);
        }
        rows.push_back(pool[i].row);
        regions.push_back(pool[i].region.code());
    }

    GenericComponent g;
    g.selected_features = resolve_selection(cfg.selection, rows);
    g.raw = {selected_features(rows, g.selected_features), target_matrix(rows), std::move(regions)};

    const auto start = Clock::now();
    g.scalers = fit_scalers(g.raw.features, g.raw.targets, cfg.n_quantiles);
    std::size_t zero_rows = 0;
    g.store = encode_block(g.scalers, g.raw, zero_rows);
    g.fit_seconds = seconds_since(start);
    return g;
}

InstanceStore transfer_to_dedicated(const InstanceStore& generic, double lambda)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::NegativeWeight,
                    fmt::format("generic weight must be finite and >= 0, got {}", lambda));
    }
    return generic.reweighted(lambda);
}

TrainedModel train_dedicated(const GenericComponent& generic, std::span<const DataRow> case_rows,
                             RegionId case_study, const MtlConfig& cfg)
{
    if (case_rows.empty()) {
        throw Error(ErrorCode::EmptyCaseData, "dedicated component needs case-study rows");
    }
    for (int region : generic.raw.regions) {
        if (region == case_study.code()) {
            throw Error(ErrorCode::CaseStudyLeak, "generic component was trained on the case study");
        }
    }
    const TrainingBlock case_block = make_block(case_rows, generic.selected_features,
                                                case_study.code());

    TrainedModel out;
    auto& model = out.model;
    auto& report = out.report;

    const auto start = Clock::now();
    const TrainingBlock combined = append_block(generic.raw, case_block);
    const FittedScalers scalers = fit_scalers(combined.features, combined.targets, cfg.n_quantiles);
    std::size_t zero_rows = 0;
    model.generic_store = encode_block(scalers, generic.raw, zero_rows);
    model.dedicated_store = transfer_to_dedicated(model.generic_store, cfg.generic_weight);
    model.dedicated_store.append(encode_block(scalers, case_block, zero_rows));
    report.dedicated_seconds = seconds_since(start);

    model.knn = cfg.knn;
    model.generic_weight = cfg.generic_weight;
    model.selected_features = generic.selected_features;
    model.feature_scaler = scalers.features;
    model.target_scaler = scalers.targets;
    model.case_study = case_study;

    report.generic_seconds = generic.fit_seconds;
    report.generic_instances = model.generic_store.size();
    report.case_instances = case_rows.size();
    report.dedicated_instances = model.dedicated_store.size();
    report.zero_feature_rows = zero_rows;
    const std::set<int> pool(generic.raw.regions.begin(), generic.raw.regions.end());
    report.pool_regions.assign(pool.begin(), pool.end());
    report.n_quantiles = scalers.features.n_quantiles;
    report.target_range = scalers.targets;
    return out;
}

TrainedModel train_mtl(std::span<const PooledRow> pool, std::span<const DataRow> case_rows,
                       RegionId case_study, const MtlConfig& cfg)
{
    if (case_rows.empty()) {
        throw Error(ErrorCode::EmptyCaseData, "dedicated component needs case-study rows");
    }
    return train_dedicated(train_generic(pool, case_study, cfg), case_rows, case_study, cfg);
}

MonitoringPrediction predict_monitoring(const MtlModel& model, std::span<const DataRow> rows)
{
    const auto selected = selected_features(rows, model.selected_features);
    const auto unit = encode_features(model.feature_scaler, selected);
    const Matrix scaled = predict_knn_batch(model.dedicated_store, unit.values, model.knn);
    const auto counts = invert_minmax(model.target_scaler, TargetMatrix{scaled}, true);

    MonitoringPrediction out{counts.values, {}};
    out.rounded.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::array<std::int64_t, kTargetCount> r{};
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            r[t] = std::llround(out.counts(i, t));
        }
        out.rounded.push_back(r);
    }
    return out;
}

} // namespace regio
