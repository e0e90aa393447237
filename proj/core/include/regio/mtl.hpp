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
#include "regio/features.hpp"
#include "regio/knn.hpp"
#include "regio/scaling.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace regio {

/// How the final feature space is chosen from the 44 expanded columns.
struct FeatureSelection {
    enum class Mode { Explicit, Ranked };

    Mode mode = Mode::Explicit;
    std::vector<std::string> codes = default_feature_codes();
    std::size_t top_n = 13;

    static FeatureSelection fixed() { return {}; }
    static FeatureSelection ranked(std::size_t top_n) { return {Mode::Ranked, {}, top_n}; }
};

struct MtlConfig {
    KnnConfig knn;
    /// Multiplier on the weight of instances transferred from the generic
    /// component. 1 pools them as equals; 0 disables transfer.
    double generic_weight = 1.0;
    FeatureSelection selection;
    /// 0 selects min(1000, training rows).
    std::size_t n_quantiles = 0;
};

struct FittedScalers {
    QuantileNormalScaler features;
    MinMaxScalerState targets;
};

/// Selected-but-unscaled training rows with their source regions, kept so
/// the rows can be re-encoded when the scalers are refit.
struct TrainingBlock {
    FeatureMatrix features;
    TargetMatrix targets;
    std::vector<int> regions;
};

struct GenericComponent {
    std::vector<std::string> selected_features;
    TrainingBlock raw;
    FittedScalers scalers;
    InstanceStore store;
    double fit_seconds = 0.0;
};

struct TrainReport {
    double generic_seconds = 0.0;
    double dedicated_seconds = 0.0;
    std::size_t generic_instances = 0;
    std::size_t case_instances = 0;
    std::size_t dedicated_instances = 0;
    std::size_t zero_feature_rows = 0;
    std::vector<int> pool_regions;
    std::size_t n_quantiles = 0;
    MinMaxScalerState target_range;

    double total_seconds() const noexcept { return generic_seconds + dedicated_seconds; }
};

struct MtlModel {
    static constexpr std::string_view kArtifactVersion = "regio-mtl/1";

    KnnConfig knn;
    double generic_weight = 1.0;
    std::vector<std::string> selected_features;
    QuantileNormalScaler feature_scaler;
    MinMaxScalerState target_scaler;
    /// Pool instances encoded with the final scalers, unit weight.
    InstanceStore generic_store;
    /// Transferred pool instances followed by the case-study instances.
    InstanceStore dedicated_store;
    RegionId case_study = RegionId::from_code(6);

    friend bool operator==(const MtlModel&, const MtlModel&) = default;
};

/// Final feature codes for `rows`. Ranked mode scores relevance on `rows`.
std::vector<std::string> resolve_selection(const FeatureSelection& selection,
                                           std::span<const DataRow> rows);

/// Raw rows -> expanded -> selected, unscaled.
FeatureMatrix selected_features(std::span<const DataRow> rows, std::span<const std::string> codes);

FittedScalers fit_scalers(const FeatureMatrix& selected, const TargetMatrix& targets,
                          std::size_t n_quantiles);

/// Quantile-normal transform then row L2 normalization.
UnitRowMatrix encode_features(const QuantileNormalScaler& scaler, const FeatureMatrix& selected);

/// Fits the pooled component. Scalers are fitted on the pool alone.
/// Throws EmptyPool, or CaseStudyLeak if any pool row belongs to `case_study`.
GenericComponent train_generic(std::span<const PooledRow> pool, RegionId case_study,
                               const MtlConfig& cfg);

/// Seed for the dedicated store: the generic instances with their weights
/// scaled by `lambda`. Throws NegativeWeight for lambda < 0.
InstanceStore transfer_to_dedicated(const InstanceStore& generic, double lambda);

struct TrainedModel {
    MtlModel model;
    TrainReport report;
};

/// Refits both scalers on pool + case rows, re-encodes the pool, transfers it
/// and appends the case-study instances. Throws EmptyCaseData.
TrainedModel train_dedicated(const GenericComponent& generic, std::span<const DataRow> case_rows,
                             RegionId case_study, const MtlConfig& cfg);

/// train_generic followed by train_dedicated.
TrainedModel train_mtl(std::span<const PooledRow> pool, std::span<const DataRow> case_rows,
                       RegionId case_study, const MtlConfig& cfg);

struct MonitoringPrediction {
    /// rows x 4 counts [I, H, R, D], floored at 0.
    Matrix counts;
    std::vector<std::array<std::int64_t, kTargetCount>> rounded;
};

MonitoringPrediction predict_monitoring(const MtlModel& model, std::span<const DataRow> rows);

} // namespace regio
