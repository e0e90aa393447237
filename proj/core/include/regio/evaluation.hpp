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
#include "regio/matrix.hpp"
#include "regio/mtl.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace regio {

enum class Metric : std::size_t { R2 = 0, EVS = 1, MAE = 2, RMSE = 3 };

inline constexpr std::size_t kMetricCount = 4;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {Metric::R2, Metric::EVS,
                                                                 Metric::MAE, Metric::RMSE};
inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {"r2", "evs", "mae",
                                                                            "rmse"};

/// Coefficient of determination, 1 - SS_res / SS_tot. Throws ZeroVariance
/// when the actuals are constant, LengthMismatch, or Empty (fewer than 2).
double r2(std::span<const double> y, std::span<const double> y_hat);
/// Explained variance, 1 - Var(y - y_hat) / Var(y). Same errors as r2.
double evs(std::span<const double> y, std::span<const double> y_hat);
double mae(std::span<const double> y, std::span<const double> y_hat);
double rmse(std::span<const double> y, std::span<const double> y_hat);

double compute_metric(Metric metric, std::span<const double> y, std::span<const double> y_hat);

struct BootstrapConfig {
    static constexpr std::size_t kDefaultReplicates = 1000;

    std::size_t replicates = kDefaultReplicates;
    double level = 0.95;
    std::uint64_t seed = 0;
};

struct Interval {
    double low = 0.0;
    double mid = 0.0;
    double top = 0.0;
    std::size_t replicates_used = 0;
    std::size_t degenerate_skipped = 0;
    /// Set when too few replicates survive for the percentile bounds to be
    /// meaningful (fewer than 2); low <= mid <= top is not guaranteed then.
    bool degenerate = false;
};

/// Point estimate on the full sample with percentile bounds from a pairs
/// bootstrap. Replicate b draws from its own seed derived from cfg.seed.
Interval bootstrap_interval(std::span<const double> y, std::span<const double> y_hat,
                            Metric metric, const BootstrapConfig& cfg);

struct MetricReport {
    RegionId region = RegionId::from_code(6);
    /// intervals[target][metric]
    std::array<std::array<Interval, kMetricCount>, kTargetCount> intervals{};
    double training_time_seconds = 0.0;
    std::size_t test_rows = 0;

    const Interval& at(Target t, Metric m) const
    {
        return intervals[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)];
    }
};

/// Metrics on count-space actuals and predictions (rows x 4).
MetricReport evaluate_predictions(RegionId region, const Matrix& actual, const Matrix& predicted,
                                  const BootstrapConfig& cfg, double training_time_seconds);

/// Predicts `test_rows` with the model and scores them against their targets.
MetricReport evaluate_model(const MtlModel& model, std::span<const DataRow> test_rows,
                            const BootstrapConfig& cfg, double training_time_seconds);

/// One target's table: `province,metric,low,mid,top,tt_seconds`, four rows per
/// region in r2/evs/mae/rmse order.
std::string metric_table_csv(std::span<const MetricReport> reports, Target target);

nlohmann::json metric_report_to_json(const MetricReport& report);

} // namespace regio
