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
#include "regio/evaluation.hpp"

#include "regio/csv.hpp"
#include "regio/error.hpp"
#include "regio/random.hpp"
#include "regio/scaling.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace regio {

namespace {

void check_lengths(std::span<const double> y, std::span<const double> y_hat, std::size_t min_len)
{
    if (y.size() != y_hat.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    fmt::format("{} actuals vs {} predictions", y.size(), y_hat.size()));
    }
    if (y.size() < min_len) {
        throw Error(ErrorCode::Empty, fmt::format("metric needs at least {} points", min_len));
    }
}

double mean(std::span<const double> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sum of squared deviations from the mean.
double centered_ss(std::span<const double> v)
{
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) {
        ss += (x - m) * (x - m);
    }
    return ss;
}

double checked_total_ss(std::span<const double> y)
{
    const double ss = centered_ss(y);
    if (ss == 0.0) {
        throw Error(ErrorCode::ZeroVariance, "actual values are constant");
    }
    return ss;
}

} // namespace

double r2(std::span<const double> y, std::span<const double> y_hat)
{
    check_lengths(y, y_hat, 2);
    const double ss_tot = checked_total_ss(y);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
    }
    return 1.0 - ss_res / ss_tot;
}

double evs(std::span<const double> y, std::span<const double> y_hat)
{
    check_lengths(y, y_hat, 2);
    const double ss_tot = checked_total_ss(y);
    std::vector<double> residual(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        residual[i] = y[i] - y_hat[i];
    }
    return 1.0 - centered_ss(residual) / ss_tot;
}

double mae(std::span<const double> y, std::span<const double> y_hat)
{
    check_lengths(y, y_hat, 1);
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        total += std::abs(y[i] - y_hat[i]);
    }
    return total / static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> y_hat)
{
    check_lengths(y, y_hat, 1);
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        total += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
    }
    return std::sqrt(total / static_cast<double>(y.size()));
}

double compute_metric(Metric metric, std::span<const double> y, std::span<const double> y_hat)
{
    switch (metric) {
    case Metric::R2: return r2(y, y_hat);
    case Metric::EVS: return evs(y, y_hat);
    case Metric::MAE: return mae(y, y_hat);
    case Metric::RMSE: return rmse(y, y_hat);
    }
    throw Error(ErrorCode::BadConfig, "unknown metric");
}

Interval bootstrap_interval(std::span<const double> y, std::span<const double> y_hat,
                            Metric metric, const BootstrapConfig& cfg)
{
    if (cfg.replicates < 1 || !(cfg.level > 0.0 && cfg.level < 1.0)) {
        throw Error(ErrorCode::BadConfig, "bootstrap needs B >= 1 and 0 < level < 1");
    }
    check_lengths(y, y_hat, 2);

    Interval out;
    out.mid = compute_metric(metric, y, y_hat);

    const std::size_t n = y.size();
    std::vector<double> stats;
    stats.reserve(cfg.replicates);
    std::vector<double> ys(n);
    std::vector<double> yh(n);
    for (std::size_t b = 0; b < cfg.replicates; ++b) {
        Rng rng(derive_seed(cfg.seed, b));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick = rng.uniform_index(n);
            ys[i] = y[pick];
            yh[i] = y_hat[pick];
        }
        try {
            stats.push_back(compute_metric(metric, ys, yh));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ZeroVariance) {
                throw;
            }
            ++out.degenerate_skipped;
        }
    }
    if (stats.empty()) {
        throw Error(ErrorCode::AllReplicatesDegenerate,
                    "every bootstrap replicate had constant actual values");
    }
    std::sort(stats.begin(), stats.end());
    const double tail = 0.5 * (1.0 - cfg.level);
    out.low = interpolated_quantile(stats, tail);
    out.top = interpolated_quantile(stats, 1.0 - tail);
    out.replicates_used = stats.size();
    out.degenerate = stats.size() < 2;
    return out;
}

MetricReport evaluate_predictions(RegionId region, const Matrix& actual, const Matrix& predicted,
                                  const BootstrapConfig& cfg, double training_time_seconds)
{
    if (actual.rows() != predicted.rows() || actual.cols() != kTargetCount ||
        predicted.cols() != kTargetCount) {
        throw Error(ErrorCode::LengthMismatch, "actual and predicted matrices must be n x 4");
    }
    MetricReport report;
    report.region = region;
    report.training_time_seconds = training_time_seconds;
    report.test_rows = actual.rows();
    for (std::size_t t = 0; t < kTargetCount; ++t) {
        const auto y = actual.column(t);
        const auto y_hat = predicted.column(t);
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            // Same resampled index sets for every metric of a target.
            BootstrapConfig per = cfg;
            per.seed = derive_seed(cfg.seed, t);
            report.intervals[t][m] = bootstrap_interval(y, y_hat, kAllMetrics[m], per);
        }
    }
    return report;
}

MetricReport evaluate_model(const MtlModel& model, std::span<const DataRow> test_rows,
                            const BootstrapConfig& cfg, double training_time_seconds)
{
    const auto prediction = predict_monitoring(model, test_rows);
    const auto actual = target_matrix(test_rows);
    return evaluate_predictions(model.case_study, actual.values, prediction.counts, cfg,
                                training_time_seconds);
}

std::string metric_table_csv(std::span<const MetricReport> reports, Target target)
{
    std::string out = "province,metric,low,mid,top,tt_seconds\n";
    const auto t = static_cast<std::size_t>(target);
    for (const auto& r : reports) {
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            const auto& iv = r.intervals[t][m];
            out += fmt::format("{},{},{},{},{},{}\n", r.region.name(), kMetricNames[m],
                               csv::format_fixed(iv.low, 6), csv::format_fixed(iv.mid, 6),
                               csv::format_fixed(iv.top, 6),
                               csv::format_fixed(r.training_time_seconds, 6));
        }
    }
    return out;
}

nlohmann::json metric_report_to_json(const MetricReport& report)
{
    nlohmann::json targets = nlohmann::json::object();
    for (std::size_t t = 0; t < kTargetCount; ++t) {
        nlohmann::json metrics = nlohmann::json::object();
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            const auto& iv = report.intervals[t][m];
            metrics[std::string(kMetricNames[m])] = {
                {"low", iv.low},
                {"mid", iv.mid},
                {"top", iv.top},
                {"replicates_used", iv.replicates_used},
                {"degenerate_skipped", iv.degenerate_skipped},
            };
        }
        targets[std::string(kTargetNames[t])] = std::move(metrics);
    }
    return nlohmann::json{{"province", report.region.name()},
                          {"region_code", report.region.code()},
                          {"test_rows", report.test_rows},
                          {"tt_seconds", report.training_time_seconds},
                          {"targets", std::move(targets)}};
}

} // namespace regio
