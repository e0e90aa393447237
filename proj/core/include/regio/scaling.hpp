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

#include "regio/features.hpp"
#include "regio/matrix.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace regio {

/// Standard normal quantile function. Acklam's rational approximation
/// followed by one Halley correction step; absolute error well below 1e-12
/// on (0, 1). Throws OutOfDomain for p outside the open unit interval.
double inverse_normal_cdf(double p);

double normal_cdf(double x) noexcept;

/// Per-column empirical-CDF landmarks mapping features onto a standard normal.
struct QuantileNormalScaler {
    static constexpr double kDefaultLowerClip = 1e-7;
    static constexpr double kDefaultUpperClip = 1.0 - 1e-7;
    static constexpr std::size_t kMaxQuantiles = 1000;

    std::vector<std::string> codes;
    std::size_t n_quantiles = 0;
    double p_lo = kDefaultLowerClip;
    double p_hi = kDefaultUpperClip;
    /// landmarks[j] holds n_quantiles non-decreasing training quantiles of column j.
    std::vector<std::vector<double>> landmarks;

    friend bool operator==(const QuantileNormalScaler&, const QuantileNormalScaler&) = default;
};

/// Linear-interpolated quantile of sorted data at probability p in [0, 1].
double interpolated_quantile(std::span<const double> sorted, double p);

/// `n_quantiles == 0` selects min(1000, rows).
QuantileNormalScaler fit_quantile_scaler(const FeatureMatrix& train, std::size_t n_quantiles = 0);

/// CDF estimate at x from one column's landmarks. Values outside the landmark
/// range clamp to it; a run of equal landmarks maps to the midpoint of its
/// probability span.
double landmark_cdf(std::span<const double> landmarks, double x);

FeatureMatrix apply_quantile_scaler(const QuantileNormalScaler& scaler, const FeatureMatrix& m);

/// Rows scaled to unit Euclidean norm. All-zero rows stay zero and are flagged.
struct UnitRowMatrix {
    Matrix values;
    std::vector<bool> zero_rows;

    std::size_t zero_count() const;
};

UnitRowMatrix l2_normalize_rows(const Matrix& m);

struct MinMaxScalerState {
    std::vector<double> min;
    std::vector<double> max;

    friend bool operator==(const MinMaxScalerState&, const MinMaxScalerState&) = default;
};

MinMaxScalerState fit_minmax(const TargetMatrix& train);
/// Affine map onto the training range; out-of-range values are not clipped.
/// Degenerate (max == min) columns map to 0.
TargetMatrix apply_minmax(const MinMaxScalerState& state, const TargetMatrix& targets);
/// Inverse of apply_minmax. With `count_mode`, negative results are floored at 0.
TargetMatrix invert_minmax(const MinMaxScalerState& state, const TargetMatrix& scaled,
                           bool count_mode = false);

void to_json(nlohmann::json& j, const QuantileNormalScaler& s);
void from_json(const nlohmann::json& j, QuantileNormalScaler& s);
void to_json(nlohmann::json& j, const MinMaxScalerState& s);
void from_json(const nlohmann::json& j, MinMaxScalerState& s);

} // namespace regio
