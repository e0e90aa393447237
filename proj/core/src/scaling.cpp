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
#include "regio/scaling.hpp"

#include "regio/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace regio {

double normal_cdf(double x) noexcept
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double inverse_normal_cdf(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorCode::OutOfDomain, fmt::format("probability {} outside (0, 1)", p));
    }
    // Acklam (2003) coefficients.
    constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                         -2.759285104469687e+02, 1.383577518672690e+02,
                                         -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                         -1.556989798598866e+02, 6.680131188771972e+01,
                                         -1.328068155288572e+01};
    constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                         -2.400758277161838e+00, -2.549732539343734e+00,
                                         4.374664141464968e+00,  2.938163982698783e+00};
    constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                         2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley step against the erfc-based CDF. The upper tail is refined on the
    // complementary probability to avoid cancellation in 1 - p.
    if (p > 0.5) {
        const double e = 0.5 * std::erfc(x / std::numbers::sqrt2) - (1.0 - p);
        const double u = -e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    } else {
        const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
        const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double interpolated_quantile(std::span<const double> sorted, double p)
{
    if (sorted.empty()) {
        throw Error(ErrorCode::EmptyMatrix, "quantile of an empty column");
    }
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

QuantileNormalScaler fit_quantile_scaler(const FeatureMatrix& train, std::size_t n_quantiles)
{
    if (train.rows() < 2) {
        throw Error(ErrorCode::TooFewRows, "quantile scaler needs at least 2 training rows");
    }
    if (n_quantiles == 0) {
        n_quantiles = std::min(QuantileNormalScaler::kMaxQuantiles, train.rows());
    }
    if (n_quantiles < 2) {
        throw Error(ErrorCode::BadConfig, "n_quantiles must be at least 2");
    }
    QuantileNormalScaler s;
    s.codes = train.codes;
    s.n_quantiles = n_quantiles;
    s.landmarks.reserve(train.cols());
    for (std::size_t j = 0; j < train.cols(); ++j) {
        auto col = train.values.column(j);
        std::sort(col.begin(), col.end());
        std::vector<double> marks(n_quantiles);
        for (std::size_t q = 0; q < n_quantiles; ++q) {
            const double p = static_cast<double>(q) / static_cast<double>(n_quantiles - 1);
            marks[q] = interpolated_quantile(col, p);
        }
        // Interpolation rounding must not break monotonicity.
        for (std::size_t q = 1; q < n_quantiles; ++q) {
            marks[q] = std::max(marks[q], marks[q - 1]);
        }
        s.landmarks.push_back(std::move(marks));
    }
    return s;
}

double landmark_cdf(std::span<const double> landmarks, double x)
{
    const std::size_t n = landmarks.size();
    const double step = 1.0 / static_cast<double>(n - 1);
    x = std::clamp(x, landmarks.front(), landmarks.back());
    const auto lower = std::lower_bound(landmarks.begin(), landmarks.end(), x);
    const auto upper = std::upper_bound(landmarks.begin(), landmarks.end(), x);
    const auto a = static_cast<std::size_t>(lower - landmarks.begin());
    if (lower != upper) {
        const auto b = static_cast<std::size_t>(upper - landmarks.begin()) - 1;
        return 0.5 * static_cast<double>(a + b) * step;
    }
    // Strictly between landmarks a-1 and a.
    const double left = landmarks[a - 1];
    const double right = landmarks[a];
    const double frac = (x - left) / (right - left);
    return (static_cast<double>(a - 1) + frac) * step;
}

FeatureMatrix apply_quantile_scaler(const QuantileNormalScaler& scaler, const FeatureMatrix& m)
{
    if (m.codes != scaler.codes) {
        throw Error(ErrorCode::ColumnMismatch, "matrix columns differ from the fitted scaler");
    }
    FeatureMatrix out{Matrix(m.rows(), m.cols()), m.codes};
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto& marks = scaler.landmarks[j];
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const double p = std::clamp(landmark_cdf(marks, m.values(i, j)), scaler.p_lo,
                                        scaler.p_hi);
            // Standard score with mu = 0, sigma = 1 is the identity.
            out.values(i, j) = inverse_normal_cdf(p);
        }
    }
    return out;
}

std::size_t UnitRowMatrix::zero_count() const
{
    return static_cast<std::size_t>(std::count(zero_rows.begin(), zero_rows.end(), true));
}

UnitRowMatrix l2_normalize_rows(const Matrix& m)
{
    UnitRowMatrix out{m, std::vector<bool>(m.rows(), false)};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = out.values.row(i);
        double sq = 0.0;
        for (double v : row) {
            sq += v * v;
        }
        if (sq == 0.0) {
            out.zero_rows[i] = true;
            continue;
        }
        const double norm = std::sqrt(sq);
        for (double& v : row) {
            v /= norm;
        }
    }
    return out;
}

MinMaxScalerState fit_minmax(const TargetMatrix& train)
{
    if (train.rows() == 0) {
        throw Error(ErrorCode::EmptyMatrix, "min-max scaler needs at least one row");
    }
    MinMaxScalerState s;
    for (std::size_t k = 0; k < train.values.cols(); ++k) {
        const auto col = train.values.column(k);
        const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
        s.min.push_back(*lo);
        s.max.push_back(*hi);
    }
    return s;
}

namespace {

void check_columns(const MinMaxScalerState& s, const TargetMatrix& t)
{
    if (t.values.cols() != s.min.size()) {
        throw Error(ErrorCode::ColumnMismatch,
                    fmt::format("scaler has {} columns, matrix has {}", s.min.size(),
                                t.values.cols()));
    }
}

} // namespace

TargetMatrix apply_minmax(const MinMaxScalerState& state, const TargetMatrix& targets)
{
    check_columns(state, targets);
    TargetMatrix out{Matrix(targets.rows(), targets.values.cols())};
    for (std::size_t k = 0; k < state.min.size(); ++k) {
        const double range = state.max[k] - state.min[k];
        for (std::size_t i = 0; i < targets.rows(); ++i) {
            out.values(i, k) = range == 0.0 ? 0.0 : (targets.values(i, k) - state.min[k]) / range;
        }
    }
    return out;
}

TargetMatrix invert_minmax(const MinMaxScalerState& state, const TargetMatrix& scaled,
                           bool count_mode)
{
    check_columns(state, scaled);
    TargetMatrix out{Matrix(scaled.rows(), scaled.values.cols())};
    for (std::size_t k = 0; k < state.min.size(); ++k) {
        const double range = state.max[k] - state.min[k];
        for (std::size_t i = 0; i < scaled.rows(); ++i) {
            double y = scaled.values(i, k) * range + state.min[k];
            if (count_mode && y < 0.0) {
                y = 0.0;
            }
            out.values(i, k) = y;
        }
    }
    return out;
}

void to_json(nlohmann::json& j, const QuantileNormalScaler& s)
{
    j = nlohmann::json{{"codes", s.codes},
                       {"n_quantiles", s.n_quantiles},
                       {"p_lo", s.p_lo},
                       {"p_hi", s.p_hi},
                       {"landmarks", s.landmarks}};
}

void from_json(const nlohmann::json& j, QuantileNormalScaler& s)
{
    j.at("codes").get_to(s.codes);
    j.at("n_quantiles").get_to(s.n_quantiles);
    j.at("p_lo").get_to(s.p_lo);
    j.at("p_hi").get_to(s.p_hi);
    j.at("landmarks").get_to(s.landmarks);
    if (s.landmarks.size() != s.codes.size() || s.n_quantiles < 2 ||
        !(0.0 < s.p_lo && s.p_lo < s.p_hi && s.p_hi < 1.0)) {
        throw Error(ErrorCode::BadValue, "inconsistent quantile scaler state");
    }
    for (const auto& marks : s.landmarks) {
        if (marks.size() != s.n_quantiles || !std::is_sorted(marks.begin(), marks.end())) {
            throw Error(ErrorCode::BadValue, "quantile landmarks must be sorted and complete");
        }
    }
}

void to_json(nlohmann::json& j, const MinMaxScalerState& s)
{
    j = nlohmann::json{{"min", s.min}, {"max", s.max}};
}

void from_json(const nlohmann::json& j, MinMaxScalerState& s)
{
    j.at("min").get_to(s.min);
    j.at("max").get_to(s.max);
    if (s.min.size() != s.max.size()) {
        throw Error(ErrorCode::BadValue, "min-max state has mismatched arrays");
    }
    for (std::size_t k = 0; k < s.min.size(); ++k) {
        if (s.max[k] < s.min[k]) {
            throw Error(ErrorCode::BadValue, "min-max state has max < min");
        }
    }
}

} // namespace regio
