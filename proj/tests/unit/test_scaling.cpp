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
#include "oracles.hpp"

#include <regio/error.hpp>
#include <regio/random.hpp>
#include <regio/scaling.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>

namespace regio {
namespace {

FeatureMatrix column(std::vector<double> v)
{
    Matrix m(v.size(), 1);
    m.set_column(0, v);
    return {m, {"x"}};
}

std::vector<double> one_to(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<double>(i + 1);
    }
    return v;
}

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::BadConfig;
}

TEST(InverseNormalCdf, Examples)
{
    EXPECT_EQ(inverse_normal_cdf(0.5), 0.0);
    EXPECT_NEAR(inverse_normal_cdf(0.975), testing::bisection_normal_quantile(0.975), 1e-12);
    EXPECT_NEAR(inverse_normal_cdf(0.975), 1.959964, 1e-6);
    for (double bad : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
        EXPECT_EQ(code_of([&] { inverse_normal_cdf(bad); }), ErrorCode::OutOfDomain) << bad;
    }
}

TEST(InverseNormalCdf, MatchesBisectionAndIsSymmetric)
{
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        const double p = std::max(1e-300, rng.uniform01());
        EXPECT_NEAR(inverse_normal_cdf(p), testing::bisection_normal_quantile(p), 1e-8) << p;
        EXPECT_NEAR(inverse_normal_cdf(p) + inverse_normal_cdf(1.0 - p), 0.0, 1e-8) << p;
    }
    for (double p : {1e-7, 1e-10, 1e-15, 1.0 - 1e-7, 1.0 - 1e-12}) {
        EXPECT_NEAR(inverse_normal_cdf(p), testing::bisection_normal_quantile(p), 1e-8) << p;
    }
}

TEST(QuantileScaler, LandmarksMatchSortInterpolationOracle)
{
    const auto s = fit_quantile_scaler(column(one_to(100)), 101);
    ASSERT_EQ(s.landmarks.size(), 1u);
    ASSERT_EQ(s.landmarks[0].size(), 101u);
    for (std::size_t q = 0; q <= 100; ++q) {
        const double p = static_cast<double>(q) / 100.0;
        EXPECT_NEAR(s.landmarks[0][q], testing::sorted_quantile(one_to(100), p), 1e-12);
        EXPECT_NEAR(s.landmarks[0][q], 1.0 + 0.99 * static_cast<double>(q), 1e-9);
    }
    Rng rng(4);
    std::vector<double> v(500);
    for (auto& x : v) {
        x = std::exp(rng.normal());
    }
    const auto s2 = fit_quantile_scaler(column(v), 37);
    for (std::size_t q = 0; q < 37; ++q) {
        EXPECT_NEAR(s2.landmarks[0][q], testing::sorted_quantile(v, static_cast<double>(q) / 36.0), 1e-12);
    }
}

TEST(QuantileScaler, DefaultsAndDegenerateInputs)
{
    EXPECT_EQ(fit_quantile_scaler(column(one_to(362))).n_quantiles, 362u);
    EXPECT_EQ(fit_quantile_scaler(column(one_to(2500))).n_quantiles, 1000u);
    const auto c = fit_quantile_scaler(column({5, 5, 5}));
    for (double l : c.landmarks[0]) {
        EXPECT_EQ(l, 5.0);
    }
    EXPECT_EQ(code_of([] { fit_quantile_scaler(column({1.0})); }), ErrorCode::TooFewRows);
    const auto z = apply_quantile_scaler(c, column({5, 4, 6}));
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_EQ(z.values(r, 0), 0.0);
    }
}

TEST(QuantileScaler, MedianMapsNearZeroAndClampsBelowMin)
{
    const auto s = fit_quantile_scaler(column(one_to(100)));
    const auto z = apply_quantile_scaler(s, column({50.5, 1.0, -1000.0, 100.0, 1e9}));
    // Oracle: empirical CDF at the median is 0.5, and the standard normal quantile of 0.5 is 0.
    EXPECT_LT(std::abs(z.values(0, 0)), 0.05);
    EXPECT_EQ(z.values(2, 0), z.values(1, 0));
    EXPECT_EQ(z.values(4, 0), z.values(3, 0));
    EXPECT_NEAR(z.values(1, 0), testing::bisection_normal_quantile(1e-7), 1e-8);
}

TEST(QuantileScaler, InteriorValuesFollowEmpiricalCdf)
{
    const auto train = one_to(100);
    const auto s = fit_quantile_scaler(column(train));
    for (double x : {3.0, 17.25, 42.0, 88.8}) {
        // Oracle: linear interpolation of ranks, p = (x - 1) / 99.
        const double p = (x - 1.0) / 99.0;
        const auto z = apply_quantile_scaler(s, column({x}));
        EXPECT_NEAR(z.values(0, 0), testing::bisection_normal_quantile(p), 1e-8) << x;
    }
}

TEST(QuantileScaler, MonotoneAndNormalOnTrainingData)
{
    Rng rng(17);
    std::vector<double> v(362);
    for (auto& x : v) {
        x = std::exp(2.0 * rng.normal()) + rng.uniform01();
    }
    const auto s = fit_quantile_scaler(column(v));
    const auto z = apply_quantile_scaler(s, column(v)).values.column(0);
    EXPECT_LT(std::abs(testing::mean(z)), 0.05);
    const double sd = std::sqrt(testing::variance(z));
    EXPECT_GE(sd, 0.85);
    EXPECT_LE(sd, 1.15);

    std::vector<double> probe(1000);
    for (std::size_t i = 0; i < probe.size(); ++i) {
        probe[i] = -5.0 + 0.1 * static_cast<double>(i);
    }
    const auto zp = apply_quantile_scaler(s, column(probe)).values.column(0);
    for (std::size_t i = 1; i < zp.size(); ++i) {
        EXPECT_LE(zp[i - 1], zp[i]);
    }
}

TEST(QuantileScaler, ColumnMismatchAndJson)
{
    const auto s = fit_quantile_scaler(column(one_to(10)));
    Matrix two(3, 2, 1.0);
    EXPECT_EQ(code_of([&] { apply_quantile_scaler(s, FeatureMatrix{two, {"x", "y"}}); }),
              ErrorCode::ColumnMismatch);
    nlohmann::json j = s;
    EXPECT_EQ(j.get<QuantileNormalScaler>(), s);
}

TEST(L2Normalize, Examples)
{
    const auto u = l2_normalize_rows(Matrix{{3, 4}, {0, 0}});
    EXPECT_DOUBLE_EQ(u.values(0, 0), 0.6);
    EXPECT_DOUBLE_EQ(u.values(0, 1), 0.8);
    EXPECT_EQ(u.values(1, 0), 0.0);
    EXPECT_EQ(u.values(1, 1), 0.0);
    EXPECT_FALSE(u.zero_rows[0]);
    EXPECT_TRUE(u.zero_rows[1]);
    EXPECT_EQ(u.zero_count(), 1u);
    const auto e = l2_normalize_rows(Matrix{{1, 0, 0}});
    EXPECT_EQ(e.values, (Matrix{{1, 0, 0}}));
}

TEST(L2Normalize, UnitNormAndDirection)
{
    Rng rng(5);
    Matrix m(300, 13);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double scale = std::pow(10.0, rng.uniform(-6, 6));
        for (std::size_t c = 0; c < m.cols(); ++c) {
            m(r, c) = scale * rng.normal();
        }
    }
    const auto u = l2_normalize_rows(m);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double s = 0.0;
        for (double v : u.values.row(r)) {
            s += v * v;
        }
        EXPECT_NEAR(std::sqrt(s), 1.0, 1e-9);
        const double ratio = m(r, 0) / u.values(r, 0);
        EXPECT_GT(ratio, 0.0);
        for (std::size_t c = 1; c < m.cols(); ++c) {
            EXPECT_NEAR(m(r, c) / ratio, u.values(r, c), 1e-12);
        }
    }
}

TEST(MinMax, FitApplyInvertExamples)
{
    const auto fit = [](std::vector<double> v) {
        Matrix m(v.size(), 1);
        m.set_column(0, v);
        return fit_minmax(TargetMatrix{m});
    };
    const auto s = fit({10, 20, 30});
    EXPECT_EQ(s.min[0], 10.0);
    EXPECT_EQ(s.max[0], 30.0);
    const auto one = fit({7});
    EXPECT_EQ(one.min[0], 7.0);
    EXPECT_EQ(one.max[0], 7.0);
    EXPECT_EQ(code_of([] { fit_minmax(TargetMatrix{Matrix(0, 4)}); }), ErrorCode::EmptyMatrix);

    const auto a = apply_minmax(s, TargetMatrix{Matrix{{10}, {20}, {30}, {40}}});
    EXPECT_EQ(a.values, (Matrix{{0}, {0.5}, {1.0}, {1.5}}));
    EXPECT_EQ(apply_minmax(one, TargetMatrix{Matrix{{7}, {9}}}).values, (Matrix{{0}, {0}}));
    EXPECT_EQ(invert_minmax(s, TargetMatrix{Matrix{{0.5}}}).values(0, 0), 20.0);
    const auto s100 = fit({0, 100});
    EXPECT_EQ(invert_minmax(s100, TargetMatrix{Matrix{{-0.1}}}, true).values(0, 0), 0.0);
    EXPECT_NEAR(invert_minmax(s100, TargetMatrix{Matrix{{-0.1}}}, false).values(0, 0), -10.0, 1e-12);
    EXPECT_EQ(code_of([&] { apply_minmax(s, TargetMatrix{Matrix(2, 2)}); }), ErrorCode::ColumnMismatch);
}

TEST(MinMax, RoundTripAndOrder)
{
    Rng rng(6);
    Matrix y(200, 4);
    for (double* p = &y(0, 0); p != &y(0, 0) + 800; ++p) {
        *p = rng.uniform(-1e4, 1e5);
    }
    const auto s = fit_minmax(TargetMatrix{y});
    const auto a = apply_minmax(s, TargetMatrix{y});
    const auto back = invert_minmax(s, a);
    for (std::size_t i = 0; i < 800; ++i) {
        EXPECT_NEAR(back.values.data()[i], y.data()[i], 1e-9);
    }
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t r = 1; r < 200; ++r) {
            EXPECT_EQ(y(r - 1, c) < y(r, c), a.values(r - 1, c) < a.values(r, c));
        }
    }
    nlohmann::json j = s;
    EXPECT_EQ(j.get<MinMaxScalerState>(), s);
}

} // namespace
} // namespace regio
