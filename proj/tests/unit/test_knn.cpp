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
#include <regio/knn.hpp>
#include <regio/random.hpp>

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

namespace regio {
namespace {

InstanceStore line_store()
{
    InstanceStore s(1, 1);
    s.append(std::vector<double>{0.0}, std::vector<double>{0.0}, {});
    s.append(std::vector<double>{1.0}, std::vector<double>{10.0}, {});
    return s;
}

double at(const InstanceStore& s, double x, std::size_t k = 2)
{
    return predict_knn(s, std::vector<double>{x}, KnnConfig{k})[0];
}

TEST(FitKnn, MemorizesRows)
{
    Matrix x(308, 13, 0.5);
    Matrix y(308, 4, 1.0);
    EXPECT_EQ(fit_knn(x, y, {}).size(), 308u);
    try {
        fit_knn(Matrix(0, 13), Matrix(0, 4), {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyTrainingSet);
    }
    std::vector<LabeledPoint> mixed = {{std::vector<double>(13, 0.0), {1, 2, 3, 4}, {}},
                                       {std::vector<double>(12, 0.0), {1, 2, 3, 4}, {}}};
    try {
        fit_knn(mixed, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
    try {
        fit_knn(x, y, KnnConfig{0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadConfig);
    }
}

TEST(PredictKnn, TwoPointExamples)
{
    const auto s = line_store();
    EXPECT_EQ(at(s, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(at(s, 0.5), 5.0);
    // Brute-force weighted mean with w = 1/d: (4*0 + (4/3)*10) / (4 + 4/3).
    EXPECT_DOUBLE_EQ(at(s, 0.25), (4.0 * 0.0 + (4.0 / 3.0) * 10.0) / (4.0 + 4.0 / 3.0));
    EXPECT_DOUBLE_EQ(at(s, 0.25), 2.5);
    EXPECT_DOUBLE_EQ(at(s, 0.25, 50), 2.5); // k >= |store| uses every instance
    EXPECT_EQ(at(s, 0.25, 1), 0.0);
}

TEST(PredictKnn, SingleInstanceAndTieBreak)
{
    InstanceStore one(2, 1);
    one.append(std::vector<double>{3.0, 4.0}, std::vector<double>{7.0}, {});
    EXPECT_EQ(predict_knn(one, std::vector<double>{-100.0, 2.0}, {})[0], 7.0);

    InstanceStore tie(1, 1);
    tie.append(std::vector<double>{1.0}, std::vector<double>{0.0}, {});
    tie.append(std::vector<double>{-1.0}, std::vector<double>{10.0}, {});
    EXPECT_EQ(at(tie, 0.0, 1), 0.0); // equal distances: earlier instance wins
}

TEST(PredictKnn, ExactMatchesAverageByWeight)
{
    InstanceStore s(1, 1);
    s.append(std::vector<double>{0.0}, std::vector<double>{2.0}, {0, 1.0});
    s.append(std::vector<double>{0.0}, std::vector<double>{8.0}, {1, 3.0});
    s.append(std::vector<double>{0.1}, std::vector<double>{100.0}, {});
    EXPECT_DOUBLE_EQ(at(s, 0.0, 3), (2.0 + 3.0 * 8.0) / 4.0);
}

TEST(PredictKnn, ZeroWeightInstancesAreInert)
{
    auto s = line_store();
    s.append(std::vector<double>{0.25}, std::vector<double>{1000.0}, {5, 0.0});
    EXPECT_DOUBLE_EQ(at(s, 0.25), 2.5);
    EXPECT_THROW(s.append(std::vector<double>{0.0}, std::vector<double>{0.0}, {0, -1.0}), Error);
    InstanceStore dead(1, 1);
    dead.append(std::vector<double>{0.0}, std::vector<double>{1.0}, {0, 0.0});
    EXPECT_THROW(at(dead, 0.0), Error);
}

struct RandomStore {
    std::vector<std::vector<double>> x, y;
    std::vector<double> w;
    InstanceStore store;
};

RandomStore random_store(Rng& rng, std::size_t n, std::size_t dim, bool grid)
{
    RandomStore r{{}, {}, {}, InstanceStore(dim, 2)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(dim);
        for (auto& v : x) {
            v = grid ? static_cast<double>(rng.uniform_index(3)) : rng.normal();
        }
        std::vector<double> y = {rng.uniform(0, 1), rng.uniform(-5, 5)};
        const double w = i == 0 ? 1.0 : rng.uniform(0.0, 2.0);
        r.store.append(x, y, {0, w});
        r.x.push_back(x);
        r.y.push_back(y);
        r.w.push_back(w);
    }
    return r;
}

TEST(PredictKnn, MatchesBruteForceOracle)
{
    Rng rng(2024);
    for (int c = 0; c < 300; ++c) {
        const auto r = random_store(rng, 1 + rng.uniform_index(40), 1 + rng.uniform_index(5), c % 2 == 0);
        std::vector<double> q = c % 3 == 0 ? r.x[rng.uniform_index(r.x.size())] : std::vector<double>(r.x[0].size());
        if (c % 3 != 0) {
            for (auto& v : q) {
                v = c % 2 == 0 ? static_cast<double>(rng.uniform_index(3)) : rng.normal();
            }
        }
        const std::size_t k = 1 + rng.uniform_index(8);
        const auto fast = predict_knn(r.store, q, KnnConfig{k});
        const auto ref = testing::brute_force_knn(r.x, r.y, r.w, q, k);
        const auto lib = knn_oracle(r.store, q, KnnConfig{k});
        for (std::size_t t = 0; t < 2; ++t) {
            EXPECT_NEAR(fast[t], ref[t], 1e-10) << "case " << c;
            EXPECT_NEAR(fast[t], lib[t], 1e-10) << "case " << c;
        }
    }
}

TEST(PredictKnn, Properties)
{
    Rng rng(7);
    for (int c = 0; c < 50; ++c) {
        auto r = random_store(rng, 30, 4, false);
        const KnnConfig cfg{6};
        // interpolation
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            const auto p = predict_knn(r.store, r.x[i], cfg);
            EXPECT_EQ(p[0], r.y[i][0]);
            EXPECT_EQ(p[1], r.y[i][1]);
        }
        std::vector<double> q(4);
        for (auto& v : q) {
            v = rng.normal();
        }
        const auto p = predict_knn(r.store, q, cfg);
        // convex hull of all targets (a superset of the neighbours' hull)
        for (std::size_t t = 0; t < 2; ++t) {
            double lo = 1e300;
            double hi = -1e300;
            for (const auto& y : r.y) {
                lo = std::min(lo, y[t]);
                hi = std::max(hi, y[t]);
            }
            EXPECT_GE(p[t], lo);
            EXPECT_LE(p[t], hi);
        }
        // weight scaling invariance
        const auto scaled = predict_knn(r.store.reweighted(3.5), q, cfg);
        EXPECT_NEAR(scaled[0], p[0], 1e-12);
        EXPECT_NEAR(scaled[1], p[1], 1e-12);
        // permutation invariance in generic position
        InstanceStore rev(4, 2);
        for (std::size_t i = r.x.size(); i-- > 0;) {
            rev.append(r.x[i], r.y[i], {0, r.w[i]});
        }
        const auto pr = predict_knn(rev, q, cfg);
        EXPECT_NEAR(pr[0], p[0], 1e-12);
        EXPECT_NEAR(pr[1], p[1], 1e-12);
    }
}

TEST(InstanceStore, JsonRoundTrip)
{
    Rng rng(1);
    const auto r = random_store(rng, 25, 3, false);
    nlohmann::json j = r.store;
    EXPECT_EQ(j.get<InstanceStore>(), r.store);
    nlohmann::json c = KnnConfig{9};
    EXPECT_EQ(c["n_neighbors"], 9);
    EXPECT_EQ(c["weights"], "distance");
    EXPECT_EQ(c.get<KnnConfig>(), KnnConfig{9});
}

} // namespace
} // namespace regio
