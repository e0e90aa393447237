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
#include <regio/error.hpp>
#include <regio/features.hpp>
#include <regio/random.hpp>
#include <regio/synth.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

namespace regio {
namespace {

FeatureMatrix one_primary_row(std::initializer_list<std::pair<int, double>> values)
{
    DataRow row;
    row.features.fill(1.0);
    for (auto [code, v] : values) {
        row.features[static_cast<std::size_t>(code - 1)] = v;
    }
    return primary_features(std::span<const DataRow>(&row, 1));
}

double derived(const FeatureMatrix& primary, const char* code)
{
    const auto d = compute_derived_features(primary);
    return d.values(0, d.index_of(code));
}

TEST(DerivedFeatures, RegistryHasSeventeenEntries)
{
    const auto& reg = default_derived_registry();
    ASSERT_EQ(reg.entries.size(), 17u);
    for (std::size_t i = 0; i < 17; ++i) {
        EXPECT_EQ(reg.entries[i].code, "d" + std::string(i < 9 ? "0" : "") + std::to_string(i + 1));
        for (const auto& in : reg.entries[i].inputs) {
            EXPECT_NO_THROW(primary_feature_index(in)) << in;
        }
    }
}

TEST(DerivedFeatures, EqualCohortsHandEvaluated)
{
    const auto p = one_primary_row({{22, 100}, {23, 100}, {24, 100}, {25, 100}, {26, 100}, {27, 100}});
    EXPECT_DOUBLE_EQ(derived(p, "d01"), 600.0);
    EXPECT_NEAR(derived(p, "d04"), 200.0 / 600.0, 1e-15);
    EXPECT_NEAR(derived(p, "d02") + derived(p, "d03"), 1.0, 1e-15);
    EXPECT_NEAR(derived(p, "d04") + derived(p, "d05") + derived(p, "d06"), 1.0, 1e-15);
}

TEST(DerivedFeatures, HandEvaluatedRatios)
{
    const auto p = one_primary_row({{22, 10}, {23, 20}, {24, 30}, {25, 40}, {26, 50}, {27, 50},
                                    {3, 4}, {11, 2}, {6, 50}, {21, 100}, {19, 9}, {20, 3},
                                    {18, 20}, {12, 6}, {13, 0}, {14, 0}, {15, 12}, {16, -4}, {17, -2},
                                    {1, 1.5}});
    EXPECT_DOUBLE_EQ(derived(p, "d01"), 200.0);
    EXPECT_DOUBLE_EQ(derived(p, "d07"), 50.0);       // 200 / 4
    EXPECT_DOUBLE_EQ(derived(p, "d08"), 1000.0);     // 1e5 * 2 / 200
    EXPECT_DOUBLE_EQ(derived(p, "d09"), 0.25);       // 50 / 200
    EXPECT_DOUBLE_EQ(derived(p, "d10"), 0.5);        // 100 / 200
    EXPECT_DOUBLE_EQ(derived(p, "d11"), 9.0 / (3.0 + 1e-9));
    EXPECT_DOUBLE_EQ(derived(p, "d12"), 10000.0);    // 1e5 * 20 / 200
    EXPECT_DOUBLE_EQ(derived(p, "d13"), 2.0);        // (6+0+0+12-4-2)/6
    EXPECT_DOUBLE_EQ(derived(p, "d14"), 2.0);        // 6 / (2+1)
    EXPECT_DOUBLE_EQ(derived(p, "d15"), -4.0 / 3.0); // -4 / (2+1)
    EXPECT_DOUBLE_EQ(derived(p, "d16"), 12.0 / (100.0 + 1e-9));
    EXPECT_DOUBLE_EQ(derived(p, "d17"), 3.0);        // 1.5 * 2
}

TEST(DerivedFeatures, SafeDivisionGuards)
{
    EXPECT_EQ(derived(one_primary_row({{3, 0}}), "d07"), 0.0);
    EXPECT_EQ(derived(one_primary_row({{12, 0}, {13, 0}, {14, 0}, {15, 0}, {16, 0}, {17, 0}}), "d13"), 0.0);
    const auto zero_pop = one_primary_row({{22, 0}, {23, 0}, {24, 0}, {25, 0}, {26, 0}, {27, 0}});
    for (const char* c : {"d02", "d04", "d08", "d09", "d10", "d12"}) {
        EXPECT_EQ(derived(zero_pop, c), 0.0) << c;
    }
}

TEST(DerivedFeatures, MissingPrimaryColumn)
{
    auto p = one_primary_row({});
    p.codes[2] = "renamed";
    try {
        compute_derived_features(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingPrimaryColumn);
    }
}

TEST(DerivedFeatures, RowLocal)
{
    const auto ds = generate_synthetic({1, 40, 0.05, 3}).front();
    std::vector<DataRow> rows = ds.rows;
    std::vector<std::size_t> perm(rows.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(3);
    for (std::size_t i = perm.size(); i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    }
    std::vector<DataRow> shuffled;
    for (auto i : perm) {
        shuffled.push_back(rows[i]);
    }
    const auto a = compute_derived_features(primary_features(rows));
    const auto b = compute_derived_features(primary_features(shuffled));
    EXPECT_EQ(a.values.take_rows(perm), b.values);
}

TEST(ConcatFeatures, ShapeOrderAndMismatch)
{
    const auto ds = generate_synthetic({1, 25, 0.05, 1}).front();
    const auto prim = primary_features(ds.rows);
    const auto der = compute_derived_features(prim);
    const auto all = concat_features(prim, der);
    EXPECT_EQ(all.rows(), 25u);
    EXPECT_EQ(all.cols(), 44u);
    EXPECT_EQ(all.codes.front(), "feat_01");
    EXPECT_EQ(all.codes[26], "feat_27");
    EXPECT_EQ(all.codes[27], "d01");
    EXPECT_EQ(all.codes.back(), "d17");
    EXPECT_EQ(expanded_features(ds.rows).values, all.values);

    const auto fewer = compute_derived_features(primary_features(std::span(ds.rows).first(10)));
    try {
        concat_features(prim, fewer);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RowCountMismatch);
    }
}

TEST(Spearman, HandComputedWithTies)
{
    const std::vector<double> x = {1, 2, 2, 3};
    const std::vector<double> y = {1, 2, 3, 4};
    // Average ranks x = (1, 2.5, 2.5, 4); Pearson of ranks = 4.5 / sqrt(4.5 * 5).
    EXPECT_NEAR(spearman(x, y), 4.5 / std::sqrt(22.5), 1e-15);
    EXPECT_EQ(spearman(std::vector<double>{3, 3, 3}, std::vector<double>{1, 2, 3}), 0.0);
    EXPECT_NEAR(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}), -1.0, 1e-15);
}

TEST(Relevance, IdentityConstantAndMonotoneInvariance)
{
    Rng rng(11);
    const std::size_t n = 80;
    Matrix f(n, 3);
    Matrix y(n, kTargetCount);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            y(i, t) = std::floor(rng.uniform(0, 500));
        }
        f(i, 0) = y(i, 1);              // equals the hospitalizations column
        f(i, 1) = 42.0;                 // constant
        f(i, 2) = rng.normal();
    }
    const FeatureMatrix fm{f, {"same", "flat", "noise"}};
    const auto rep = score_relevance(fm, TargetMatrix{y});
    EXPECT_DOUBLE_EQ(rep.scores(0, 1), 1.0);
    for (std::size_t t = 0; t < kTargetCount; ++t) {
        EXPECT_EQ(rep.scores(1, t), 0.0);
        double best = 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
            EXPECT_GE(rep.scores(c, t), 0.0);
            EXPECT_LE(rep.scores(c, t), 1.0);
            best = std::max(best, rep.scores(c, t));
        }
        EXPECT_EQ(best, 1.0);
    }
    EXPECT_EQ(rep.ranking[1].front(), 0u);

    Matrix g = f;
    for (std::size_t i = 0; i < n; ++i) {
        g(i, 2) = std::exp(f(i, 2));
    }
    const auto rep2 = score_relevance(FeatureMatrix{g, fm.codes}, TargetMatrix{y});
    for (std::size_t t = 0; t < kTargetCount; ++t) {
        EXPECT_NEAR(rep.scores(2, t), rep2.scores(2, t), 1e-12);
    }

    const FeatureMatrix tiny{f.take_rows(std::vector<std::size_t>{0, 1}), fm.codes};
    try {
        score_relevance(tiny, TargetMatrix{y.take_rows(std::vector<std::size_t>{0, 1})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooFewRows);
    }
}

TEST(Relevance, CsvInPercent)
{
    const auto ds = generate_synthetic({1, 30, 0.05, 1}).front();
    const auto csv = relevance_csv(score_relevance(expanded_features(ds.rows), target_matrix(ds.rows)));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "feature,infections,hospitalizations,recoveries,deaths");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 45);
}

TEST(SelectFeatures, ExplicitTableList)
{
    const auto ds = generate_synthetic({1, 20, 0.05, 1}).front();
    const auto all = expanded_features(ds.rows);
    const auto sel = select_features(all, default_feature_codes());
    const std::vector<std::string> expected = {"feat_05", "feat_23", "feat_21", "feat_24", "feat_27",
                                               "feat_26", "feat_22", "feat_25", "feat_11", "feat_06",
                                               "feat_03", "feat_17", "feat_07"};
    EXPECT_EQ(sel.codes, expected);
    ASSERT_EQ(sel.cols(), 13u);
    for (std::size_t c = 0; c < 13; ++c) {
        const auto src = all.index_of(expected[c]);
        for (std::size_t r = 0; r < all.rows(); ++r) {
            EXPECT_EQ(sel.values(r, c), all.values(r, src));
        }
    }
    const std::vector<std::string> bad = {"feat_01", "feat_99"};
    try {
        select_features(all, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownFeatureCode);
    }
}

TEST(SelectFeatures, RankedModes)
{
    const auto ds = generate_synthetic({1, 60, 0.05, 2}).front();
    const auto all = expanded_features(ds.rows);
    const auto rep = score_relevance(all, target_matrix(ds.rows));
    const auto full = select_features(all, rep, all.cols());
    auto sorted_codes = full.codes;
    auto orig = all.codes;
    std::sort(sorted_codes.begin(), sorted_codes.end());
    std::sort(orig.begin(), orig.end());
    EXPECT_EQ(sorted_codes, orig);
    for (std::size_t i = 1; i < full.codes.size(); ++i) {
        EXPECT_GE(rep.mean_score(all.index_of(full.codes[i - 1])),
                  rep.mean_score(all.index_of(full.codes[i])));
    }
    EXPECT_EQ(select_features(all, rep, 13).cols(), 13u);
    for (std::size_t bad : {std::size_t{0}, all.cols() + 1}) {
        try {
            top_feature_codes(rep, bad);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::BadTopN);
        }
    }
}

} // namespace
} // namespace regio
