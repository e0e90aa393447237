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
#include "regio/features.hpp"

#include "regio/csv.hpp"
#include "regio/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace regio {

std::size_t FeatureMatrix::index_of(std::string_view code) const
{
    auto it = std::find(codes.begin(), codes.end(), code);
    if (it == codes.end()) {
        throw Error(ErrorCode::UnknownFeatureCode, "feature not present in matrix", std::nullopt,
                    std::string(code));
    }
    return static_cast<std::size_t>(it - codes.begin());
}

FeatureMatrix primary_features(std::span<const DataRow> rows)
{
    const auto& codes = primary_feature_codes();
    FeatureMatrix out{Matrix(rows.size(), kPrimaryFeatureCount), {codes.begin(), codes.end()}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy(rows[i].features.begin(), rows[i].features.end(), out.values.row(i).begin());
    }
    return out;
}

TargetMatrix target_matrix(std::span<const DataRow> rows)
{
    TargetMatrix out{Matrix(rows.size(), kTargetCount)};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            out.values(i, t) = static_cast<double>(rows[i].targets[t]);
        }
    }
    return out;
}

double safe_div(double num, double den) noexcept
{
    return den == 0.0 ? 0.0 : num / den;
}

namespace {

std::vector<std::string> feats(std::initializer_list<int> ids)
{
    std::vector<std::string> out;
    for (int id : ids) {
        out.push_back(fmt::format("feat_{:02}", id));
    }
    return out;
}

double sum(std::span<const double> v, std::size_t first, std::size_t count)
{
    return std::accumulate(v.begin() + static_cast<std::ptrdiff_t>(first),
                           v.begin() + static_cast<std::ptrdiff_t>(first + count), 0.0);
}

// Formulas receive their inputs in declared order. The six age/sex cohorts are
// always the leading inputs where a population total is needed.
DerivedFeatureRegistry build_default_registry()
{
    const auto cohorts = {22, 23, 24, 25, 26, 27};
    auto with_cohorts = [&](std::initializer_list<int> extra) {
        auto codes = feats(cohorts);
        auto more = feats(extra);
        codes.insert(codes.end(), more.begin(), more.end());
        return codes;
    };
    auto population = [](std::span<const double> v) { return sum(v, 0, 6); };

    DerivedFeatureRegistry r;
    auto add = [&](std::string code, std::string name, std::vector<std::string> inputs,
                   std::function<double(std::span<const double>)> f) {
        r.entries.push_back({std::move(code), std::move(name), std::move(inputs), std::move(f)});
    };

    add("d01", "total_population", with_cohorts({}), population);
    add("d02", "male_fraction", with_cohorts({}),
        [=](auto v) { return safe_div(v[0] + v[1] + v[2], population(v)); });
    add("d03", "female_fraction", with_cohorts({}),
        [=](auto v) { return safe_div(v[3] + v[4] + v[5], population(v)); });
    add("d04", "youth_fraction", with_cohorts({}),
        [=](auto v) { return safe_div(v[0] + v[3], population(v)); });
    add("d05", "middle_fraction", with_cohorts({}),
        [=](auto v) { return safe_div(v[1] + v[4], population(v)); });
    add("d06", "senior_fraction", with_cohorts({}),
        [=](auto v) { return safe_div(v[2] + v[5], population(v)); });
    add("d07", "population_density", with_cohorts({3}),
        [=](auto v) { return safe_div(population(v), v[6]); });
    add("d08", "chc_per_100k", with_cohorts({11}),
        [=](auto v) { return safe_div(1e5 * v[6], population(v)); });
    add("d09", "vaccine_coverage", with_cohorts({6}),
        [=](auto v) { return safe_div(v[6], population(v)); });
    add("d10", "labor_participation", with_cohorts({21}),
        [=](auto v) { return safe_div(v[6], population(v)); });
    add("d11", "employ_unemploy_ratio", feats({19, 20}),
        [](auto v) { return safe_div(v[0], v[1] + 1e-9); });
    add("d12", "travelers_per_100k", with_cohorts({18}),
        [=](auto v) { return safe_div(1e5 * v[6], population(v)); });
    add("d13", "mobility_composite", feats({12, 13, 14, 15, 16, 17}),
        [](auto v) { return sum(v, 0, 6) / 6.0; });
    add("d14", "retail_residential_ratio", feats({12, 17}),
        [](auto v) { return safe_div(v[0], std::abs(v[1]) + 1.0); });
    add("d15", "workplace_residential_ratio", feats({16, 17}),
        [](auto v) { return safe_div(v[0], std::abs(v[1]) + 1.0); });
    add("d16", "transit_per_labor", feats({15, 21}),
        [](auto v) { return safe_div(v[0], v[1] + 1e-9); });
    add("d17", "rt_mobility", feats({1, 12, 13, 14, 15, 16, 17}),
        [](auto v) { return v[0] * sum(v, 1, 6) / 6.0; });
    return r;
}

} // namespace

const DerivedFeatureRegistry& default_derived_registry()
{
    static const DerivedFeatureRegistry registry = build_default_registry();
    return registry;
}

FeatureMatrix compute_derived_features(const FeatureMatrix& primary,
                                       const DerivedFeatureRegistry& registry)
{
    // Resolve every input column once.
    std::vector<std::vector<std::size_t>> columns;
    columns.reserve(registry.entries.size());
    for (const auto& entry : registry.entries) {
        std::vector<std::size_t> idx;
        for (const auto& code : entry.inputs) {
            auto it = std::find(primary.codes.begin(), primary.codes.end(), code);
            if (it == primary.codes.end()) {
                throw Error(ErrorCode::MissingPrimaryColumn,
                            "derived feature " + entry.code + " needs a missing column",
                            std::nullopt, code);
            }
            idx.push_back(static_cast<std::size_t>(it - primary.codes.begin()));
        }
        columns.push_back(std::move(idx));
    }

    FeatureMatrix out{Matrix(primary.rows(), registry.entries.size()), {}};
    for (const auto& entry : registry.entries) {
        out.codes.push_back(entry.code);
    }
    std::vector<double> args;
    for (std::size_t i = 0; i < primary.rows(); ++i) {
        const auto row = primary.values.row(i);
        for (std::size_t e = 0; e < registry.entries.size(); ++e) {
            args.clear();
            for (std::size_t c : columns[e]) {
                args.push_back(row[c]);
            }
            out.values(i, e) = registry.entries[e].formula(args);
        }
    }
    return out;
}

FeatureMatrix concat_features(const FeatureMatrix& primary, const FeatureMatrix& derived)
{
    if (primary.rows() != derived.rows()) {
        throw Error(ErrorCode::RowCountMismatch,
                    fmt::format("cannot concatenate {} rows with {} rows", primary.rows(),
                                derived.rows()));
    }
    FeatureMatrix out{Matrix(primary.rows(), primary.cols() + derived.cols()), primary.codes};
    out.codes.insert(out.codes.end(), derived.codes.begin(), derived.codes.end());
    for (std::size_t i = 0; i < primary.rows(); ++i) {
        auto dst = out.values.row(i);
        auto a = primary.values.row(i);
        auto b = derived.values.row(i);
        std::copy(a.begin(), a.end(), dst.begin());
        std::copy(b.begin(), b.end(), dst.begin() + static_cast<std::ptrdiff_t>(a.size()));
    }
    return out;
}

FeatureMatrix expanded_features(std::span<const DataRow> rows)
{
    auto primary = primary_features(rows);
    auto derived = compute_derived_features(primary);
    return concat_features(primary, derived);
}

double RelevanceReport::mean_score(std::size_t feature) const
{
    double total = 0.0;
    for (std::size_t t = 0; t < scores.cols(); ++t) {
        total += scores(feature, t);
    }
    return total / static_cast<double>(scores.cols());
}

namespace {

std::vector<double> average_ranks(std::span<const double> v)
{
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

} // namespace

double spearman(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "spearman inputs differ in length");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return 0.0;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

RelevanceReport score_relevance(const FeatureMatrix& features, const TargetMatrix& targets)
{
    if (features.rows() != targets.rows()) {
        throw Error(ErrorCode::RowCountMismatch, "features and targets differ in row count");
    }
    if (features.rows() < 3) {
        throw Error(ErrorCode::TooFewRows, "relevance scoring needs at least 3 rows");
    }
    RelevanceReport report{features.codes, Matrix(features.cols(), kTargetCount), {}};
    std::vector<std::vector<double>> feature_cols(features.cols());
    for (std::size_t f = 0; f < features.cols(); ++f) {
        feature_cols[f] = features.values.column(f);
    }
    for (std::size_t t = 0; t < kTargetCount; ++t) {
        const auto target = targets.values.column(t);
        double best = 0.0;
        for (std::size_t f = 0; f < features.cols(); ++f) {
            const double s = std::abs(spearman(feature_cols[f], target));
            report.scores(f, t) = s;
            best = std::max(best, s);
        }
        for (std::size_t f = 0; f < features.cols(); ++f) {
            report.scores(f, t) = best > 0.0 ? report.scores(f, t) / best : 0.0;
        }
        std::vector<std::size_t> order(features.cols());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return report.scores(a, t) > report.scores(b, t);
        });
        report.ranking.push_back(std::move(order));
    }
    return report;
}

std::string relevance_csv(const RelevanceReport& report)
{
    std::string out = "feature";
    for (auto name : kTargetNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t f = 0; f < report.codes.size(); ++f) {
        out += report.codes[f];
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            out += ',';
            out += csv::format_fixed(100.0 * report.scores(f, t), 2);
        }
        out += '\n';
    }
    return out;
}

const std::vector<std::string>& default_feature_codes()
{
    static const std::vector<std::string> codes = {
        "feat_05", "feat_23", "feat_21", "feat_24", "feat_27", "feat_26", "feat_22",
        "feat_25", "feat_11", "feat_06", "feat_03", "feat_17", "feat_07",
    };
    return codes;
}

FeatureMatrix select_features(const FeatureMatrix& features, std::span<const std::string> codes)
{
    std::vector<std::size_t> idx;
    idx.reserve(codes.size());
    for (const auto& code : codes) {
        idx.push_back(features.index_of(code));
    }
    FeatureMatrix out{Matrix(features.rows(), idx.size()), {codes.begin(), codes.end()}};
    for (std::size_t i = 0; i < features.rows(); ++i) {
        for (std::size_t c = 0; c < idx.size(); ++c) {
            out.values(i, c) = features.values(i, idx[c]);
        }
    }
    return out;
}

std::vector<std::string> top_feature_codes(const RelevanceReport& report, std::size_t top_n)
{
    if (top_n == 0 || top_n > report.codes.size()) {
        throw Error(ErrorCode::BadTopN, fmt::format("top_n must be in 1..{}, got {}",
                                                    report.codes.size(), top_n));
    }
    std::vector<std::size_t> order(report.codes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> mean(order.size());
    for (std::size_t f = 0; f < order.size(); ++f) {
        mean[f] = report.mean_score(f);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return mean[a] > mean[b]; });
    std::vector<std::string> codes;
    for (std::size_t i = 0; i < top_n; ++i) {
        codes.push_back(report.codes[order[i]]);
    }
    return codes;
}

FeatureMatrix select_features(const FeatureMatrix& features, const RelevanceReport& report,
                              std::size_t top_n)
{
    const auto codes = top_feature_codes(report, top_n);
    return select_features(features, codes);
}

} // namespace regio
