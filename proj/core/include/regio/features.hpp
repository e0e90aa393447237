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

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace regio {

/// Real-valued feature block with one identifier per column.
struct FeatureMatrix {
    Matrix values;
    std::vector<std::string> codes;

    std::size_t rows() const noexcept { return values.rows(); }
    std::size_t cols() const noexcept { return values.cols(); }
    /// Throws UnknownFeatureCode if absent.
    std::size_t index_of(std::string_view code) const;
};

/// Counts promoted to reals; columns are always [I, H, R, D].
struct TargetMatrix {
    Matrix values;

    std::size_t rows() const noexcept { return values.rows(); }
};

FeatureMatrix primary_features(std::span<const DataRow> rows);
TargetMatrix target_matrix(std::span<const DataRow> rows);

/// Division that yields 0 instead of a non-finite value when `den` is 0.
double safe_div(double num, double den) noexcept;

struct DerivedFeature {
    std::string code;
    std::string name;
    /// Primary feature codes the formula reads, in argument order.
    std::vector<std::string> inputs;
    std::function<double(std::span<const double>)> formula;
};

struct DerivedFeatureRegistry {
    std::vector<DerivedFeature> entries;
};

/// The 17 ratio/proportion features d01..d17 built from the primary block.
const DerivedFeatureRegistry& default_derived_registry();

FeatureMatrix compute_derived_features(const FeatureMatrix& primary,
                                       const DerivedFeatureRegistry& registry =
                                           default_derived_registry());

/// Columns of `primary` followed by columns of `derived`.
FeatureMatrix concat_features(const FeatureMatrix& primary, const FeatureMatrix& derived);

/// Primary block plus derived block: i x 44 with the default registry.
FeatureMatrix expanded_features(std::span<const DataRow> rows);

/// Per (feature, target) relevance in [0, 1]: absolute Spearman correlation,
/// normalized so the best feature for each target scores 1.
struct RelevanceReport {
    std::vector<std::string> codes;
    Matrix scores; // codes.size() x kTargetCount
    /// For each target, feature indices from most to least relevant.
    std::vector<std::vector<std::size_t>> ranking;

    double mean_score(std::size_t feature) const;
};

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

RelevanceReport score_relevance(const FeatureMatrix& features, const TargetMatrix& targets);

/// `feature,infections,hospitalizations,recoveries,deaths`, scores in percent.
std::string relevance_csv(const RelevanceReport& report);

/// The thirteen-feature default space, most relevant first.
const std::vector<std::string>& default_feature_codes();

FeatureMatrix select_features(const FeatureMatrix& features, std::span<const std::string> codes);

/// The `top_n` columns with the highest mean score across targets; ties keep
/// column order.
FeatureMatrix select_features(const FeatureMatrix& features, const RelevanceReport& report,
                              std::size_t top_n);

std::vector<std::string> top_feature_codes(const RelevanceReport& report, std::size_t top_n);

} // namespace regio
