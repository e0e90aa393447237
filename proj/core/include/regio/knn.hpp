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

#include "regio/matrix.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace regio {

/// Neighbor count with inverse-distance weighting and Euclidean distance, the
/// only weighting/metric pair the regressor supports.
struct KnnConfig {
    static constexpr std::size_t kDefaultNeighbors = 6;

    std::size_t k = kDefaultNeighbors;

    friend bool operator==(const KnnConfig&, const KnnConfig&) = default;
};

/// Provenance of an instance: source region code (-1 when untagged) and the
/// multiplier applied to its inverse-distance weight.
struct SourceTag {
    int region = -1;
    double weight = 1.0;

    friend bool operator==(const SourceTag&, const SourceTag&) = default;
};

struct LabeledPoint {
    std::vector<double> features;
    std::vector<double> targets;
    SourceTag source;
};

/// Memorized training instances. Instances with weight 0 are kept (so
/// provenance survives) but never take part in a prediction.
class InstanceStore {
public:
    InstanceStore() = default;
    InstanceStore(std::size_t feature_dim, std::size_t target_dim);

    std::size_t size() const noexcept { return tags_.size(); }
    bool empty() const noexcept { return tags_.empty(); }
    std::size_t feature_dim() const noexcept { return feature_dim_; }
    std::size_t target_dim() const noexcept { return target_dim_; }

    std::span<const double> features(std::size_t i) const
    {
        return {features_.data() + i * feature_dim_, feature_dim_};
    }
    std::span<const double> targets(std::size_t i) const
    {
        return {targets_.data() + i * target_dim_, target_dim_};
    }
    const SourceTag& source(std::size_t i) const { return tags_[i]; }
    const std::vector<SourceTag>& sources() const noexcept { return tags_; }

    /// Throws DimensionMismatch or NegativeWeight.
    void append(std::span<const double> features, std::span<const double> targets, SourceTag tag);
    /// Appends every row of (features, targets) with the same tag.
    void append(const Matrix& features, const Matrix& targets, SourceTag tag);
    void append(const InstanceStore& other);

    /// Copy with every source weight multiplied by `factor`.
    InstanceStore reweighted(double factor) const;

    friend bool operator==(const InstanceStore&, const InstanceStore&) = default;

private:
    std::size_t feature_dim_ = 0;
    std::size_t target_dim_ = 0;
    std::vector<double> features_;
    std::vector<double> targets_;
    std::vector<SourceTag> tags_;
};

/// Per-target prediction in the store's (scaled) target space.
using Prediction = std::vector<double>;

/// Memorizes every row. Throws EmptyTrainingSet or DimensionMismatch.
InstanceStore fit_knn(std::span<const LabeledPoint> rows, const KnnConfig& cfg);
InstanceStore fit_knn(const Matrix& features, const Matrix& targets, const KnnConfig& cfg,
                      SourceTag tag = {});

/// Distance-weighted prediction over the min(k, active instances) nearest
/// neighbors. Distance ties are broken by insertion order. Exact matches
/// short-circuit to the weight-multiplier mean of the zero-distance neighbors.
Prediction predict_knn(const InstanceStore& store, std::span<const double> query,
                       const KnnConfig& cfg);

/// predict_knn applied to every row of `queries`.
Matrix predict_knn_batch(const InstanceStore& store, const Matrix& queries, const KnnConfig& cfg);

/// Reference implementation of the same contract: full distance table, exact
/// sqrt distances, stable sort. Used to check predict_knn.
Prediction knn_oracle(const InstanceStore& store, std::span<const double> query,
                      const KnnConfig& cfg);

void to_json(nlohmann::json& j, const KnnConfig& cfg);
void from_json(const nlohmann::json& j, KnnConfig& cfg);
void to_json(nlohmann::json& j, const InstanceStore& store);
void from_json(const nlohmann::json& j, InstanceStore& store);

} // namespace regio
