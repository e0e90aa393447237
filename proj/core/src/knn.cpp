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
#include "regio/knn.hpp"

#include "regio/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace regio {

InstanceStore::InstanceStore(std::size_t feature_dim, std::size_t target_dim)
    : feature_dim_(feature_dim)
    , target_dim_(target_dim)
{}

void InstanceStore::append(std::span<const double> features, std::span<const double> targets,
                           SourceTag tag)
{
    if (empty() && feature_dim_ == 0 && target_dim_ == 0) {
        feature_dim_ = features.size();
        target_dim_ = targets.size();
    }
    if (features.size() != feature_dim_ || targets.size() != target_dim_) {
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("instance has {} features / {} targets, store expects {} / {}",
                                features.size(), targets.size(), feature_dim_, target_dim_),
                    size());
    }
    if (!(tag.weight >= 0.0) || !std::isfinite(tag.weight)) {
        throw Error(ErrorCode::NegativeWeight, fmt::format("invalid source weight {}", tag.weight),
                    size());
    }
    features_.insert(features_.end(), features.begin(), features.end());
    targets_.insert(targets_.end(), targets.begin(), targets.end());
    tags_.push_back(tag);
}

void InstanceStore::append(const Matrix& features, const Matrix& targets, SourceTag tag)
{
    if (features.rows() != targets.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "feature and target row counts differ");
    }
    for (std::size_t i = 0; i < features.rows(); ++i) {
        append(features.row(i), targets.row(i), tag);
    }
}

void InstanceStore::append(const InstanceStore& other)
{
    for (std::size_t i = 0; i < other.size(); ++i) {
        append(other.features(i), other.targets(i), other.source(i));
    }
}

InstanceStore InstanceStore::reweighted(double factor) const
{
    if (!(factor >= 0.0) || !std::isfinite(factor)) {
        throw Error(ErrorCode::NegativeWeight, fmt::format("invalid weight multiplier {}", factor));
    }
    InstanceStore out = *this;
    for (auto& tag : out.tags_) {
        tag.weight *= factor;
    }
    return out;
}

namespace {

void check_config(const KnnConfig& cfg)
{
    if (cfg.k < 1) {
        throw Error(ErrorCode::BadConfig, "k must be at least 1");
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

void check_query(const InstanceStore& store, std::span<const double> query)
{
    if (query.size() != store.feature_dim()) {
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("query has {} features, store expects {}", query.size(),
                                store.feature_dim()));
    }
}

struct Neighbor {
    double distance;
    std::size_t index;
};

// Combines already-ordered neighbors under the weighting rule.
Prediction combine(const InstanceStore& store, std::span<const Neighbor> neighbors)
{
    Prediction out(store.target_dim(), 0.0);
    double total = 0.0;
    if (neighbors.front().distance == 0.0) {
        // Normalize before accumulating so a lone exact match returns its
        // target bit for bit (w / w == 1 exactly, w * y / w need not be y).
        std::size_t matches = 0;
        while (matches < neighbors.size() && neighbors[matches].distance == 0.0) {
            total += store.source(neighbors[matches].index).weight;
            ++matches;
        }
        for (std::size_t i = 0; i < matches; ++i) {
            const double w = store.source(neighbors[i].index).weight / total;
            const auto y = store.targets(neighbors[i].index);
            for (std::size_t t = 0; t < out.size(); ++t) {
                out[t] += w * y[t];
            }
        }
        return out;
    } else {
        for (const auto& n : neighbors) {
            const double w = store.source(n.index).weight / n.distance;
            const auto y = store.targets(n.index);
            for (std::size_t t = 0; t < out.size(); ++t) {
                out[t] += w * y[t];
            }
            total += w;
        }
    }
    for (double& v : out) {
        v /= total;
    }
    return out;
}

} // namespace

InstanceStore fit_knn(std::span<const LabeledPoint> rows, const KnnConfig& cfg)
{
    check_config(cfg);
    if (rows.empty()) {
        throw Error(ErrorCode::EmptyTrainingSet, "kNN needs at least one training row");
    }
    InstanceStore store(rows.front().features.size(), rows.front().targets.size());
    for (const auto& r : rows) {
        store.append(r.features, r.targets, r.source);
    }
    return store;
}

InstanceStore fit_knn(const Matrix& features, const Matrix& targets, const KnnConfig& cfg,
                      SourceTag tag)
{
    check_config(cfg);
    if (features.rows() == 0) {
        throw Error(ErrorCode::EmptyTrainingSet, "kNN needs at least one training row");
    }
    InstanceStore store(features.cols(), targets.cols());
    store.append(features, targets, tag);
    return store;
}

Prediction predict_knn(const InstanceStore& store, std::span<const double> query,
                       const KnnConfig& cfg)
{
    check_config(cfg);
    check_query(store, query);

    // Bounded max-heap on (squared distance, index): the top is the worst kept
    // neighbor, so lexicographic order also settles ties by insertion index.
    auto worse = [](const std::pair<double, std::size_t>& a,
                    const std::pair<double, std::size_t>& b) { return a < b; };
    std::priority_queue<std::pair<double, std::size_t>, std::vector<std::pair<double, std::size_t>>,
                        decltype(worse)>
        heap(worse);
    for (std::size_t i = 0; i < store.size(); ++i) {
        if (store.source(i).weight == 0.0) {
            continue;
        }
        const double d2 = squared_distance(store.features(i), query);
        if (heap.size() < cfg.k) {
            heap.emplace(d2, i);
        } else if (std::pair(d2, i) < heap.top()) {
            heap.pop();
            heap.emplace(d2, i);
        }
    }
    if (heap.empty()) {
        throw Error(ErrorCode::EmptyTrainingSet, "store has no instance with positive weight");
    }
    std::vector<Neighbor> neighbors(heap.size());
    for (std::size_t slot = heap.size(); slot-- > 0;) {
        neighbors[slot] = {std::sqrt(heap.top().first), heap.top().second};
        heap.pop();
    }
    return combine(store, neighbors);
}

Matrix predict_knn_batch(const InstanceStore& store, const Matrix& queries, const KnnConfig& cfg)
{
    Matrix out(queries.rows(), store.target_dim());
    for (std::size_t i = 0; i < queries.rows(); ++i) {
        const auto p = predict_knn(store, queries.row(i), cfg);
        std::copy(p.begin(), p.end(), out.row(i).begin());
    }
    return out;
}

Prediction knn_oracle(const InstanceStore& store, std::span<const double> query,
                      const KnnConfig& cfg)
{
    check_config(cfg);
    check_query(store, query);
    std::vector<Neighbor> all;
    for (std::size_t i = 0; i < store.size(); ++i) {
        if (store.source(i).weight > 0.0) {
            all.push_back({std::sqrt(squared_distance(store.features(i), query)), i});
        }
    }
    if (all.empty()) {
        throw Error(ErrorCode::EmptyTrainingSet, "store has no instance with positive weight");
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.distance < b.distance; });
    all.resize(std::min(cfg.k, all.size()));
    return combine(store, all);
}

void to_json(nlohmann::json& j, const KnnConfig& cfg)
{
    j = nlohmann::json{{"n_neighbors", cfg.k}, {"weights", "distance"}, {"metric", "euclidean"}};
}

void from_json(const nlohmann::json& j, KnnConfig& cfg)
{
    j.at("n_neighbors").get_to(cfg.k);
    if (j.value("weights", "distance") != "distance" ||
        j.value("metric", "euclidean") != "euclidean") {
        throw Error(ErrorCode::BadValue, "only distance weighting with euclidean metric is supported");
    }
    check_config(cfg);
}

void to_json(nlohmann::json& j, const InstanceStore& store)
{
    auto features = nlohmann::json::array();
    auto targets = nlohmann::json::array();
    auto regions = nlohmann::json::array();
    auto weights = nlohmann::json::array();
    for (std::size_t i = 0; i < store.size(); ++i) {
        const auto f = store.features(i);
        const auto t = store.targets(i);
        features.push_back(std::vector<double>(f.begin(), f.end()));
        targets.push_back(std::vector<double>(t.begin(), t.end()));
        regions.push_back(store.source(i).region);
        weights.push_back(store.source(i).weight);
    }
    j = nlohmann::json{{"feature_dim", store.feature_dim()},
                       {"target_dim", store.target_dim()},
                       {"features", std::move(features)},
                       {"targets", std::move(targets)},
                       {"region", std::move(regions)},
                       {"weight", std::move(weights)}};
}

void from_json(const nlohmann::json& j, InstanceStore& store)
{
    store = InstanceStore(j.at("feature_dim").get<std::size_t>(),
                          j.at("target_dim").get<std::size_t>());
    const auto& features = j.at("features");
    const auto& targets = j.at("targets");
    const auto& regions = j.at("region");
    const auto& weights = j.at("weight");
    if (targets.size() != features.size() || regions.size() != features.size() ||
        weights.size() != features.size()) {
        throw Error(ErrorCode::BadValue, "instance store arrays differ in length");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        store.append(features[i].get<std::vector<double>>(), targets[i].get<std::vector<double>>(),
                     SourceTag{regions[i].get<int>(), weights[i].get<double>()});
    }
}

} // namespace regio
