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
#include "cli/run_config.hpp"

#include <regio/csv.hpp>
#include <regio/error.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace regio::cli {

namespace {

template <typename T>
void take(const nlohmann::json& j, const char* key, T& field)
{
    if (auto it = j.find(key); it != j.end()) {
        field = it->get<T>();
    }
}

void take_path(const nlohmann::json& j, const char* key, std::filesystem::path& field)
{
    if (auto it = j.find(key); it != j.end()) {
        field = it->get<std::string>();
    }
}

} // namespace

void apply_json(RunConfig& cfg, const nlohmann::json& j)
{
    static const std::vector<std::string> known = {
        "data_dir", "case_study", "k",         "generic_weight", "test_days",   "seed",
        "bootstrap", "selection", "top_n",     "max_train_days", "timing", "out",
        "model",    "input",      "schedule",  "operating_capacity", "personnel", "regions",
        "rows",     "noise"};
    if (!j.is_object()) {
        throw Error(ErrorCode::BadConfig, "config file must hold a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(ErrorCode::BadConfig, "unknown config key '" + key + "'");
        }
    }
    try {
        take_path(j, "data_dir", cfg.data_dir);
        take(j, "case_study", cfg.case_study);
        take(j, "k", cfg.k);
        take(j, "generic_weight", cfg.generic_weight);
        take(j, "test_days", cfg.test_days);
        take(j, "seed", cfg.seed);
        take(j, "bootstrap", cfg.bootstrap);
        take(j, "selection", cfg.selection);
        take(j, "top_n", cfg.top_n);
        take(j, "max_train_days", cfg.max_train_days);
        take(j, "timing", cfg.timing);
        take_path(j, "out", cfg.out);
        take_path(j, "model", cfg.model);
        take_path(j, "input", cfg.input);
        take_path(j, "schedule", cfg.schedule);
        take(j, "operating_capacity", cfg.operating_capacity);
        take(j, "personnel", cfg.personnel);
        take(j, "regions", cfg.regions);
        take(j, "rows", cfg.rows);
        take(j, "noise", cfg.noise);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("config value has the wrong type: ") + e.what());
    }
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base)
{
    std::string text;
    try {
        text = csv::read_file(path);
    } catch (const Error& e) {
        throw Error(ErrorCode::BadConfig, e.what());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::BadConfig, "config file is not valid JSON: " + std::string(e.what()));
    }
    apply_json(base, j);
    return base;
}

void validate(const RunConfig& cfg)
{
    auto bad = [](const std::string& msg) { return Error(ErrorCode::BadConfig, msg); };
    if (cfg.k < 1) {
        throw bad("k must be at least 1");
    }
    if (!(cfg.generic_weight >= 0.0)) {
        throw bad(fmt::format("generic weight must be >= 0, got {}", cfg.generic_weight));
    }
    if (cfg.test_days < 1) {
        throw bad("test days must be at least 1");
    }
    if (cfg.bootstrap < 1) {
        throw bad("bootstrap replicates must be at least 1");
    }
    if (cfg.selection != "fixed" && cfg.selection != "ranked") {
        throw bad("selection must be 'fixed' or 'ranked', got '" + cfg.selection + "'");
    }
    if (cfg.top_n < 1) {
        throw bad("top_n must be at least 1");
    }
    if (!(cfg.operating_capacity >= 0.0 && cfg.operating_capacity <= 1.0)) {
        throw Error(ErrorCode::InvalidCapacity,
                    fmt::format("operating capacity {} outside [0, 1]", cfg.operating_capacity));
    }
    if (cfg.personnel < 0) {
        throw bad("personnel must be >= 0");
    }
    try {
        RegionId::from_name(cfg.case_study);
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

MtlConfig to_mtl_config(const RunConfig& cfg)
{
    MtlConfig m;
    m.knn.k = cfg.k;
    m.generic_weight = cfg.generic_weight;
    m.selection = cfg.selection == "ranked" ? FeatureSelection::ranked(cfg.top_n)
                                            : FeatureSelection::fixed();
    return m;
}

RotationConfig to_rotation_config(const RunConfig& cfg)
{
    RotationConfig r;
    r.mtl = to_mtl_config(cfg);
    r.test_size = cfg.test_days;
    r.seed = cfg.seed;
    r.bootstrap_replicates = cfg.bootstrap;
    r.max_train_days = cfg.max_train_days;
    r.record_timing = cfg.timing;
    return r;
}

SyntheticSpec to_synthetic_spec(const RunConfig& cfg)
{
    return {cfg.regions, cfg.rows, cfg.noise, cfg.seed};
}

PpeSchedule to_ppe_schedule(const RunConfig& cfg)
{
    PpeSchedule s;
    s.default_capacity = cfg.operating_capacity;
    s.default_personnel = cfg.personnel;
    return s;
}

} // namespace regio::cli
