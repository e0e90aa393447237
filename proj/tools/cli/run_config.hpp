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

#include <regio/mtl.hpp>
#include <regio/ppe.hpp>
#include <regio/rotation.hpp>
#include <regio/synth.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace regio::cli {

/// Settings shared by every subcommand. Precedence: flag > config file > default.
struct RunConfig {
    std::filesystem::path data_dir = "data";
    std::string case_study = "ontario";
    std::size_t k = KnnConfig::kDefaultNeighbors;
    double generic_weight = 1.0;
    std::size_t test_days = kDefaultTestDays;
    std::uint64_t seed = 1;
    std::size_t bootstrap = BootstrapConfig::kDefaultReplicates;
    std::string selection = "fixed"; // or "ranked"
    std::size_t top_n = 13;
    std::size_t max_train_days = 0;
    // Wall-clock training times in reports; off keeps every output byte-identical.
    bool timing = false;
    std::filesystem::path out = "out";

    // predict / ppe
    std::filesystem::path model;
    std::filesystem::path input;
    std::filesystem::path schedule;
    double operating_capacity = 0.75;
    std::int64_t personnel = 200;

    // synth
    std::size_t regions = 7;
    std::size_t rows = 362;
    double noise = 0.05;
};

/// Overlays keys present in `j` onto `cfg`. Unknown keys raise BadConfig.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// Range checks shared by all commands. Throws BadConfig / InvalidCapacity.
void validate(const RunConfig& cfg);

MtlConfig to_mtl_config(const RunConfig& cfg);
RotationConfig to_rotation_config(const RunConfig& cfg);
SyntheticSpec to_synthetic_spec(const RunConfig& cfg);
PpeSchedule to_ppe_schedule(const RunConfig& cfg);

} // namespace regio::cli
