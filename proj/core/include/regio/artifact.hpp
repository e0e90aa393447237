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

#include "regio/mtl.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace regio {

/// Single JSON document holding everything predict_monitoring needs. Timings
/// are excluded so that retraining on identical inputs reproduces the file
/// byte for byte.
nlohmann::json model_to_json(const MtlModel& model);

/// Throws VersionMismatch when the `version` tag is not MtlModel::kArtifactVersion.
MtlModel model_from_json(const nlohmann::json& j);

void save_model(const MtlModel& model, const std::filesystem::path& path);
MtlModel load_model(const std::filesystem::path& path);

nlohmann::json train_report_to_json(const TrainReport& report);

} // namespace regio
