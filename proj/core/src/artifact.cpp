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
#include "regio/artifact.hpp"

#include "regio/csv.hpp"
#include "regio/error.hpp"

namespace regio {

nlohmann::json model_to_json(const MtlModel& model)
{
    return nlohmann::json{
        {"version", MtlModel::kArtifactVersion},
        {"config", model.knn},
        {"selected_features", model.selected_features},
        {"scalers", {{"features", model.feature_scaler}, {"targets", model.target_scaler}}},
        {"generic_store", model.generic_store},
        {"dedicated_store", model.dedicated_store},
        {"case_study", {{"code", model.case_study.code()}, {"name", model.case_study.name()}}},
        {"generic_weight", model.generic_weight},
    };
}

MtlModel model_from_json(const nlohmann::json& j)
{
    const auto version = j.value("version", std::string{});
    if (version != MtlModel::kArtifactVersion) {
        throw Error(ErrorCode::VersionMismatch,
                    "artifact version '" + version + "' is not '" +
                        std::string(MtlModel::kArtifactVersion) + "'");
    }
    try {
        MtlModel model;
        j.at("config").get_to(model.knn);
        j.at("selected_features").get_to(model.selected_features);
        j.at("scalers").at("features").get_to(model.feature_scaler);
        j.at("scalers").at("targets").get_to(model.target_scaler);
        j.at("generic_store").get_to(model.generic_store);
        j.at("dedicated_store").get_to(model.dedicated_store);
        model.case_study = RegionId::from_code(j.at("case_study").at("code").get<int>());
        j.at("generic_weight").get_to(model.generic_weight);
        if (model.feature_scaler.codes != model.selected_features ||
            model.dedicated_store.feature_dim() != model.selected_features.size()) {
            throw Error(ErrorCode::BadValue, "artifact feature space is inconsistent");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadValue, std::string("malformed model artifact: ") + e.what());
    }
}

void save_model(const MtlModel& model, const std::filesystem::path& path)
{
    csv::write_file_atomic(path, model_to_json(model).dump() + "\n");
}

MtlModel load_model(const std::filesystem::path& path)
{
    const auto text = csv::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::BadValue, "model artifact is not valid JSON: " + std::string(e.what()));
    }
    return model_from_json(j);
}

nlohmann::json train_report_to_json(const TrainReport& report)
{
    return nlohmann::json{
        {"generic_seconds", report.generic_seconds},
        {"dedicated_seconds", report.dedicated_seconds},
        {"total_seconds", report.total_seconds()},
        {"generic_instances", report.generic_instances},
        {"case_instances", report.case_instances},
        {"dedicated_instances", report.dedicated_instances},
        {"zero_feature_rows", report.zero_feature_rows},
        {"pool_regions", report.pool_regions},
        {"n_quantiles", report.n_quantiles},
        {"target_range", report.target_range},
    };
}

} // namespace regio
