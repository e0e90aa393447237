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

#include "cli/run_config.hpp"

#include <regio/dataset.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace regio::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitInternal = 4;

/// Every `<region-slug>.csv` in `dir`, ordered by region code. Other files are
/// ignored. Throws Io when the directory is missing.
std::vector<RegionalDataset> load_datasets(const std::filesystem::path& dir);

/// Path of a region's file inside a data directory.
std::filesystem::path region_file(const std::filesystem::path& dir, RegionId region);

// Each command throws regio::Error on failure; run() maps errors to exit codes.
void cmd_synth(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg);
void cmd_evaluate(const RunConfig& cfg);
void cmd_rotate(const RunConfig& cfg);
void cmd_predict(const RunConfig& cfg);
void cmd_ppe(const RunConfig& cfg);
void cmd_relevance(const RunConfig& cfg);

/// Parses arguments (args[0] is the program name), dispatches, and returns the
/// process exit code. Error messages go to standard error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

} // namespace regio::cli
