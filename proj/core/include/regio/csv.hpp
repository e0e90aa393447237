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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace regio::csv {

/// Splits one unquoted comma-separated line. A trailing '\r' is dropped.
std::vector<std::string_view> split_line(std::string_view line);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

/// Fixed-point text with `digits` decimals, used in human-facing reports.
std::string format_fixed(double value, int digits);

std::string read_file(const std::filesystem::path& path);

/// Writes to `<path>.tmp` and renames over `path`, so readers never observe a
/// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace regio::csv
