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

#include "regio/region.hpp"

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace regio {

inline constexpr std::size_t kPrimaryFeatureCount = 27;
inline constexpr std::size_t kTargetCount = 4;
inline constexpr std::size_t kDefaultTestDays = 54;

using Date = std::chrono::year_month_day;

/// Column order of the target block: infections, hospitalizations,
/// recoveries, deaths.
enum class Target : std::size_t { Infections = 0, Hospitalizations = 1, Recoveries = 2, Deaths = 3 };

inline constexpr std::array<std::string_view, kTargetCount> kTargetNames = {
    "infections", "hospitalizations", "recoveries", "deaths"};

/// "feat_01" .. "feat_27".
const std::array<std::string, kPrimaryFeatureCount>& primary_feature_codes();

/// Position of a primary feature code, e.g. "feat_11" -> 10. Throws
/// UnknownFeatureCode for anything else.
std::size_t primary_feature_index(std::string_view code);

Date parse_date(std::string_view text);
std::string format_date(Date date);

struct DataRow {
    Date date;
    std::array<double, kPrimaryFeatureCount> features{};
    std::array<std::int64_t, kTargetCount> targets{};

    double feature(std::size_t one_based_code) const { return features[one_based_code - 1]; }

    friend bool operator==(const DataRow&, const DataRow&) = default;
};

/// One region's daily records, sorted by date.
struct RegionalDataset {
    RegionId region;
    std::vector<DataRow> rows;

    std::size_t size() const noexcept { return rows.size(); }

    friend bool operator==(const RegionalDataset&, const RegionalDataset&) = default;
};

enum class ViolationKind { DuplicateDate, DateOrder, NegativeTarget, OutOfRange, NonFinite, RegionMismatch };

struct Violation {
    std::size_t row;
    std::string field;
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Header of the regional CSV format.
std::vector<std::string> regional_csv_header();

/// Reads one regional file. Empty feature cells are forward-filled from the
/// previous day; an empty cell on the first day is rejected.
RegionalDataset parse_regional_csv(const std::filesystem::path& path, RegionId region);
RegionalDataset parse_regional_csv_text(std::string_view text, RegionId region);

std::string to_regional_csv(const RegionalDataset& ds);
void write_regional_csv(const RegionalDataset& ds, const std::filesystem::path& path);

ValidationReport validate_dataset(const RegionalDataset& ds);

struct TrainTestSplit {
    std::vector<std::size_t> train_indices; // ascending
    std::vector<std::size_t> test_indices;  // ascending
    std::uint64_t seed = 0;
};

/// Uniform sample of `test_size` rows without replacement; the rest train.
TrainTestSplit split_train_test(std::size_t row_count, std::size_t test_size, std::uint64_t seed);
TrainTestSplit split_train_test(const RegionalDataset& ds, std::size_t test_size,
                                std::uint64_t seed);

std::vector<DataRow> select_rows(std::span<const DataRow> rows,
                                 std::span<const std::size_t> indices);

struct PooledRow {
    RegionId region;
    DataRow row;
};

/// Concatenates every dataset except the excluded region's, keeping provenance.
std::vector<PooledRow> pool_regions(std::span<const RegionalDataset> datasets, RegionId exclude);

} // namespace regio
