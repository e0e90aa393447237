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
#include "regio/dataset.hpp"

#include "regio/csv.hpp"
#include "regio/error.hpp"
#include "regio/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

namespace regio {

namespace {

struct CategoricalRange {
    std::size_t code; // one-based feature code
    int lo;
    int hi;
};

// Enumerated encodings of the categorical primary features.
constexpr std::array<CategoricalRange, 7> kCategoricals = {{
    {2, 1, 4},  // climate season
    {4, 0, 9},  // region
    {5, 1, 2},  // pandemic wave
    {7, 1, 3},  // lockdown stage
    {8, 0, 2},  // travel restriction
    {9, 0, 1},  // face covering
    {10, 0, 1}, // holiday
}};

std::string feature_code(std::size_t one_based)
{
    return fmt::format("feat_{:02}", one_based);
}

std::optional<double> parse_real(std::string_view cell)
{
    while (!cell.empty() && cell.front() == ' ') {
        cell.remove_prefix(1);
    }
    while (!cell.empty() && cell.back() == ' ') {
        cell.remove_suffix(1);
    }
    if (cell.empty()) {
        return std::nullopt;
    }
    if (cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw std::invalid_argument("not a number");
    }
    return value;
}

struct RawRow {
    Date date;
    std::array<std::optional<double>, kPrimaryFeatureCount> features;
    std::array<std::int64_t, kTargetCount> targets{};
};

} // namespace

const std::array<std::string, kPrimaryFeatureCount>& primary_feature_codes()
{
    static const auto codes = [] {
        std::array<std::string, kPrimaryFeatureCount> out;
        for (std::size_t i = 0; i < kPrimaryFeatureCount; ++i) {
            out[i] = feature_code(i + 1);
        }
        return out;
    }();
    return codes;
}

std::size_t primary_feature_index(std::string_view code)
{
    const auto& codes = primary_feature_codes();
    auto it = std::find(codes.begin(), codes.end(), code);
    if (it == codes.end()) {
        throw Error(ErrorCode::UnknownFeatureCode, "not a primary feature code", std::nullopt,
                    std::string(code));
    }
    return static_cast<std::size_t>(it - codes.begin());
}

Date parse_date(std::string_view text)
{
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto bad = [&] {
        return Error(ErrorCode::BadValue, "expected YYYY-MM-DD date, got '" + std::string(text) + "'",
                     std::nullopt, "date");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw bad();
    }
    auto digits = [&](std::size_t pos, std::size_t len, auto& out) {
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
        if (ec != std::errc() || ptr != text.data() + pos + len) {
            throw bad();
        }
    };
    digits(0, 4, y);
    digits(5, 2, m);
    digits(8, 2, d);
    Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) {
        throw bad();
    }
    return date;
}

std::string format_date(Date date)
{
    return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(date.year()),
                       static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

std::vector<std::string> regional_csv_header()
{
    std::vector<std::string> header{"date"};
    const auto& codes = primary_feature_codes();
    header.insert(header.end(), codes.begin(), codes.end());
    for (auto name : kTargetNames) {
        header.emplace_back(name);
    }
    return header;
}

RegionalDataset parse_regional_csv(const std::filesystem::path& path, RegionId region)
{
    if (!std::filesystem::exists(path)) {
        throw Error(ErrorCode::Io, "no such file '" + path.string() + "'");
    }
    return parse_regional_csv_text(csv::read_file(path), region);
}

RegionalDataset parse_regional_csv_text(std::string_view text, RegionId region)
{
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }

    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start < text.size();) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
        start = end + 1;
    }
    if (lines.size() < 2) {
        throw Error(ErrorCode::EmptyFile, "regional file has no data rows");
    }

    // Map schema columns to their positions in this file.
    const auto header_cells = csv::split_line(lines.front());
    const auto schema = regional_csv_header();
    std::vector<std::size_t> position(schema.size());
    for (std::size_t s = 0; s < schema.size(); ++s) {
        auto it = std::find(header_cells.begin(), header_cells.end(), schema[s]);
        if (it == header_cells.end()) {
            throw Error(ErrorCode::MissingColumn, "header lacks required column", std::nullopt,
                        schema[s]);
        }
        position[s] = static_cast<std::size_t>(it - header_cells.begin());
    }
    for (auto cell : header_cells) {
        if (std::find(schema.begin(), schema.end(), cell) == schema.end()) {
            throw Error(ErrorCode::BadValue, "unexpected column in header", std::nullopt,
                        std::string(cell));
        }
    }

    std::vector<RawRow> raw;
    raw.reserve(lines.size() - 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t row = li - 1;
        const auto cells = csv::split_line(lines[li]);
        if (cells.size() != header_cells.size()) {
            throw Error(ErrorCode::BadValue,
                        fmt::format("expected {} cells, found {}", header_cells.size(), cells.size()),
                        row);
        }
        RawRow r;
        try {
            r.date = parse_date(cells[position[0]]);
        } catch (const Error& e) {
            throw Error(ErrorCode::BadValue, e.what(), row, "date");
        }
        for (std::size_t f = 0; f < kPrimaryFeatureCount; ++f) {
            const std::string& code = schema[1 + f];
            try {
                r.features[f] = parse_real(cells[position[1 + f]]);
            } catch (const std::invalid_argument&) {
                throw Error(ErrorCode::BadValue, "unparseable number", row, code);
            }
            if (r.features[f] && !std::isfinite(*r.features[f])) {
                throw Error(ErrorCode::BadValue, "non-finite value", row, code);
            }
        }
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            const std::string& name = schema[1 + kPrimaryFeatureCount + t];
            std::optional<double> value;
            try {
                value = parse_real(cells[position[1 + kPrimaryFeatureCount + t]]);
            } catch (const std::invalid_argument&) {
                throw Error(ErrorCode::BadValue, "unparseable count", row, name);
            }
            if (!value || *value != std::floor(*value) || *value < 0.0 || *value > 9.0e15) {
                throw Error(ErrorCode::BadValue, "target must be a non-negative integer", row, name);
            }
            r.targets[t] = static_cast<std::int64_t>(*value);
        }
        raw.push_back(std::move(r));
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const RawRow& a, const RawRow& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (raw[i].date == raw[i - 1].date) {
            throw Error(ErrorCode::DuplicateDate, "date " + format_date(raw[i].date) + " repeats", i,
                        "date");
        }
    }

    RegionalDataset ds{region, {}};
    ds.rows.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        DataRow row{raw[i].date, {}, raw[i].targets};
        for (std::size_t f = 0; f < kPrimaryFeatureCount; ++f) {
            if (raw[i].features[f]) {
                row.features[f] = *raw[i].features[f];
            } else if (i == 0) {
                throw Error(ErrorCode::BadValue, "first day has an empty cell; cannot forward-fill",
                            0, primary_feature_codes()[f]);
            } else {
                row.features[f] = ds.rows.back().features[f];
            }
        }
        ds.rows.push_back(row);
    }

    const auto report = validate_dataset(ds);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw Error(ErrorCode::BadValue, v.message, v.row, v.field);
    }
    return ds;
}

std::string to_regional_csv(const RegionalDataset& ds)
{
    std::string out;
    const auto header = regional_csv_header();
    for (std::size_t i = 0; i < header.size(); ++i) {
        out += i ? "," : "";
        out += header[i];
    }
    out += '\n';
    for (const auto& row : ds.rows) {
        out += format_date(row.date);
        for (double v : row.features) {
            out += ',';
            out += csv::format_real(v);
        }
        for (auto t : row.targets) {
            out += ',';
            out += std::to_string(t);
        }
        out += '\n';
    }
    return out;
}

void write_regional_csv(const RegionalDataset& ds, const std::filesystem::path& path)
{
    csv::write_file_atomic(path, to_regional_csv(ds));
}

ValidationReport validate_dataset(const RegionalDataset& ds)
{
    ValidationReport report;
    auto add = [&](std::size_t row, std::string field, ViolationKind kind, std::string message) {
        report.violations.push_back({row, std::move(field), kind, std::move(message)});
    };
    const auto& codes = primary_feature_codes();
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        const DataRow& row = ds.rows[i];
        if (i > 0) {
            const Date prev = ds.rows[i - 1].date;
            if (row.date == prev) {
                add(i, "date", ViolationKind::DuplicateDate,
                    "date " + format_date(row.date) + " repeats");
            } else if (row.date < prev) {
                add(i, "date", ViolationKind::DateOrder, "dates are not increasing");
            }
        }
        for (std::size_t f = 0; f < kPrimaryFeatureCount; ++f) {
            if (!std::isfinite(row.features[f])) {
                add(i, codes[f], ViolationKind::NonFinite, "non-finite feature value");
            }
        }
        for (const auto& cat : kCategoricals) {
            const double v = row.feature(cat.code);
            if (std::isfinite(v) && (v != std::floor(v) || v < cat.lo || v > cat.hi)) {
                add(i, codes[cat.code - 1], ViolationKind::OutOfRange,
                    fmt::format("value {} outside {{{}..{}}}", v, cat.lo, cat.hi));
            }
        }
        if (std::isfinite(row.feature(4)) && row.feature(4) == std::floor(row.feature(4)) &&
            static_cast<int>(row.feature(4)) != ds.region.code() && row.feature(4) >= 0 &&
            row.feature(4) <= 9) {
            add(i, "feat_04", ViolationKind::RegionMismatch,
                fmt::format("region code {} does not match dataset region {}", row.feature(4),
                            ds.region.code()));
        }
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            if (row.targets[t] < 0) {
                add(i, std::string(kTargetNames[t]), ViolationKind::NegativeTarget,
                    "negative count");
            }
        }
    }
    return report;
}

TrainTestSplit split_train_test(std::size_t row_count, std::size_t test_size, std::uint64_t seed)
{
    if (test_size == 0 || test_size >= row_count) {
        throw Error(ErrorCode::BadTestSize,
                    fmt::format("test size {} must be in 1..{}", test_size,
                                row_count == 0 ? 0 : row_count - 1));
    }
    std::vector<std::size_t> order(row_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    // Partial Fisher-Yates: the first test_size slots become the sample.
    for (std::size_t i = 0; i < test_size; ++i) {
        const std::size_t j = i + rng.uniform_index(row_count - i);
        std::swap(order[i], order[j]);
    }
    TrainTestSplit split;
    split.seed = seed;
    split.test_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_size));
    split.train_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(test_size), order.end());
    std::sort(split.test_indices.begin(), split.test_indices.end());
    std::sort(split.train_indices.begin(), split.train_indices.end());
    return split;
}

TrainTestSplit split_train_test(const RegionalDataset& ds, std::size_t test_size,
                                std::uint64_t seed)
{
    return split_train_test(ds.size(), test_size, seed);
}

std::vector<DataRow> select_rows(std::span<const DataRow> rows,
                                 std::span<const std::size_t> indices)
{
    std::vector<DataRow> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        out.push_back(rows[i]);
    }
    return out;
}

std::vector<PooledRow> pool_regions(std::span<const RegionalDataset> datasets, RegionId exclude)
{
    std::vector<PooledRow> pool;
    for (const auto& ds : datasets) {
        if (ds.region == exclude) {
            continue;
        }
        for (const auto& row : ds.rows) {
            pool.push_back({ds.region, row});
        }
    }
    if (pool.empty()) {
        throw Error(ErrorCode::EmptyPool, "no rows remain after excluding " +
                                              std::string(exclude.name()));
    }
    return pool;
}

} // namespace regio
