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
#include "oracles.hpp"

#include <regio/dataset.hpp>
#include <regio/error.hpp>
#include <regio/random.hpp>
#include <regio/synth.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

namespace regio {
namespace {

std::string header()
{
    std::string h;
    for (const auto& c : regional_csv_header()) {
        h += (h.empty() ? "" : ",") + c;
    }
    return h;
}

RegionalDataset small(int region = 6, std::size_t rows = 20, std::uint64_t seed = 1)
{
    auto all = generate_synthetic({10, std::max<std::size_t>(rows, 10), 0.05, seed});
    for (auto& ds : all) {
        if (ds.region.code() == region) {
            ds.rows.resize(rows);
            return ds;
        }
    }
    throw std::logic_error("region not generated");
}

// Replaces one cell of a CSV text (data_row is 0-based, excluding header).
std::string with_cell(const std::string& text, std::size_t data_row, const std::string& column,
                      const std::string& value)
{
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    const auto cols = regional_csv_header();
    const auto col = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), column) - cols.begin());
    auto& line = lines[data_row + 1];
    std::vector<std::string> cells;
    std::size_t s = 0;
    while (true) {
        auto e = line.find(',', s);
        cells.push_back(line.substr(s, e == std::string::npos ? std::string::npos : e - s));
        if (e == std::string::npos) {
            break;
        }
        s = e + 1;
    }
    cells[col] = value;
    line.clear();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        line += (i ? "," : "") + cells[i];
    }
    std::string out;
    for (const auto& l : lines) {
        out += l + "\n";
    }
    return out;
}

TEST(RegionId, CodesAndNames)
{
    EXPECT_EQ(RegionId::from_code(6).name(), "Ontario");
    EXPECT_EQ(RegionId::from_name("british columbia").code(), 1);
    EXPECT_EQ(RegionId::from_name("British_Columbia").slug(), "british_columbia");
    EXPECT_EQ(RegionId::from_name("NEW-BRUNSWICK").code(), 3);
    EXPECT_THROW(RegionId::from_code(10), Error);
    EXPECT_THROW(RegionId::from_code(-1), Error);
    EXPECT_THROW(RegionId::from_name("atlantis"), Error);
    const auto ref = reference_provinces();
    EXPECT_EQ(ref.size(), 7u);
    EXPECT_EQ(ref[4].name(), "Ontario");
}

TEST(Dates, RoundTripAndRejects)
{
    EXPECT_EQ(format_date(parse_date("2020-03-01")), "2020-03-01");
    EXPECT_THROW(parse_date("2020-02-30"), Error);
    EXPECT_THROW(parse_date("03/01/2020"), Error);
}

TEST(ParseRegionalCsv, WellFormedFileHas362SortedRows)
{
    testing::TempDir dir("ingest");
    const auto ds = generate_synthetic({1, 362, 0.05, 4}).front();
    write_regional_csv(ds, dir / "alberta.csv");
    const auto back = parse_regional_csv(dir / "alberta.csv", ds.region);
    ASSERT_EQ(back.size(), 362u);
    for (std::size_t i = 1; i < back.size(); ++i) {
        EXPECT_LT(back.rows[i - 1].date, back.rows[i].date);
    }
    EXPECT_EQ(back, ds);
}

TEST(ParseRegionalCsv, MissingColumnNamesField)
{
    const auto ds = small();
    auto text = to_regional_csv(ds);
    const auto pos = text.find(",feat_05");
    text.erase(pos, std::string(",feat_05").size());
    try {
        parse_regional_csv_text(text, ds.region);
        FAIL() << "expected MissingColumn";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingColumn);
        EXPECT_EQ(e.field(), "feat_05");
    }
}

TEST(ParseRegionalCsv, OutOfRangeCategoricalNamesRowAndField)
{
    const auto ds = small();
    const auto text = with_cell(to_regional_csv(ds), 3, "feat_02", "7");
    try {
        parse_regional_csv_text(text, ds.region);
        FAIL() << "expected BadValue";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadValue);
        EXPECT_EQ(e.field(), "feat_02");
        ASSERT_TRUE(e.row().has_value());
        EXPECT_EQ(*e.row(), 3u);
    }
}

TEST(ParseRegionalCsv, DuplicateDateRejected)
{
    const auto ds = small();
    const auto text = with_cell(to_regional_csv(ds), 5, "date", format_date(ds.rows[4].date));
    try {
        parse_regional_csv_text(text, ds.region);
        FAIL() << "expected DuplicateDate";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateDate);
    }
}

TEST(ParseRegionalCsv, EmptyInputs)
{
    const auto region = RegionId::from_code(0);
    for (const std::string text : {std::string{}, header() + "\n"}) {
        try {
            parse_regional_csv_text(text, region);
            FAIL() << "expected EmptyFile";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::EmptyFile);
        }
    }
}

TEST(ParseRegionalCsv, MissingFileIsIo)
{
    try {
        parse_regional_csv("/nonexistent/dir/ontario.csv", RegionId::from_code(6));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Io);
        EXPECT_NE(std::string(e.what()).find("ontario.csv"), std::string::npos);
    }
}

TEST(ParseRegionalCsv, ForwardFillsEmptyFeatureCells)
{
    const auto ds = small();
    const auto text = with_cell(to_regional_csv(ds), 4, "feat_12", "");
    const auto back = parse_regional_csv_text(text, ds.region);
    EXPECT_EQ(back.rows[4].feature(12), ds.rows[3].feature(12));
    EXPECT_EQ(back.rows[5].feature(12), ds.rows[5].feature(12));

    const auto first = with_cell(to_regional_csv(ds), 0, "feat_12", "");
    EXPECT_THROW(parse_regional_csv_text(first, ds.region), Error);
}

TEST(ParseRegionalCsv, SortsRowsByDate)
{
    auto ds = small();
    auto shuffled = ds;
    std::reverse(shuffled.rows.begin(), shuffled.rows.end());
    // to_regional_csv writes rows as given; the parser restores date order.
    EXPECT_EQ(parse_regional_csv_text(to_regional_csv(shuffled), ds.region), ds);
}

TEST(ParseRegionalCsv, RejectsNegativeOrFractionalTargets)
{
    const auto ds = small();
    EXPECT_THROW(parse_regional_csv_text(with_cell(to_regional_csv(ds), 2, "deaths", "-1"), ds.region),
                 Error);
    EXPECT_THROW(parse_regional_csv_text(with_cell(to_regional_csv(ds), 2, "deaths", "1.5"), ds.region),
                 Error);
    EXPECT_THROW(parse_regional_csv_text(with_cell(to_regional_csv(ds), 2, "feat_13", "abc"), ds.region),
                 Error);
}

TEST(ParseRegionalCsv, RegionCodeMustMatchFile)
{
    const auto ds = small(6);
    EXPECT_THROW(parse_regional_csv_text(to_regional_csv(ds), RegionId::from_code(0)), Error);
}

TEST(ParseRegionalCsv, RoundTripProperty)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto ds = generate_synthetic({3, 30 + seed * 7, 0.1 * static_cast<double>(seed), seed})[seed % 3];
        Rng rng(seed);
        for (auto& row : ds.rows) {
            row.features[0] = rng.uniform(0.0, 3.0) / 7.0;  // awkward binary fractions
            row.features[12] = rng.normal() * 1e-9;
        }
        EXPECT_EQ(parse_regional_csv_text(to_regional_csv(ds), ds.region), ds) << "seed " << seed;
    }
}

TEST(ValidateDataset, CleanAndFaulty)
{
    auto ds = small();
    EXPECT_TRUE(validate_dataset(ds).ok());

    auto neg = ds;
    neg.rows[7].targets[static_cast<std::size_t>(Target::Deaths)] = -1;
    const auto rep = validate_dataset(neg);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].row, 7u);
    EXPECT_EQ(rep.violations[0].field, "deaths");
    EXPECT_EQ(rep.violations[0].kind, ViolationKind::NegativeTarget);

    auto dup = ds;
    dup.rows[3].date = dup.rows[2].date;
    const auto drep = validate_dataset(dup);
    ASSERT_FALSE(drep.ok());
    EXPECT_TRUE(std::any_of(drep.violations.begin(), drep.violations.end(),
                            [](const Violation& v) { return v.kind == ViolationKind::DuplicateDate; }));
}

TEST(SplitTrainTest, PartitionsRows)
{
    const auto s = split_train_test(362, 54, 1);
    EXPECT_EQ(s.train_indices.size(), 308u);
    EXPECT_EQ(s.test_indices.size(), 54u);
    std::set<std::size_t> all(s.train_indices.begin(), s.train_indices.end());
    for (auto i : s.test_indices) {
        EXPECT_TRUE(all.insert(i).second) << "index " << i << " in both halves";
    }
    EXPECT_EQ(all.size(), 362u);
    EXPECT_TRUE(std::is_sorted(s.train_indices.begin(), s.train_indices.end()));
    EXPECT_TRUE(std::is_sorted(s.test_indices.begin(), s.test_indices.end()));
}

TEST(SplitTrainTest, DeterministicPerSeed)
{
    EXPECT_EQ(split_train_test(362, 54, 7).test_indices, split_train_test(362, 54, 7).test_indices);
    EXPECT_NE(split_train_test(362, 54, 7).test_indices, split_train_test(362, 54, 8).test_indices);
}

TEST(SplitTrainTest, RejectsBadSizes)
{
    for (std::size_t bad : {std::size_t{0}, std::size_t{362}, std::size_t{400}}) {
        try {
            split_train_test(362, bad, 1);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::BadTestSize);
        }
    }
}

TEST(PoolRegions, ExcludesCaseStudy)
{
    const auto all = generate_synthetic({7, 362, 0.05, 1});
    const auto ontario = RegionId::from_name("ontario");
    const auto pool = pool_regions(all, ontario);
    EXPECT_EQ(pool.size(), 6u * 362u);
    std::set<int> regions;
    for (const auto& p : pool) {
        regions.insert(p.region.code());
    }
    EXPECT_EQ(regions.size(), 6u);
    EXPECT_EQ(regions.count(ontario.code()), 0u);

    const std::vector<RegionalDataset> two(all.begin(), all.begin() + 2);
    EXPECT_EQ(pool_regions(two, ontario).size(), 724u);

    const std::vector<RegionalDataset> one(all.begin(), all.begin() + 1);
    try {
        pool_regions(one, one.front().region);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyPool);
    }
}

} // namespace
} // namespace regio
