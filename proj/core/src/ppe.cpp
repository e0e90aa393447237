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
#include "regio/ppe.hpp"

#include "regio/csv.hpp"
#include "regio/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace regio {

namespace {

void check_inputs(const PpeInputs& in)
{
    if (!(in.operating_capacity >= 0.0 && in.operating_capacity <= 1.0)) {
        throw Error(ErrorCode::InvalidCapacity,
                    fmt::format("operating capacity {} outside [0, 1]", in.operating_capacity));
    }
    if (in.chc_count < 1) {
        throw Error(ErrorCode::ZeroChcCount,
                    fmt::format("health centre count must be >= 1, got {}", in.chc_count));
    }
    if (!(in.hospitalized >= 0.0) || !std::isfinite(in.hospitalized)) {
        throw Error(ErrorCode::BadValue,
                    fmt::format("hospitalized must be a finite count >= 0, got {}", in.hospitalized));
    }
    if (in.personnel < 0) {
        throw Error(ErrorCode::BadConfig,
                    fmt::format("personnel must be >= 0, got {}", in.personnel));
    }
}

} // namespace

double hospitalization_ratio(const PpeInputs& in)
{
    check_inputs(in);
    return in.hospitalized / static_cast<double>(in.chc_count);
}

double predict_ppe_kits(const PpeInputs& in)
{
    const double ratio = hospitalization_ratio(in);
    const double staffed = in.operating_capacity * static_cast<double>(in.personnel);
    if (ratio > 1.0) {
        return staffed * 1.0;
    }
    return staffed * ratio;
}

std::int64_t KitComposition::items_per_kit() const noexcept
{
    std::int64_t total = 0;
    for (auto n : per_kit) {
        total += n;
    }
    return total;
}

KitItems expand_kit_items(double kits, const KitComposition& comp)
{
    if (!(kits >= 0.0)) {
        throw Error(ErrorCode::BadValue, fmt::format("kit count must be >= 0, got {}", kits));
    }
    const auto whole = static_cast<std::int64_t>(std::ceil(kits));
    KitItems items{};
    for (std::size_t i = 0; i < kKitItemCount; ++i) {
        if (comp.per_kit[i] < 0) {
            throw Error(ErrorCode::BadConfig, "kit item multipliers must be >= 0");
        }
        items[i] = whole * comp.per_kit[i];
    }
    return items;
}

std::vector<PpeDay> forecast_from_hospitalized(std::span<const DataRow> rows,
                                               std::span<const double> hospitalized,
                                               const PpeSchedule& schedule,
                                               const KitComposition& comp)
{
    if (hospitalized.size() != rows.size()) {
        throw Error(ErrorCode::LengthMismatch, "one hospitalization value per day is required");
    }
    if ((!schedule.capacity.empty() && schedule.capacity.size() != rows.size()) ||
        (!schedule.personnel.empty() && schedule.personnel.size() != rows.size())) {
        throw Error(ErrorCode::LengthMismatch, "capacity/personnel series must cover every day");
    }
    std::vector<PpeDay> days;
    days.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double chc = rows[i].feature(11);
        if (chc != std::floor(chc)) {
            throw Error(ErrorCode::BadValue, "health centre count must be an integer", i,
                        "feat_11");
        }
        PpeInputs in{hospitalized[i], static_cast<std::int64_t>(chc),
                     schedule.capacity.empty() ? schedule.default_capacity : schedule.capacity[i],
                     schedule.personnel.empty() ? schedule.default_personnel
                                                : schedule.personnel[i]};
        PpeDay day;
        day.date = rows[i].date;
        day.predicted_hospitalized = in.hospitalized;
        day.hsp_ratio = hospitalization_ratio(in);
        day.kits = predict_ppe_kits(in);
        day.kits_ceil = static_cast<std::int64_t>(std::ceil(day.kits));
        day.items = expand_kit_items(day.kits, comp);
        days.push_back(day);
    }
    return days;
}

std::vector<PpeDay> forecast_series(const MtlModel& model, std::span<const DataRow> rows,
                                    const PpeSchedule& schedule, const KitComposition& comp)
{
    const auto prediction = predict_monitoring(model, rows);
    const auto hospitalized =
        prediction.counts.column(static_cast<std::size_t>(Target::Hospitalizations));
    return forecast_from_hospitalized(rows, hospitalized, schedule, comp);
}

std::string ppe_csv(std::span<const PpeDay> days)
{
    std::string out = "date,predicted_hospitalized,hsp_ratio,kits,kits_ceil";
    for (auto name : kKitItemNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& d : days) {
        out += fmt::format("{},{},{},{},{}", format_date(d.date),
                           csv::format_fixed(d.predicted_hospitalized, 6),
                           csv::format_fixed(d.hsp_ratio, 6), csv::format_fixed(d.kits, 6),
                           d.kits_ceil);
        for (auto n : d.items) {
            out += fmt::format(",{}", n);
        }
        out += '\n';
    }
    return out;
}

} // namespace regio
