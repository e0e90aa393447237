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

#include "regio/dataset.hpp"
#include "regio/mtl.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace regio {

/// Inputs for one day of kit demand at the community health centres.
struct PpeInputs {
    double hospitalized = 0.0;      // predicted hospitalized patients
    std::int64_t chc_count = 1;     // community health centres in the region
    double operating_capacity = 1.0; // active share of the workforce, in [0, 1]
    std::int64_t personnel = 0;     // lab, paramedic, assistant, doctor, nurse, therapist staff
};

/// Hospitalized patients per health centre.
double hospitalization_ratio(const PpeInputs& in);

/// capacity x personnel x min(ratio, 1): demand grows linearly with the ratio
/// and saturates once every centre has at least one patient.
double predict_ppe_kits(const PpeInputs& in);

inline constexpr std::size_t kKitItemCount = 5;
inline constexpr std::array<std::string_view, kKitItemCount> kKitItemNames = {
    "face_shields", "n95", "glove_pairs", "shoe_cover_pairs", "gowns"};

/// Items per kit: face shield, N95 respirator, glove pair, shoe-cover pair,
/// isolation gown.
struct KitComposition {
    std::array<std::int64_t, kKitItemCount> per_kit{1, 1, 1, 1, 1};

    std::int64_t items_per_kit() const noexcept;
};

using KitItems = std::array<std::int64_t, kKitItemCount>;

/// ceil(kits) whole kits, multiplied out per item.
KitItems expand_kit_items(double kits, const KitComposition& comp = {});

/// Capacity and staffing per day; empty vectors fall back to the constants.
struct PpeSchedule {
    double default_capacity = 0.75;
    std::int64_t default_personnel = 200;
    std::vector<double> capacity;
    std::vector<std::int64_t> personnel;
};

struct PpeDay {
    Date date;
    double predicted_hospitalized = 0.0;
    double hsp_ratio = 0.0;
    double kits = 0.0;
    std::int64_t kits_ceil = 0;
    KitItems items{};
};

/// Day-by-day kit demand from already-predicted hospitalizations; the health
/// centre count comes from each row's feat_11.
std::vector<PpeDay> forecast_from_hospitalized(std::span<const DataRow> rows,
                                               std::span<const double> hospitalized,
                                               const PpeSchedule& schedule,
                                               const KitComposition& comp = {});

/// Predicts hospitalizations with `model`, then kit demand for each row.
std::vector<PpeDay> forecast_series(const MtlModel& model, std::span<const DataRow> rows,
                                    const PpeSchedule& schedule, const KitComposition& comp = {});

/// `date,predicted_hospitalized,hsp_ratio,kits,kits_ceil,face_shields,n95,glove_pairs,shoe_cover_pairs,gowns`
std::string ppe_csv(std::span<const PpeDay> days);

} // namespace regio
