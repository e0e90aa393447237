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
#include "regio/synth.hpp"

#include "regio/error.hpp"
#include "regio/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace regio {

namespace {

// Day span of the reference datasets; generated series are laid out on it
// regardless of the requested row count so the curve shape is stable.
constexpr double kTemplateDays = 361.0;

double bump(double u, double centre, double width)
{
    const double z = (u - centre) / width;
    return std::exp(-z * z);
}

// Shared epidemic intensity: a spring wave and a larger winter wave.
double intensity(double u)
{
    return bump(u, 75.0, 20.0) + 1.8 * bump(u, 305.0, 35.0);
}

double season(Date d)
{
    const unsigned m = static_cast<unsigned>(d.month());
    if (m >= 3 && m <= 5) {
        return 1.0;
    }
    if (m >= 6 && m <= 8) {
        return 2.0;
    }
    if (m >= 9 && m <= 11) {
        return 3.0;
    }
    return 4.0;
}

bool is_holiday(Date d)
{
    constexpr std::array<std::pair<unsigned, unsigned>, 9> days = {
        {{1, 1}, {4, 10}, {5, 18}, {7, 1}, {9, 7}, {10, 12}, {11, 11}, {12, 25}, {12, 26}}};
    const auto md = std::pair(static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return std::find(days.begin(), days.end(), md) != days.end();
}

std::vector<RegionId> region_order(std::size_t count)
{
    std::vector<RegionId> out;
    for (auto r : reference_provinces()) {
        out.push_back(r);
    }
    for (int code : {4, 5, 7}) {
        out.push_back(RegionId::from_code(code));
    }
    out.resize(count, out.front());
    return out;
}

} // namespace

std::vector<RegionalDataset> generate_synthetic(const SyntheticSpec& spec)
{
    if (spec.rows < 10) {
        throw Error(ErrorCode::BadSpec, fmt::format("rows must be >= 10, got {}", spec.rows));
    }
    if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) {
        throw Error(ErrorCode::BadSpec, fmt::format("noise must be >= 0, got {}", spec.noise));
    }
    if (spec.regions < 1 || spec.regions > static_cast<std::size_t>(RegionId::kCount)) {
        throw Error(ErrorCode::BadSpec,
                    fmt::format("region count must be in 1..10, got {}", spec.regions));
    }

    constexpr std::array<double, 6> cohort_base = {2.50e6, 2.40e6, 0.60e6, 2.45e6, 2.50e6, 0.80e6};
    constexpr std::array<double, 4> target_scale = {900.0, 150.0, 800.0, 25.0};
    constexpr std::array<double, 4> target_lag = {0.0, 8.0, 14.0, 12.0};
    constexpr std::array<double, 4> target_floor = {5.0, 2.0, 3.0, 0.0};
    const std::chrono::sys_days start{std::chrono::year{2020} / 1 / 25};

    std::vector<RegionalDataset> out;
    const auto regions = region_order(spec.regions);
    for (std::size_t r = 0; r < regions.size(); ++r) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(regions[r].code())));
        const double amplitude = rng.uniform(0.9, 1.1);
        std::array<double, 4> target_amp{};
        for (auto& a : target_amp) {
            a = amplitude * rng.uniform(0.97, 1.03);
        }
        const double mobility_offset = rng.uniform(-2.0, 2.0);
        // Feature jitter is sized for the default noise level and scales with it.
        const double jitter = spec.noise / SyntheticSpec::kDefaultNoise;

        RegionalDataset ds{regions[r], {}};
        ds.rows.reserve(spec.rows);
        for (std::size_t t = 0; t < spec.rows; ++t) {
            const double u = kTemplateDays * static_cast<double>(t) /
                             static_cast<double>(spec.rows - 1);
            const double e = intensity(u);
            const double e_unit = e / 1.8;
            DataRow row;
            row.date = Date{start + std::chrono::days{static_cast<int>(t)}};
            auto set = [&](std::size_t code, double v) { row.features[code - 1] = v; };

            set(1, 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * u / 120.0) +
                       0.03 * jitter * rng.normal());
            set(2, season(row.date));
            set(3, 900000.0);
            set(4, regions[r].code());
            set(5, u < 200.0 ? 1.0 : 2.0);
            set(6, u < 323.0 ? 0.0
                             : std::round(2000.0 * std::pow(u - 323.0, 1.3) *
                                          (1.0 + 0.002 * jitter * rng.normal())));
            set(7, e > 0.5 ? 1.0 : (e > 0.15 ? 2.0 : 3.0));
            set(8, u < 50.0 ? 0.0 : (u < 150.0 ? 1.0 : 2.0));
            set(9, u < 170.0 ? 0.0 : 1.0);
            set(10, is_holiday(row.date) ? 1.0 : 0.0);
            set(11, 40.0);
            const std::array<double, 5> mobility_depth = {-45.0, -20.0, 30.0, -50.0, -40.0};
            for (std::size_t m = 0; m < mobility_depth.size(); ++m) {
                set(12 + m, mobility_depth[m] * e_unit + mobility_offset +
                                1.5 * jitter * rng.normal());
            }
            set(17, 5.0 + 12.0 * e_unit + 0.3 * mobility_offset + 0.5 * jitter * rng.normal());
            set(18, std::round(std::max(0.0, 3000.0 * (u < 50.0 ? 1.0 : 0.2) +
                                                     100.0 * jitter * rng.normal())));
            set(19, 61.0 - 5.0 * e_unit + 0.2 * jitter * rng.normal());
            set(20, 6.0 + 6.0 * e_unit + 0.2 * jitter * rng.normal());
            set(21, std::round(7.5e6 * (1.0 + 0.004 * u / kTemplateDays) +
                               30.0 * jitter * rng.normal()));
            for (std::size_t c = 0; c < cohort_base.size(); ++c) {
                const double drift = 0.01 + 0.002 * static_cast<double>(c);
                set(22 + c, std::round(cohort_base[c] * (1.0 + drift * u / kTemplateDays) +
                                       20.0 * jitter * rng.normal()));
            }

            for (std::size_t k = 0; k < 4; ++k) {
                const double clean = target_scale[k] * target_amp[k] *
                                         intensity(u - target_lag[k]) +
                                     target_floor[k];
                const double noisy = clean * (1.0 + spec.noise * rng.normal());
                row.targets[k] = static_cast<std::int64_t>(std::llround(std::max(0.0, noisy)));
            }
            ds.rows.push_back(row);
        }
        out.push_back(std::move(ds));
    }
    return out;
}

} // namespace regio
