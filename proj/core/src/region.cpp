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
#include "regio/region.hpp"

#include "regio/error.hpp"

#include <algorithm>
#include <cctype>

namespace regio {

namespace {

constexpr std::array<std::string_view, RegionId::kCount> kNames = {
    "Alberta",       "British Columbia",          "Manitoba", "New Brunswick",
    "Newfoundland and Labrador", "Nova Scotia",   "Ontario",  "Prince Edward Island",
    "Quebec",        "Saskatchewan",
};

std::string normalize(std::string_view name)
{
    std::string out;
    out.reserve(name.size());
    for (char ch : name) {
        if (ch == ' ' || ch == '-') {
            out.push_back('_');
        } else {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    return out;
}

} // namespace

RegionId RegionId::from_code(int code)
{
    if (code < 0 || code >= kCount) {
        throw Error(ErrorCode::BadValue, "region code must be in 0..9, got " + std::to_string(code),
                    std::nullopt, "feat_04");
    }
    return RegionId(code);
}

RegionId RegionId::from_name(std::string_view name)
{
    const std::string key = normalize(name);
    for (int code = 0; code < kCount; ++code) {
        if (normalize(kNames[code]) == key) {
            return RegionId(code);
        }
    }
    throw Error(ErrorCode::BadValue, "unknown region name '" + std::string(name) + "'");
}

std::string_view RegionId::name() const noexcept
{
    return kNames[code_];
}

std::string RegionId::slug() const
{
    return normalize(kNames[code_]);
}

std::array<RegionId, 7> reference_provinces()
{
    return {RegionId::from_code(0), RegionId::from_code(1), RegionId::from_code(2),
            RegionId::from_code(3), RegionId::from_code(6), RegionId::from_code(8),
            RegionId::from_code(9)};
}

} // namespace regio
