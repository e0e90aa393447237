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

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace regio {

/// Canadian province, identified by its numeric encoding in the `feat_04`
/// column (0 = Alberta ... 9 = Saskatchewan).
class RegionId {
public:
    static constexpr int kCount = 10;

    /// Throws BadValue for codes outside 0..9.
    static RegionId from_code(int code);

    /// Accepts the display name ("British Columbia") or the file slug
    /// ("british_columbia"), case-insensitively. Throws BadValue if unknown.
    static RegionId from_name(std::string_view name);

    int code() const noexcept { return code_; }
    std::string_view name() const noexcept;
    /// Lower-case, underscore-separated name used for `<slug>.csv` file names.
    std::string slug() const;

    friend auto operator<=>(const RegionId&, const RegionId&) = default;

private:
    explicit constexpr RegionId(int code) noexcept : code_(code) {}
    int code_ = 0;
};

/// The seven provinces with published reference datasets, in table order.
std::array<RegionId, 7> reference_provinces();

} // namespace regio
