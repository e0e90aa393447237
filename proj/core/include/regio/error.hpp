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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regio {

enum class ErrorCode {
    // dataset ingest
    MissingColumn,
    BadValue,
    DuplicateDate,
    EmptyFile,
    BadTestSize,
    EmptyPool,
    Io,
    // feature pipeline
    MissingPrimaryColumn,
    RowCountMismatch,
    TooFewRows,
    UnknownFeatureCode,
    BadTopN,
    // scaling
    ColumnMismatch,
    OutOfDomain,
    EmptyMatrix,
    // knn
    EmptyTrainingSet,
    DimensionMismatch,
    // orchestration
    CaseStudyLeak,
    NegativeWeight,
    EmptyCaseData,
    TooFewRegions,
    VersionMismatch,
    // ppe
    InvalidCapacity,
    ZeroChcCount,
    // evaluation
    ZeroVariance,
    LengthMismatch,
    Empty,
    AllReplicatesDegenerate,
    // configuration
    BadSpec,
    BadConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Broad failure class, used by the command-line driver to pick an exit code.
enum class ErrorKind { Config, Data, Internal };

ErrorKind kind_of(ErrorCode code) noexcept;

/// Every failure raised by the library. Carries a machine-readable code and,
/// where one applies, the offending row index and column/field name.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::size_t> row = std::nullopt, std::string field = {});

    ErrorCode code() const noexcept { return code_; }
    ErrorKind kind() const noexcept { return kind_of(code_); }
    const std::optional<std::size_t>& row() const noexcept { return row_; }
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> row_;
    std::string field_;
};

} // namespace regio
