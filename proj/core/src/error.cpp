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
#include "regio/error.hpp"

#include <fmt/format.h>

namespace regio {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::BadTestSize: return "BadTestSize";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingPrimaryColumn: return "MissingPrimaryColumn";
    case ErrorCode::RowCountMismatch: return "RowCountMismatch";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::UnknownFeatureCode: return "UnknownFeatureCode";
    case ErrorCode::BadTopN: return "BadTopN";
    case ErrorCode::ColumnMismatch: return "ColumnMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CaseStudyLeak: return "CaseStudyLeak";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::EmptyCaseData: return "EmptyCaseData";
    case ErrorCode::TooFewRegions: return "TooFewRegions";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::InvalidCapacity: return "InvalidCapacity";
    case ErrorCode::ZeroChcCount: return "ZeroChcCount";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::AllReplicatesDegenerate: return "AllReplicatesDegenerate";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadConfig: return "BadConfig";
    }
    return "Unknown";
}

ErrorKind kind_of(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::BadTestSize:
    case ErrorCode::BadTopN:
    case ErrorCode::UnknownFeatureCode:
    case ErrorCode::NegativeWeight:
    case ErrorCode::InvalidCapacity:
    case ErrorCode::BadSpec:
    case ErrorCode::BadConfig:
    case ErrorCode::TooFewRegions:
        return ErrorKind::Config;
    case ErrorCode::MissingColumn:
    case ErrorCode::BadValue:
    case ErrorCode::DuplicateDate:
    case ErrorCode::EmptyFile:
    case ErrorCode::EmptyPool:
    case ErrorCode::Io:
    case ErrorCode::MissingPrimaryColumn:
    case ErrorCode::TooFewRows:
    case ErrorCode::EmptyCaseData:
    case ErrorCode::CaseStudyLeak:
    case ErrorCode::VersionMismatch:
    case ErrorCode::ZeroChcCount:
    case ErrorCode::ZeroVariance:
    case ErrorCode::AllReplicatesDegenerate:
    case ErrorCode::EmptyTrainingSet:
        return ErrorKind::Data;
    default:
        return ErrorKind::Internal;
    }
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     const std::optional<std::size_t>& row, const std::string& field)
{
    std::string out = fmt::format("{}: {}", to_string(code), message);
    if (row) {
        out += fmt::format(" (row {}", *row);
        out += field.empty() ? ")" : fmt::format(", field {})", field);
    } else if (!field.empty()) {
        out += fmt::format(" ({})", field);
    }
    return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row,
             std::string field)
    : std::runtime_error(decorate(code, message, row, field))
    , code_(code)
    , row_(row)
    , field_(std::move(field))
{}

} // namespace regio
