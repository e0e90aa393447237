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
#include "regio/matrix.hpp"

#include "regio/error.hpp"

#include <algorithm>

namespace regio {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows)
    , cols_(cols)
    , data_(rows * cols, fill)
{}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    for (const auto& r : rows) {
        append_row(std::span<const double>(r.begin(), r.size()));
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    Matrix m;
    for (const auto& r : rows) {
        m.append_row(r);
    }
    return m;
}

std::vector<double> Matrix::column(std::size_t c) const
{
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

void Matrix::set_column(std::size_t c, std::span<const double> values)
{
    if (values.size() != rows_) {
        throw Error(ErrorCode::RowCountMismatch, "column length differs from matrix row count");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = values[r];
    }
}

void Matrix::append_row(std::span<const double> values)
{
    if (rows_ == 0 && cols_ == 0) {
        cols_ = values.size();
    } else if (values.size() != cols_) {
        throw Error(ErrorCode::DimensionMismatch, "row width differs from matrix column count",
                    rows_);
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::take_rows(std::span<const std::size_t> indices) const
{
    Matrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        auto src = row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom)
{
    if (top.empty()) {
        return bottom;
    }
    if (bottom.empty()) {
        return top;
    }
    if (top.cols() != bottom.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "cannot stack matrices of different widths");
    }
    Matrix out = top;
    for (std::size_t r = 0; r < bottom.rows(); ++r) {
        out.append_row(bottom.row(r));
    }
    return out;
}

} // namespace regio
