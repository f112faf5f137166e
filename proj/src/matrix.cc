// Copyright 2026 The pircache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pircache/matrix.h"

#include <utility>

namespace pircache::gf {
namespace {

// In-place Gauss-Jordan on the first `pivot_cols` columns of a row-major
// rows x cols array. Returns the pivot columns.
std::vector<std::size_t> GaussJordan(const Field& f, std::vector<Value>& m,
                                     std::size_t rows, std::size_t cols,
                                     std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t x = 0; x < cols; ++x) std::swap(m[p * cols + x], m[r * cols + x]);
    }
    const Value inv = f.Inv(m[r * cols + c]);
    for (std::size_t x = c; x < cols; ++x) m[r * cols + x] = f.Mul(m[r * cols + x], inv);
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == r) continue;
      const Value factor = m[o * cols + c];
      if (factor == 0) continue;
      for (std::size_t x = c; x < cols; ++x) {
        m[o * cols + x] = f.Sub(m[o * cols + x], f.Mul(factor, m[r * cols + x]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!field_) throw InvalidArgument("matrix needs a field");
}

Matrix Matrix::Identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::FromRows(FieldPtr field,
                        const std::vector<std::vector<Value>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m.field_->Contains(rows[r][c])) {
        throw InvalidArgument("matrix entry outside " + m.field_->Name());
      }
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

std::vector<Value> Matrix::Column(std::size_t c) const {
  std::vector<Value> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::OverField(FieldPtr field) const {
  for (Value v : data_) {
    if (!field->Contains(v)) throw InvalidArgument("entry outside target field");
  }
  Matrix m = *this;
  m.field_ = std::move(field);
  return m;
}

Matrix Matrix::Transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::Multiply(const Matrix& other) const {
  if (cols_ != other.rows_) throw InvalidArgument("matrix dimension mismatch");
  const Field& f = *field_;
  Matrix out(field_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Value a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        out(r, c) = f.Add(out(r, c), f.Mul(a, other(k, c)));
      }
    }
  }
  return out;
}

std::vector<Value> Matrix::Apply(std::span<const Value> x, const Field& over) const {
  if (x.size() != cols_) throw InvalidArgument("vector length mismatch");
  std::vector<Value> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Value acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Value a = (*this)(r, c);
      if (a != 0 && x[c] != 0) acc = over.Add(acc, over.Mul(a, x[c]));
    }
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::SelectColumns(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw InvalidArgument("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, cols[j]);
  }
  return out;
}

Matrix Matrix::SelectRows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw InvalidArgument("row index out of range");
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(rows[i], c);
  }
  return out;
}

Matrix Matrix::Stack(const Matrix& other) const {
  if (rows_ == 0) return other;
  if (other.rows_ == 0) return *this;
  if (cols_ != other.cols_) throw InvalidArgument("matrix dimension mismatch");
  Matrix out(field_, rows_ + other.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(other.data_.begin(), other.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

bool Matrix::IsZero() const {
  for (Value v : data_) {
    if (v != 0) return false;
  }
  return true;
}

Echelon ReducedRowEchelon(const Matrix& a) {
  Echelon e{a, {}};
  std::vector<Value> work(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) work[r * a.cols() + c] = a(r, c);
  }
  e.pivots = GaussJordan(*a.field(), work, a.rows(), a.cols(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) e.reduced(r, c) = work[r * a.cols() + c];
  }
  return e;
}

std::size_t Rank(const Matrix& a) { return ReducedRowEchelon(a).pivots.size(); }

std::optional<std::vector<Value>> Solve(const Matrix& a, std::span<const Value> b,
                                        const Field& over) {
  if (b.size() != a.rows()) throw InvalidArgument("right-hand side length mismatch");
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols() + 1;
  std::vector<Value> work(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      if (!over.Contains(a(r, c))) throw InvalidArgument("matrix entry outside field");
      work[r * cols + c] = a(r, c);
    }
    if (!over.Contains(b[r])) throw InvalidArgument("right-hand side outside field");
    work[r * cols + cols - 1] = b[r];
  }
  const auto pivots = GaussJordan(over, work, rows, cols, a.cols());
  for (std::size_t r = pivots.size(); r < rows; ++r) {
    if (work[r * cols + cols - 1] != 0) return std::nullopt;
  }
  std::vector<Value> x(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = work[i * cols + cols - 1];
  return x;
}

Matrix Invert(const Matrix& a) {
  if (a.rows() != a.cols()) throw SingularMatrix();
  const std::size_t n = a.rows();
  const std::size_t cols = 2 * n;
  std::vector<Value> work(n * cols, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) work[r * cols + c] = a(r, c);
    work[r * cols + n + r] = 1;
  }
  if (GaussJordan(*a.field(), work, n, cols, n).size() != n) throw SingularMatrix();
  Matrix inv(a.field(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = work[r * cols + n + c];
  }
  return inv;
}

Matrix NullSpace(const Matrix& a) {
  const Echelon e = ReducedRowEchelon(a);
  const Field& f = *a.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  Matrix basis(a.field(), free_cols.size(), a.cols());
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    const std::size_t fc = free_cols[i];
    basis(i, fc) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(i, e.pivots[r]) = f.Neg(e.reduced(r, fc));
    }
  }
  return basis;
}

Matrix RowBasis(const Matrix& a) {
  const Echelon e = ReducedRowEchelon(a);
  std::vector<std::size_t> rows(e.pivots.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return e.reduced.SelectRows(rows);
}

}  // namespace pircache::gf
