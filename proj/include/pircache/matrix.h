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

// Dense matrices over a finite field and Gauss-Jordan elimination.

#ifndef PIRCACHE_MATRIX_H_
#define PIRCACHE_MATRIX_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pircache/error.h"
#include "pircache/field.h"

namespace pircache::gf {

class SingularMatrix : public InvalidArgument {
 public:
  SingularMatrix() : InvalidArgument("matrix is singular") {}
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  static Matrix Identity(FieldPtr field, std::size_t n);
  // Throws InvalidArgument on ragged rows or values outside the field.
  static Matrix FromRows(FieldPtr field,
                         const std::vector<std::vector<Value>>& rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Value& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Value operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const Value> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<Value> Column(std::size_t c) const;

  // Same entries viewed over `field`, which must contain all of them. Used to
  // lift GF(q) matrices into GF(q^delta).
  Matrix OverField(FieldPtr field) const;

  Matrix Transpose() const;
  Matrix Multiply(const Matrix& other) const;
  // Matrix-vector product; `x` may live in an extension of field().
  std::vector<Value> Apply(std::span<const Value> x, const Field& over) const;
  std::vector<Value> Apply(std::span<const Value> x) const {
    return Apply(x, *field_);
  }
  Matrix SelectColumns(std::span<const std::size_t> cols) const;
  Matrix SelectRows(std::span<const std::size_t> rows) const;
  // Rows of this followed by rows of `other`.
  Matrix Stack(const Matrix& other) const;
  bool IsZero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Value> data_;
};

struct Echelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon ReducedRowEchelon(const Matrix& a);
std::size_t Rank(const Matrix& a);

// Some x with A x = b, or nullopt when the system is inconsistent. Entries of
// b and x may lie in an extension `over` of A's field. Free variables are set
// to zero, so the solution is the one supported on the pivot columns of the
// reduced echelon form.
std::optional<std::vector<Value>> Solve(const Matrix& a,
                                        std::span<const Value> b,
                                        const Field& over);
inline std::optional<std::vector<Value>> Solve(const Matrix& a,
                                               std::span<const Value> b) {
  return Solve(a, b, *a.field());
}

// Throws SingularMatrix when A is not square or not full rank.
Matrix Invert(const Matrix& a);

// Rows form a basis of {x : A x = 0}.
Matrix NullSpace(const Matrix& a);

// Nonzero rows of the reduced echelon form: a basis of the row space.
Matrix RowBasis(const Matrix& a);

}  // namespace pircache::gf

#endif  // PIRCACHE_MATRIX_H_
