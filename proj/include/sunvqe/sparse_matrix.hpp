// Copyright 2026 The sunvqe Authors
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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "sunvqe/lattice_model.hpp"

namespace sunvqe {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

struct Triplet {
  std::int64_t row;
  std::int64_t col;
  cplx value;
};

/// Coordinate-format Hermitian matrix. Entries are kept sorted by (row, col)
/// with duplicates merged, so lookups and products are deterministic.
class SparseHermitian {
 public:
  SparseHermitian() = default;
  /// Duplicate coordinates are summed; entries below `drop_tol` in modulus are dropped.
  SparseHermitian(std::int64_t dimension, std::vector<Triplet> entries, double drop_tol = 0.0);

  std::int64_t dimension() const { return dim_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  /// Value at (row, col); zero when absent.
  cplx at(std::int64_t row, std::int64_t col) const;

  /// y = A x
  DenseVector apply(const DenseVector& x) const;
  /// y = A x into caller storage (y is overwritten; must not alias x).
  void apply(std::span<const cplx> x, std::span<cplx> y) const;
  DenseMatrix to_dense() const;

  /// max |A(r,c) - conj(A(c,r))| over stored entries.
  double hermiticity_defect() const;

 private:
  std::int64_t dim_ = 0;
  std::vector<Triplet> entries_;
};

}  // namespace sunvqe
