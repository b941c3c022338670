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

#include "sunvqe/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace sunvqe {

SparseHermitian::SparseHermitian(std::int64_t dimension, std::vector<Triplet> entries, double drop_tol)
    : dim_(dimension) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= dim_ || e.col < 0 || e.col >= dim_)
      throw std::out_of_range("SparseHermitian: entry outside the matrix");
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col)
      entries_.back().value += e.value;
    else
      entries_.push_back(e);
  }
  std::erase_if(entries_, [drop_tol](const Triplet& e) { return std::abs(e.value) <= drop_tol; });
}

cplx SparseHermitian::at(std::int64_t row, std::int64_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const Triplet& e, const std::pair<std::int64_t, std::int64_t>& key) {
                               return e.row != key.first ? e.row < key.first : e.col < key.second;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return {0.0, 0.0};
}

DenseVector SparseHermitian::apply(const DenseVector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("SparseHermitian::apply: dimension mismatch");
  DenseVector y = DenseVector::Zero(dim_);
  for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
  return y;
}

void SparseHermitian::apply(std::span<const cplx> x, std::span<cplx> y) const {
  if (static_cast<std::int64_t>(x.size()) != dim_ || static_cast<std::int64_t>(y.size()) != dim_)
    throw std::invalid_argument("SparseHermitian::apply: dimension mismatch");
  std::fill(y.begin(), y.end(), cplx{0.0, 0.0});
  for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
}

DenseMatrix SparseHermitian::to_dense() const {
  DenseMatrix m = DenseMatrix::Zero(dim_, dim_);
  for (const auto& e : entries_) m(e.row, e.col) = e.value;
  return m;
}

double SparseHermitian::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& e : entries_) worst = std::max(worst, std::abs(e.value - std::conj(at(e.col, e.row))));
  return worst;
}

}  // namespace sunvqe
