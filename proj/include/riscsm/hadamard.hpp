// SPDX-License-Identifier: Apache-2.0
//
// riscsm - link-level simulation toolkit for RIS channel signature modulation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <bit>
#include <cstdint>

#include <Eigen/Core>

#include "riscsm/numerics.hpp"

namespace riscsm {

// Sylvester-Hadamard matrix of order n (a power of two), built by repeated
// Kronecker product with [[1, 1], [1, -1]]. Entries are exactly +1 / -1.
template <typename Scalar = int>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sylvester(Index n) {
  if (!is_power_of_two(n)) throw NotPowerOfTwo("sylvester: order must be a power of two");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> h(n, n);
  h(0, 0) = Scalar(1);
  for (Index size = 1; size < n; size *= 2) {
    h.block(0, size, size, size) = h.block(0, 0, size, size);
    h.block(size, 0, size, size) = h.block(0, 0, size, size);
    h.block(size, size, size, size) = -h.block(0, 0, size, size);
  }
  return h;
}

// Entry (row, col) of the Sylvester matrix of any power-of-two order that
// contains both indices, without storing the matrix: the sign is the parity of
// popcount(row & col). Indices are 0-based.
inline int hadamard_entry(std::uint64_t row, std::uint64_t col) { return (std::popcount(row & col) & 1) ? -1 : 1; }

// The K binary phase-shift patterns shared by every group: the first K rows of
// H_n. Pattern 0 is the all-ones vector; an entry of -1 is a pi phase shift.
class PatternSet {
 public:
  using Rows = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  PatternSet(Index group_size, Index count, Rows rows, Eigen::MatrixXi base);

  Index group_size() const { return group_size_; }
  Index count() const { return count_; }
  // Row k of base() repeats with this period: element j of pattern k is
  // base()(k, j % period()).
  Index period() const { return count_; }
  const Eigen::MatrixXi& base() const { return base_; }
  const Rows& rows() const { return rows_; }
  auto pattern(Index k) const { return rows_.row(k); }

 private:
  Index group_size_;
  Index count_;
  Rows rows_;
  Eigen::MatrixXi base_;
};

// First `count` rows of H_group_size. Since entry (k, j) depends only on the
// low bits of j when k < K, row k is row k of H_K tiled n/K times.
PatternSet pattern_set(Index group_size, Index count);

struct DifferenceProfile {
  Index nonzero = 0;  // entries equal to +2 or -2
  Index zero = 0;
  friend bool operator==(const DifferenceProfile&, const DifferenceProfile&) = default;
};

// Profile of patterns[m] - patterns[l] (0-based indices).
DifferenceProfile difference_profile(const PatternSet& set, Index m, Index l);

}  // namespace riscsm
