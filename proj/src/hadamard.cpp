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

#include "riscsm/hadamard.hpp"

#include <utility>

namespace riscsm {

PatternSet::PatternSet(Index group_size, Index count, Rows rows, Eigen::MatrixXi base)
    : group_size_(group_size), count_(count), rows_(std::move(rows)), base_(std::move(base)) {}

PatternSet pattern_set(Index group_size, Index count) {
  if (!is_power_of_two(group_size) || !is_power_of_two(count) || count > group_size)
    throw InvalidDimensions("pattern_set: need powers of two with count <= group size");
  Eigen::MatrixXi base = sylvester<int>(count);
  PatternSet::Rows rows(count, group_size);
  for (Index k = 0; k < count; ++k)
    for (Index j = 0; j < group_size; ++j) rows(k, j) = base(k, j % count);
  return PatternSet(group_size, count, std::move(rows), std::move(base));
}

DifferenceProfile difference_profile(const PatternSet& set, Index m, Index l) {
  if (m < 0 || l < 0 || m >= set.count() || l >= set.count())
    throw IndexOutOfRange("difference_profile: pattern index out of range");
  DifferenceProfile profile;
  const auto diff = (set.pattern(m) - set.pattern(l)).eval();
  for (Index j = 0; j < diff.size(); ++j) {
    if (diff(j) == 0)
      ++profile.zero;
    else
      ++profile.nonzero;
  }
  return profile;
}

}  // namespace riscsm
