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

#include "riscsm/channel.hpp"

#include <numbers>

namespace riscsm {

void CorrelationSpec::validate() const {
  if (columns < 1 || rows < 1) throw InvalidParameters("correlation grid dimensions must be positive");
  if (!(spacing_over_lambda > 0.0)) throw InvalidParameters("element spacing must be positive");
}

ChannelRealization draw_iid(Index elements, Index rx_antennas, RngStream& rng) {
  ChannelRealization ch{ComplexVectord(elements), ComplexMatrixd(rx_antennas, elements)};
  fill_cn01(rng, ch.h);
  fill_cn01(rng, ch.G);
  return ch;
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

Eigen::MatrixXd correlation_matrix(const CorrelationSpec& spec) {
  spec.validate();
  const Index n = spec.elements();
  Eigen::MatrixXd r(n, n);
  for (Index m = 0; m < n; ++m) {
    for (Index l = 0; l < n; ++l) {
      const double dr = static_cast<double>(m / spec.columns - l / spec.columns);
      const double dc = static_cast<double>(m % spec.columns - l % spec.columns);
      r(m, l) = sinc(2.0 * spec.spacing_over_lambda * std::hypot(dr, dc));
    }
  }
  return r;
}

ChannelModel ChannelModel::correlated(const CorrelationSpec& spec) {
  ChannelModel model;
  model.r_sqrt_ = psd_sqrt(correlation_matrix(spec));
  return model;
}

ChannelRealization ChannelModel::draw(Index elements, Index rx_antennas, RngStream& rng) const {
  ChannelRealization ch = draw_iid(elements, rx_antennas, rng);
  if (!r_sqrt_) return ch;
  return apply_correlation(ch, *r_sqrt_);
}

}  // namespace riscsm
