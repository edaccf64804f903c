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

#include <optional>

#include "riscsm/system_config.hpp"

namespace riscsm {

// One flat Rayleigh draw: h is the Tx-RIS vector (N), G the RIS-Rx matrix
// (n_R x N).
struct ChannelRealization {
  ComplexVectord h;
  ComplexMatrixd G;

  Index elements() const { return h.size(); }
  Index rx_antennas() const { return G.rows(); }
  auto group_h(Index q, Index group_size) const { return h.segment(q * group_size, group_size); }
  auto group_G(Index q, Index group_size) const { return G.middleCols(q * group_size, group_size); }
};

// Uniform rectangular RIS grid used by the sinc correlation model.
struct CorrelationSpec {
  Index columns = 8;               // N_h
  Index rows = 8;                  // N_v
  double spacing_over_lambda = 0.25;

  Index elements() const { return columns * rows; }
  void validate() const;
};

ChannelRealization draw_iid(Index elements, Index rx_antennas, RngStream& rng);
inline ChannelRealization draw_iid(const SystemConfig& config, RngStream& rng) {
  return draw_iid(config.elements, config.rx_antennas, rng);
}

// Normalized sinc, sin(pi x) / (pi x) with sinc(0) = 1.
double sinc(double x);

// r_mn = sinc(2 d/lambda * |u_m - u_n|) on a unit-spaced grid; element index
// is row-major, m = row * columns + column.
Eigen::MatrixXd correlation_matrix(const CorrelationSpec& spec);

// (R^{1/2} h, G R^{1/2}).
template <typename Derived>
ChannelRealization apply_correlation(const ChannelRealization& ch, const Eigen::MatrixBase<Derived>& r_sqrt) {
  if (r_sqrt.rows() != ch.elements() || r_sqrt.cols() != ch.elements())
    throw DimensionMismatch("apply_correlation: R^{1/2} must be N x N");
  return {r_sqrt * ch.h, ch.G * r_sqrt};
}

// IID or spatially correlated fading; the square root is computed once.
class ChannelModel {
 public:
  ChannelModel() = default;
  static ChannelModel iid() { return {}; }
  static ChannelModel correlated(const CorrelationSpec& spec);

  bool is_correlated() const { return r_sqrt_.has_value(); }
  const std::optional<Eigen::MatrixXd>& r_sqrt() const { return r_sqrt_; }

  ChannelRealization draw(Index elements, Index rx_antennas, RngStream& rng) const;
  ChannelRealization draw(const SystemConfig& config, RngStream& rng) const {
    return draw(config.elements, config.rx_antennas, rng);
  }

 private:
  std::optional<Eigen::MatrixXd> r_sqrt_;
};

}  // namespace riscsm
