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

#include <vector>

#include "riscsm/numerics.hpp"

namespace riscsm {

// Scalar parameters of one RIS-CSM link. Groups are contiguous: group q owns
// elements [q * group_size(), (q + 1) * group_size()).
struct SystemConfig {
  Index elements = 64;         // RIS elements N
  Index groups = 1;            // N_Q
  Index patterns = 16;         // K, patterns per group
  Index rx_antennas = 1;       // n_R
  Index modulation_order = 1;  // M; 1 means an unmodulated carrier x = 1
  double symbol_energy = 1.0;  // E_s
  double noise_variance = 1.0; // sigma^2

  Index group_size() const { return elements / groups; }
  int index_bits() const { return static_cast<int>(groups) * log2_exact(patterns); }
  int modulation_bits() const { return log2_exact(modulation_order); }
  int bits_per_use() const { return index_bits() + modulation_bits(); }
  double spectral_efficiency() const { return bits_per_use(); }
  // K^N_Q
  Index signature_count() const;
  double snr() const { return symbol_energy / noise_variance; }

  // Throws InvalidDimensions / InvalidParameters.
  void validate() const;
};

// Pilot training for MMSE estimation. Training noise is CN(0, 1) unless
// noise_variance is overridden (tests use 0 to see the clean pilots).
struct TrainingConfig {
  double energy = 1.0;      // E_t
  Index repetitions = 1;    // tau, pilots per pattern
  double noise_variance = 1.0;

  static TrainingConfig from_snr_db(double snr_db, Index repetitions) {
    return {db_to_linear(snr_db), repetitions, 1.0};
  }
  double snr_db() const { return linear_to_db(energy); }
  void validate() const;
};

// Unit-average-power constellation with natural-binary labels: label i is
// points()[i].
class Constellation {
 public:
  explicit Constellation(std::vector<cd> points) : points_(std::move(points)) {}

  // M = 1: {1}. M = 2: BPSK. Even log2(M): square QAM. M = 8: 4x2
  // rectangular. Odd log2(M) >= 5: cross QAM (square grid minus corners).
  static Constellation qam(Index order);
  // e^{j 2 pi m / M}, m = 0..M-1.
  static Constellation psk(Index order);

  Index size() const { return static_cast<Index>(points_.size()); }
  const cd& operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<cd>& points() const { return points_; }
  double average_energy() const;

 private:
  std::vector<cd> points_;
};

}  // namespace riscsm
