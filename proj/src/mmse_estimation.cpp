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

#include "riscsm/mmse_estimation.hpp"

namespace riscsm {

std::vector<ComplexVectord> collect_pilots(const ChannelRealization& ch, const PatternSet& patterns,
                                           const SystemConfig& config, Index group, Index pattern,
                                           const TrainingConfig& training, RngStream& rng) {
  training.validate();
  const ComplexVectord clean = std::sqrt(training.energy) * group_signature(ch, patterns, config, group, pattern);
  const double noise_scale = std::sqrt(training.noise_variance);
  std::vector<ComplexVectord> pilots;
  pilots.reserve(static_cast<std::size_t>(training.repetitions));
  for (Index i = 0; i < training.repetitions; ++i) {
    ComplexVectord z = clean;
    for (Index r = 0; r < z.size(); ++r) z(r) += noise_scale * rng.cn01();
    pilots.push_back(std::move(z));
  }
  return pilots;
}

ComplexVectord mmse_estimate(std::span<const ComplexVectord> pilots, const TrainingConfig& training, Index elements,
                             Index groups) {
  if (pilots.empty()) throw EmptyPilots("mmse_estimate: no pilot observations");
  if (static_cast<Index>(pilots.size()) != training.repetitions)
    throw LengthMismatch("mmse_estimate: pilot count differs from the repetition count");
  ComplexVectord sum = ComplexVectord::Zero(pilots.front().size());
  for (const auto& z : pilots) {
    if (z.size() != sum.size()) throw DimensionMismatch("mmse_estimate: pilots differ in length");
    sum += z;
  }
  const double n = static_cast<double>(elements);
  const double tau = static_cast<double>(training.repetitions);
  const double denom = training.energy * n * tau + static_cast<double>(groups) * training.noise_variance;
  if (denom == 0.0) return ComplexVectord::Zero(sum.size());
  return (std::sqrt(training.energy) * n / denom) * sum;
}

double theoretical_mse(Index elements, Index groups, double training_energy, Index repetitions) {
  const double n = static_cast<double>(elements);
  return n / (training_energy * n * static_cast<double>(repetitions) + static_cast<double>(groups));
}

EffectiveChannelTable estimate_table(const ChannelRealization& ch, const PatternSet& patterns,
                                     const SystemConfig& config, const TrainingConfig& training, RngStream& rng) {
  std::vector<ComplexMatrixd> estimates;
  estimates.reserve(static_cast<std::size_t>(config.groups));
  for (Index q = 0; q < config.groups; ++q) {
    ComplexMatrixd group(config.rx_antennas, config.patterns);
    for (Index k = 0; k < config.patterns; ++k) {
      const auto pilots = collect_pilots(ch, patterns, config, q, k, training, rng);
      group.col(k) = mmse_estimate(pilots, training, config.elements, config.groups);
    }
    estimates.push_back(std::move(group));
  }
  return EffectiveChannelTable(std::move(estimates));
}

}  // namespace riscsm
