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

#include "riscsm/capacity.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

#include "riscsm/parallel.hpp"

namespace riscsm {

double mutual_information_fixed_channel(const EffectiveChannelTable& table, const Constellation& constellation,
                                        const SystemConfig& config, Index inner_samples, RngStream& rng) {
  const Index signatures = table.size();
  const Index symbols = constellation.size();
  const Index candidates = signatures * symbols;
  if (candidates > kMaxCapacityCandidates) throw CandidateSetTooLarge("mutual information: too many candidates");
  if (inner_samples < 1) throw InvalidParameters("mutual information: need at least one inner sample");
  if (!(config.noise_variance > 0.0)) throw InvalidParameters("mutual information: noise variance must be positive");

  const double max_bits = std::log2(static_cast<double>(candidates));
  const double amplitude = std::sqrt(config.symbol_energy);
  const double noise_scale = std::sqrt(config.noise_variance);
  const double inv_noise = 1.0 / config.noise_variance;
  const ComplexMatrixd& d = table.composed();
  const Index rx = d.rows();

  // Precomputed candidate means sqrt(E_s) d_k x.
  ComplexMatrixd means(rx, candidates);
  for (Index c = 0; c < signatures; ++c)
    for (Index s = 0; s < symbols; ++s) means.col(c * symbols + s) = amplitude * constellation[s] * d.col(c);

  std::vector<double> exponents(static_cast<std::size_t>(candidates));
  ComplexVectord y(rx);
  double sum = 0.0;
  for (Index i = 0; i < inner_samples; ++i) {
    const auto sent = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(candidates)));
    double noise_energy = 0.0;
    for (Index r = 0; r < rx; ++r) {
      const cd n = noise_scale * rng.cn01();
      noise_energy += std::norm(n);
      y(r) = means(r, sent) + n;
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (Index c = 0; c < candidates; ++c) {
      double dist = 0.0;
      for (Index r = 0; r < rx; ++r) dist += std::norm(y(r) - means(r, c));
      const double e = (noise_energy - dist) * inv_noise;
      exponents[static_cast<std::size_t>(c)] = e;
      peak = std::max(peak, e);
    }
    double acc = 0.0;
    for (double e : exponents) acc += std::exp(e - peak);
    sum += (peak + std::log(acc)) / std::numbers::ln2;
  }
  return std::clamp(max_bits - sum / static_cast<double>(inner_samples), 0.0, max_bits);
}

CapacityEstimate ergodic_capacity(const LinkSetup& setup, Index outer_samples, Index inner_samples, std::uint64_t seed,
                                  std::uint64_t stream_base, unsigned threads) {
  if (outer_samples < 1) throw InvalidParameters("ergodic_capacity: need at least one channel draw");
  const auto values = parallel_map(static_cast<std::uint64_t>(outer_samples), threads, [&](std::uint64_t i) {
    RngStream rng(seed, stream_base + i);
    const ChannelRealization ch = setup.channel.draw(setup.system, rng);
    const EffectiveChannelTable table = build_effective_table(ch, setup.patterns, setup.system);
    return mutual_information_fixed_channel(table, setup.constellation, setup.system, inner_samples, rng);
  });

  CapacityEstimate out;
  out.snr = setup.system.snr();
  out.inner_samples = inner_samples;
  out.outer_samples = outer_samples;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  if (values.size() > 1) var /= static_cast<double>(values.size() - 1);
  out.bpcu = mean;
  out.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return out;
}

}  // namespace riscsm
