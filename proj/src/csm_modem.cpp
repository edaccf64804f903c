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

#include "riscsm/csm_modem.hpp"

#include <bit>
#include <limits>
#include <numbers>

#include "riscsm/mmse_estimation.hpp"

namespace riscsm {

Index SystemConfig::signature_count() const {
  Index count = 1;
  for (Index q = 0; q < groups; ++q) count *= patterns;
  return count;
}

void SystemConfig::validate() const {
  if (!is_power_of_two(elements)) throw InvalidDimensions("RIS element count must be a power of two");
  if (groups < 1 || elements % groups != 0) throw InvalidDimensions("group count must divide the element count");
  if (!is_power_of_two(group_size())) throw InvalidDimensions("group size must be a power of two");
  if (!is_power_of_two(patterns) || patterns > group_size())
    throw InvalidDimensions("pattern count must be a power of two no larger than the group size");
  if (rx_antennas < 1) throw InvalidDimensions("need at least one receive antenna");
  if (!is_power_of_two(modulation_order)) throw InvalidDimensions("modulation order must be a power of two");
  if (bits_per_use() > 62) throw InvalidDimensions("more than 62 bits per channel use");
  if (!(symbol_energy >= 0.0) || !(noise_variance >= 0.0))
    throw InvalidParameters("symbol energy and noise variance must be non-negative");
}

void TrainingConfig::validate() const {
  if (repetitions < 1) throw InvalidParameters("training needs at least one repetition");
  if (!(energy >= 0.0) || !(noise_variance >= 0.0))
    throw InvalidParameters("training energy and noise variance must be non-negative");
}

Constellation Constellation::qam(Index order) {
  if (!is_power_of_two(order)) throw InvalidParameters("QAM order must be a power of two");
  const int bits = log2_exact(order);
  std::vector<cd> points;
  points.reserve(static_cast<std::size_t>(order));
  if (order == 1) {
    points.emplace_back(1.0, 0.0);
  } else if (order == 2) {
    points = {{-1.0, 0.0}, {1.0, 0.0}};
  } else if (bits % 2 == 0 || order == 8) {
    const Index side_i = order == 8 ? 4 : Index{1} << (bits / 2);
    const Index side_q = order / side_i;
    for (Index i = 0; i < side_i; ++i)
      for (Index q = 0; q < side_q; ++q)
        points.emplace_back(static_cast<double>(2 * i - (side_i - 1)), static_cast<double>(2 * q - (side_q - 1)));
  } else {
    // Cross constellation: a (6 * 2^t)-square grid with (2^t)-square corners removed.
    const Index side = 6 * (Index{1} << ((bits - 5) / 2));
    const Index corner = side / 6;
    for (Index i = 0; i < side; ++i) {
      for (Index q = 0; q < side; ++q) {
        const bool edge_i = i < corner || i >= side - corner;
        const bool edge_q = q < corner || q >= side - corner;
        if (edge_i && edge_q) continue;
        points.emplace_back(static_cast<double>(2 * i - (side - 1)), static_cast<double>(2 * q - (side - 1)));
      }
    }
  }
  Constellation c(std::move(points));
  const double scale = 1.0 / std::sqrt(c.average_energy());
  for (auto& p : c.points_) p *= scale;
  return c;
}

Constellation Constellation::psk(Index order) {
  if (order < 1) throw InvalidParameters("PSK order must be positive");
  std::vector<cd> points;
  for (Index m = 0; m < order; ++m)
    points.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(order)));
  return Constellation(std::move(points));
}

double Constellation::average_energy() const {
  double sum = 0.0;
  for (const auto& p : points_) sum += std::norm(p);
  return sum / static_cast<double>(points_.size());
}

std::uint64_t flat_index(const IndexVector& index, const SystemConfig& config) {
  if (static_cast<Index>(index.k.size()) != config.groups) throw LengthMismatch("index vector has wrong group count");
  std::uint64_t flat = 0;
  for (Index kq : index.k) {
    if (kq < 0 || kq >= config.patterns) throw IndexOutOfRange("pattern index out of range");
    flat = flat * static_cast<std::uint64_t>(config.patterns) + static_cast<std::uint64_t>(kq);
  }
  if (index.symbol < 0 || index.symbol >= config.modulation_order) throw IndexOutOfRange("symbol index out of range");
  return flat * static_cast<std::uint64_t>(config.modulation_order) + static_cast<std::uint64_t>(index.symbol);
}

IndexVector from_flat_index(std::uint64_t flat, const SystemConfig& config) {
  IndexVector index;
  index.symbol = static_cast<Index>(flat % static_cast<std::uint64_t>(config.modulation_order));
  flat /= static_cast<std::uint64_t>(config.modulation_order);
  index.k.assign(static_cast<std::size_t>(config.groups), 0);
  for (Index q = config.groups - 1; q >= 0; --q) {
    index.k[static_cast<std::size_t>(q)] = static_cast<Index>(flat % static_cast<std::uint64_t>(config.patterns));
    flat /= static_cast<std::uint64_t>(config.patterns);
  }
  return index;
}

IndexVector map_bits(std::span<const std::uint8_t> bits, const SystemConfig& config) {
  if (static_cast<int>(bits.size()) != config.bits_per_use()) throw LengthMismatch("map_bits: wrong bit count");
  std::uint64_t flat = 0;
  for (auto b : bits) flat = (flat << 1) | (b & 1u);
  return from_flat_index(flat, config);
}

std::vector<std::uint8_t> demap_bits(const IndexVector& index, const SystemConfig& config) {
  const std::uint64_t flat = flat_index(index, config);
  const int count = config.bits_per_use();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) bits[static_cast<std::size_t>(i)] = (flat >> (count - 1 - i)) & 1u;
  return bits;
}

EffectiveChannelTable::EffectiveChannelTable(std::vector<ComplexMatrixd> group_signatures)
    : groups_(std::move(group_signatures)) {
  if (groups_.empty()) throw InvalidDimensions("effective channel table needs at least one group");
  const Index rx = groups_.front().rows();
  const Index k = groups_.front().cols();
  for (const auto& g : groups_)
    if (g.rows() != rx || g.cols() != k) throw DimensionMismatch("group signature tables differ in shape");

  // Build column by column, extending the composition one group at a time.
  composed_ = groups_.front();
  for (std::size_t q = 1; q < groups_.size(); ++q) {
    ComplexMatrixd next(rx, composed_.cols() * k);
    for (Index prefix = 0; prefix < composed_.cols(); ++prefix)
      for (Index kq = 0; kq < k; ++kq) next.col(prefix * k + kq) = composed_.col(prefix) + groups_[q].col(kq);
    composed_ = std::move(next);
  }
}

ComplexVectord EffectiveChannelTable::signature(const std::vector<Index>& k) const {
  if (static_cast<Index>(k.size()) != groups()) throw LengthMismatch("signature: wrong group count");
  Index flat = 0;
  for (Index kq : k) {
    if (kq < 0 || kq >= patterns()) throw IndexOutOfRange("signature: pattern index out of range");
    flat = flat * patterns() + kq;
  }
  return composed_.col(flat);
}

ComplexVectord group_signature(const ChannelRealization& ch, const PatternSet& patterns, const SystemConfig& config,
                               Index group, Index pattern) {
  const Index n = config.group_size();
  if (group < 0 || group >= config.groups || pattern < 0 || pattern >= patterns.count())
    throw IndexOutOfRange("group_signature: index out of range");
  if (patterns.group_size() != n || ch.elements() != config.elements)
    throw DimensionMismatch("group_signature: channel, patterns and config disagree");
  ComplexVectord d = ComplexVectord::Zero(ch.rx_antennas());
  const auto h = ch.group_h(group, n);
  const auto g = ch.group_G(group, n);
  for (Index j = 0; j < n; ++j) d += g.col(j) * (h(j) * static_cast<double>(patterns.pattern(pattern)(j)));
  return d;
}

EffectiveChannelTable build_effective_table(const ChannelRealization& ch, const PatternSet& patterns,
                                            const SystemConfig& config) {
  const Index n = config.group_size();
  if (ch.elements() != config.elements || ch.rx_antennas() != config.rx_antennas)
    throw DimensionMismatch("build_effective_table: channel does not match the configuration");
  if (patterns.group_size() != n || patterns.count() != config.patterns)
    throw DimensionMismatch("build_effective_table: pattern set does not match the configuration");

  const Index k = patterns.count();

  const Eigen::MatrixXd base = patterns.base().cast<double>();
  std::vector<ComplexMatrixd> groups;
  groups.reserve(static_cast<std::size_t>(config.groups));
  ComplexMatrixd class_sums(ch.rx_antennas(), k);
  for (Index q = 0; q < config.groups; ++q) {
    const auto h = ch.group_h(q, n);
    const auto g = ch.group_G(q, n);
    class_sums.setZero();
    for (Index j = 0; j < n; ++j) class_sums.col(j % k) += g.col(j) * h(j);
    groups.emplace_back(class_sums * base.transpose());
  }
  return EffectiveChannelTable(std::move(groups));
}

ComplexVectord transmit(const ComplexVectord& signature, cd symbol, const SystemConfig& config, RngStream& rng) {
  const double amplitude = std::sqrt(config.symbol_energy);
  const double noise_scale = std::sqrt(config.noise_variance);
  ComplexVectord y(signature.size());
  for (Index i = 0; i < y.size(); ++i) y(i) = amplitude * symbol * signature(i) + noise_scale * rng.cn01();
  return y;
}

std::uint64_t ml_detect_flat(const ComplexVectord& y, const EffectiveChannelTable& table,
                             const Constellation& constellation, const SystemConfig& config) {
  const ComplexMatrixd& d = table.composed();
  const double amplitude = std::sqrt(config.symbol_energy);
  const Index m = constellation.size();
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_index = 0;
  std::uint64_t candidate = 0;
  for (Index c = 0; c < d.cols(); ++c) {
    for (Index s = 0; s < m; ++s, ++candidate) {
      const cd scale = amplitude * constellation[s];
      double dist = 0.0;
      for (Index r = 0; r < y.size(); ++r) dist += std::norm(y(r) - scale * d(r, c));
      if (dist < best) {
        best = dist;
        best_index = candidate;
      }
    }
  }
  return best_index;
}

IndexVector ml_detect(const ComplexVectord& y, const EffectiveChannelTable& table, const Constellation& constellation,
                      const SystemConfig& config) {
  return from_flat_index(ml_detect_flat(y, table, constellation, config), config);
}

ErrorCounters& ErrorCounters::operator+=(const ErrorCounters& o) {
  trials += o.trials;
  symbol_errors += o.symbol_errors;
  group_errors += o.group_errors;
  bit_errors += o.bit_errors;
  bits += o.bits;
  return *this;
}

LinkSetup::LinkSetup(SystemConfig config, ChannelModel channel_model, std::optional<TrainingConfig> training)
    : system(config),
      patterns((config.validate(), pattern_set(config.group_size(), config.patterns))),
      constellation(Constellation::qam(config.modulation_order)),
      channel(std::move(channel_model)),
      estimation(training) {
  if (estimation) estimation->validate();
}

ErrorCounters run_trial(const LinkSetup& setup, RngStream& rng) {
  const SystemConfig& config = setup.system;
  const ChannelRealization ch = setup.channel.draw(config, rng);
  const EffectiveChannelTable table = build_effective_table(ch, setup.patterns, config);

  const auto m = static_cast<std::uint64_t>(config.modulation_order);
  const std::uint64_t sent = rng.uniform_index(static_cast<std::uint64_t>(table.size()) * m);
  const ComplexVectord y = transmit(table.signature(static_cast<Index>(sent / m)),
                                    setup.constellation[static_cast<Index>(sent % m)], config, rng);

  std::uint64_t detected;
  if (setup.estimation) {
    const EffectiveChannelTable estimated = estimate_table(ch, setup.patterns, config, *setup.estimation, rng);
    detected = ml_detect_flat(y, estimated, setup.constellation, config);
  } else {
    detected = ml_detect_flat(y, table, setup.constellation, config);
  }

  ErrorCounters out;
  out.trials = 1;
  out.bits = static_cast<std::uint64_t>(config.bits_per_use());
  if (detected == sent) return out;
  out.symbol_errors = 1;
  out.bit_errors = static_cast<std::uint64_t>(std::popcount(detected ^ sent));
  std::uint64_t a = sent / m, b = detected / m;
  for (Index q = 0; q < config.groups; ++q) {
    const auto k = static_cast<std::uint64_t>(config.patterns);
    out.group_errors += (a % k) != (b % k);
    a /= k;
    b /= k;
  }
  return out;
}

ErrorCounters run_error_trials(const LinkSetup& setup, std::uint64_t trials, RngStream& rng) {
  if (trials < 1) throw InvalidParameters("run_error_trials: need at least one trial");
  ErrorCounters total;
  for (std::uint64_t t = 0; t < trials; ++t) total += run_trial(setup, rng);
  return total;
}

double min_pairwise_distance(const EffectiveChannelTable& table) {
  const ComplexMatrixd& d = table.composed();
  if (d.cols() < 2) throw TooFewSignatures("min_pairwise_distance: need at least two signatures");
  double best = std::numeric_limits<double>::infinity();
  for (Index a = 0; a < d.cols(); ++a)
    for (Index b = a + 1; b < d.cols(); ++b) best = std::min(best, (d.col(a) - d.col(b)).squaredNorm());
  return std::sqrt(best);
}

}  // namespace riscsm
