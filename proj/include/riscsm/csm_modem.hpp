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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "riscsm/channel.hpp"
#include "riscsm/hadamard.hpp"
#include "riscsm/system_config.hpp"

namespace riscsm {

// Pattern choice per group (0-based, k[q] in [0, K)) and the constellation
// label of the transmitted symbol.
struct IndexVector {
  std::vector<Index> k;
  Index symbol = 0;
  friend bool operator==(const IndexVector&, const IndexVector&) = default;
};

// Candidates are ordered lexicographically over (k_1, ..., k_NQ, x); the flat
// index of a candidate is also its natural-binary bit label.
std::uint64_t flat_index(const IndexVector& index, const SystemConfig& config);
IndexVector from_flat_index(std::uint64_t flat, const SystemConfig& config);

// bits.size() must equal config.bits_per_use(). Layout: N_Q index sub-blocks
// of log2 K bits (group 0 first, MSB first), then log2 M modulation bits.
IndexVector map_bits(std::span<const std::uint8_t> bits, const SystemConfig& config);
std::vector<std::uint8_t> demap_bits(const IndexVector& index, const SystemConfig& config);

// Per-group signatures d_{k_q} and the composed supersymbol signatures d_k.
class EffectiveChannelTable {
 public:
  // Each entry is n_R x K; column k is the signature of pattern k in that group.
  explicit EffectiveChannelTable(std::vector<ComplexMatrixd> group_signatures);

  Index groups() const { return static_cast<Index>(groups_.size()); }
  Index patterns() const { return groups_.front().cols(); }
  Index rx_antennas() const { return groups_.front().rows(); }
  // K^N_Q
  Index size() const { return composed_.cols(); }

  const ComplexMatrixd& group(Index q) const { return groups_[static_cast<std::size_t>(q)]; }
  // n_R x K^N_Q, column c is d_k for the k with flat signature index c.
  const ComplexMatrixd& composed() const { return composed_; }
  auto signature(Index flat) const { return composed_.col(flat); }
  ComplexVectord signature(const std::vector<Index>& k) const;

 private:
  std::vector<ComplexMatrixd> groups_;
  ComplexMatrixd composed_;
};

// d_{k_q} = G_q diag(h_q) s_k evaluated element by element.
ComplexVectord group_signature(const ChannelRealization& ch, const PatternSet& patterns, const SystemConfig& config,
                               Index group, Index pattern);

// Uses the periodic structure of the pattern set: sum G_q diag(h_q) over the
// K residue classes of element index mod K, then combine the sums with H_K.
EffectiveChannelTable build_effective_table(const ChannelRealization& ch, const PatternSet& patterns,
                                            const SystemConfig& config);

// y = sqrt(E_s) d x + n, n ~ CN(0, sigma^2 I).
ComplexVectord transmit(const ComplexVectord& signature, cd symbol, const SystemConfig& config, RngStream& rng);

// Exhaustive ML over all (k, x); ties go to the smallest flat index.
std::uint64_t ml_detect_flat(const ComplexVectord& y, const EffectiveChannelTable& table,
                             const Constellation& constellation, const SystemConfig& config);
IndexVector ml_detect(const ComplexVectord& y, const EffectiveChannelTable& table, const Constellation& constellation,
                      const SystemConfig& config);

struct ErrorCounters {
  std::uint64_t trials = 0;
  std::uint64_t symbol_errors = 0;  // supersymbol (k, x) errors
  std::uint64_t group_errors = 0;   // per-group index errors, summed over groups
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;

  ErrorCounters& operator+=(const ErrorCounters& o);
  friend bool operator==(const ErrorCounters&, const ErrorCounters&) = default;
};

// Everything one Monte-Carlo trial needs. When `estimation` is set the
// detector uses MMSE estimates of every group signature instead of the true
// table.
struct LinkSetup {
  LinkSetup(SystemConfig config, ChannelModel channel = {}, std::optional<TrainingConfig> estimation = {});

  SystemConfig system;
  PatternSet patterns;
  Constellation constellation;
  ChannelModel channel;
  std::optional<TrainingConfig> estimation;
};

// One trial: fresh channel, uniform (k, x), noisy reception, ML detection.
ErrorCounters run_trial(const LinkSetup& setup, RngStream& rng);
ErrorCounters run_error_trials(const LinkSetup& setup, std::uint64_t trials, RngStream& rng);

// min over unordered pairs of ||d_k - d_k'|| with E_s = 1.
double min_pairwise_distance(const EffectiveChannelTable& table);

}  // namespace riscsm
