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

#include "riscsm/csm_modem.hpp"

namespace riscsm {

struct CapacityEstimate {
  double snr = 0.0;        // linear E_s / sigma^2
  double bpcu = 0.0;
  double std_error = 0.0;  // from the spread over channel draws
  Index inner_samples = 0;
  Index outer_samples = 0;
};

// Largest M K^N_Q the exhaustive marginal sum accepts.
inline constexpr Index kMaxCapacityCandidates = Index{1} << 16;

// Monte-Carlo mutual information between (k, x) and y for one fixed channel:
// log2(M K^N_Q) - E[log2 sum_{k',x'} exp((|n|^2 - |y - sqrt(E_s) d_k' x'|^2) / sigma^2)],
// with max-shifted log-sum-exp, clamped to [0, log2(M K^N_Q)].
double mutual_information_fixed_channel(const EffectiveChannelTable& table, const Constellation& constellation,
                                        const SystemConfig& config, Index inner_samples, RngStream& rng);

// Mean mutual information over `outer_samples` channel draws. Draw i uses
// RngStream(seed, stream_base + i), so the result is the same for any
// thread count.
CapacityEstimate ergodic_capacity(const LinkSetup& setup, Index outer_samples, Index inner_samples, std::uint64_t seed,
                                  std::uint64_t stream_base = 0, unsigned threads = 1);

}  // namespace riscsm
