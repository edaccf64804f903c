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

#include "riscsm/csm_modem.hpp"

namespace riscsm {

// tau observations z_i = sqrt(E_t) d_{k_q} + w_i of one group/pattern pair,
// all other groups switched off.
std::vector<ComplexVectord> collect_pilots(const ChannelRealization& ch, const PatternSet& patterns,
                                           const SystemConfig& config, Index group, Index pattern,
                                           const TrainingConfig& training, RngStream& rng);

// Scalar shrinkage of the pilot sum:
//   sqrt(E_t) N / (E_t N tau + N_Q sigma_t^2) * sum z_i,
// where sigma_t^2 is the training noise variance (1 unless overridden).
ComplexVectord mmse_estimate(std::span<const ComplexVectord> pilots, const TrainingConfig& training, Index elements,
                             Index groups);

// Per-component MSE of mmse_estimate with unit training noise:
// N / (E_t N tau + N_Q).
double theoretical_mse(Index elements, Index groups, double training_energy, Index repetitions);

// Estimates all N_Q * K group signatures (one pilot slot per pair) and
// composes them into a detection table.
EffectiveChannelTable estimate_table(const ChannelRealization& ch, const PatternSet& patterns,
                                     const SystemConfig& config, const TrainingConfig& training, RngStream& rng);

}  // namespace riscsm
