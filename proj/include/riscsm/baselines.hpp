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

#include <string_view>
#include <vector>

#include "riscsm/csm_modem.hpp"

namespace riscsm {

enum class Scheme { csm, ris_mimo, ris_gsm, ris_cim };

std::string_view scheme_name(Scheme scheme);
// Accepts "csm", "ris-mimo", "ris-gsm", "ris-cim" (case-insensitive, optional
// "ris-" prefix for csm). Throws InvalidParameters otherwise.
Scheme parse_scheme(std::string_view name);

// Parameters of the comparison schemes. Only the fields relevant to `scheme`
// are read.
struct BaselineConfig {
  Scheme scheme = Scheme::ris_mimo;
  Index tx_order = 1;       // transmitter QAM order
  Index ris_phases = 2;     // RIS-MIMO PSK order
  Index groups = 1;         // RIS-MIMO and RIS-GSM partitions, RIS-CSM N_Q
  Index active_groups = 1;  // RIS-GSM
  Index codes = 1;          // RIS-CIM code count
  Index code_length = 1;    // RIS-CIM chips per symbol
  Index patterns = 2;       // RIS-CSM K

  void validate() const;
  // Number of index candidates the receiver chooses among (excluding x).
  Index index_count() const;
  // Bits carried by one transmission (over all chips).
  int bits_per_transmission() const;
  // Bits per channel use.
  double spectral_efficiency() const;
};

double spectral_efficiency(const BaselineConfig& config);

// Lexicographic combinations of `active` out of `groups`, first `count` only.
std::vector<std::vector<Index>> activation_patterns(Index groups, Index active, Index count);

// Monte-Carlo link for RIS-MIMO, RIS-GSM and RIS-CIM. Every scheme reduces
// to y = sqrt(E_s) c_i x + n with a channel-dependent codebook {c_i} of
// stacked (n_R * chips) signatures, detected by joint ML over (i, x).
// The candidate flat index i * M_tx + x is the natural-binary bit label.
// `system` supplies N, n_R, E_s and sigma^2.
class BaselineLink {
 public:
  BaselineLink(SystemConfig system, BaselineConfig scheme, ChannelModel channel = {});

  const SystemConfig& system() const { return system_; }
  const BaselineConfig& scheme() const { return scheme_; }
  const Constellation& constellation() const { return constellation_; }

  // Columns are the candidate signatures for one channel draw.
  ComplexMatrixd codebook(const ChannelRealization& ch) const;
  ErrorCounters run_trial(RngStream& rng) const;
  ErrorCounters run_trials(std::uint64_t trials, RngStream& rng) const;

 private:
  SystemConfig system_;
  BaselineConfig scheme_;
  ChannelModel channel_;
  Constellation constellation_;
  Constellation ris_phases_;
  std::vector<std::vector<Index>> activations_;
  Eigen::MatrixXi codes_;
};

// Single-trial helpers over i.i.d. channels.
ErrorCounters ris_mimo_trial(const SystemConfig& system, const BaselineConfig& scheme, RngStream& rng);
ErrorCounters ris_gsm_trial(const SystemConfig& system, const BaselineConfig& scheme, RngStream& rng);
ErrorCounters ris_cim_trial(const SystemConfig& system, const BaselineConfig& scheme, RngStream& rng);

}  // namespace riscsm
