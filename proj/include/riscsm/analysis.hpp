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

#include "riscsm/numerics.hpp"

namespace riscsm {

// Closed-form error analysis for IID Rayleigh fading. `snr` is E_s / sigma^2
// on a linear scale.
struct BoundInputs {
  Index elements = 64;
  Index groups = 1;
  Index patterns = 16;
  Index rx_antennas = 1;
  double snr = 1.0;

  void validate() const;
};

// Exact C(n, k); throws std::overflow_error if the result exceeds 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Pr[zeta = differing groups] for a uniformly chosen wrong supersymbol:
// C(N_Q, zeta) (K-1)^zeta / (K^N_Q - 1), zeta in [1, N_Q].
double truncated_binomial_pmf(Index groups, Index patterns, Index zeta);

// mu(zeta) = sqrt(gbar / (1 + gbar)), gbar = N snr zeta / (2 N_Q).
double mu_zeta(Index zeta, const BoundInputs& in);

// Average PEP given zeta differing groups:
// ((1-mu)/2)^n_R sum_{k<n_R} C(n_R-1+k, k) ((1+mu)/2)^k.
// (1 - mu) is evaluated as 1 / ((1 + gbar)(1 + mu)) to avoid cancellation.
double f_zeta(Index zeta, const BoundInputs& in);

// E_zeta[F(zeta)] under the truncated binomial law.
double average_pairwise_error_probability(const BoundInputs& in);

// Per-group SER union bound:
// K^{N_Q-1} / (K^N_Q - 1) * sum_zeta C(N_Q, zeta) (K-1)^{zeta+1} F(zeta).
// Summed in the log domain; log_ser_union_bound returns the logarithm.
double log_ser_union_bound(const BoundInputs& in);
double ser_union_bound(const BoundInputs& in);

// BER ~ P_e / 2.
double ber_approx(const BoundInputs& in);

struct AsymptoticSer {
  double error_probability = 0.0;  // G_c^{-n_R} SNR^{-n_R}
  int diversity_order = 0;         // n_R
  double coding_gain = 0.0;        // (2N / N_Q) c^{-1/n_R}
  double constant = 0.0;           // c
};

// High-SNR form of the union bound. No gating on snr.
AsymptoticSer asymptotic_ser(const BoundInputs& in);

// Asymptotic SER ratio between a partitioned RIS (N_Q groups, K1 patterns) and
// the unpartitioned RIS with K1^N_Q patterns at the same rate. Always >= 1.
double partition_penalty_ratio(Index rx_antennas, Index groups, Index base_patterns);

}  // namespace riscsm
