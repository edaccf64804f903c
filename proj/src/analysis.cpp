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

#include "riscsm/analysis.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace riscsm {
namespace {

double log_sum_exp(const std::vector<double>& terms) {
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

// log(K^N_Q - 1)
double log_candidates_minus_one(Index groups, Index patterns) {
  const double log_total = static_cast<double>(groups) * std::log(static_cast<double>(patterns));
  return log_total + std::log1p(-std::exp(-log_total));
}

}  // namespace

void BoundInputs::validate() const {
  if (!is_power_of_two(elements) || groups < 1 || elements % groups != 0 || !is_power_of_two(elements / groups))
    throw InvalidDimensions("bound inputs: element and group counts must be powers of two");
  if (!is_power_of_two(patterns) || patterns > elements / groups)
    throw InvalidDimensions("bound inputs: pattern count must be a power of two no larger than the group size");
  if (rx_antennas < 1) throw InvalidDimensions("bound inputs: need at least one receive antenna");
  if (!(snr >= 0.0)) throw InvalidParameters("bound inputs: snr must be non-negative");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) throw std::overflow_error("binomial overflow");
    result = result * factor / i;
  }
  return result;
}

double truncated_binomial_pmf(Index groups, Index patterns, Index zeta) {
  if (groups < 1 || patterns < 2) throw InvalidParameters("truncated_binomial_pmf: need N_Q >= 1 and K >= 2");
  if (zeta < 1 || zeta > groups) throw OutOfSupport("truncated_binomial_pmf: zeta outside [1, N_Q]");
  const double log_p = std::log(static_cast<double>(binomial(static_cast<std::uint64_t>(groups),
                                                             static_cast<std::uint64_t>(zeta)))) +
                       static_cast<double>(zeta) * std::log(static_cast<double>(patterns - 1)) -
                       log_candidates_minus_one(groups, patterns);
  return std::exp(log_p);
}

double mu_zeta(Index zeta, const BoundInputs& in) {
  const double gbar = static_cast<double>(in.elements) * in.snr * static_cast<double>(zeta) /
                      (2.0 * static_cast<double>(in.groups));
  return std::sqrt(gbar / (1.0 + gbar));
}

namespace {

double log_f_zeta(Index zeta, const BoundInputs& in) {
  const double gbar = static_cast<double>(in.elements) * in.snr * static_cast<double>(zeta) /
                      (2.0 * static_cast<double>(in.groups));
  const double mu = std::sqrt(gbar / (1.0 + gbar));
  const double half_one_minus_mu = 0.5 / ((1.0 + gbar) * (1.0 + mu));
  const double half_one_plus_mu = 0.5 * (1.0 + mu);
  const auto n_r = static_cast<std::uint64_t>(in.rx_antennas);
  double sum = 0.0;
  double power = 1.0;
  for (std::uint64_t k = 0; k < n_r; ++k) {
    sum += static_cast<double>(binomial(n_r - 1 + k, k)) * power;
    power *= half_one_plus_mu;
  }
  return static_cast<double>(n_r) * std::log(half_one_minus_mu) + std::log(sum);
}

}  // namespace

double f_zeta(Index zeta, const BoundInputs& in) {
  if (zeta < 1) throw OutOfSupport("f_zeta: zeta must be >= 1");
  if (!(in.snr >= 0.0) || in.rx_antennas < 1) throw InvalidParameters("f_zeta: invalid inputs");
  return std::exp(log_f_zeta(zeta, in));
}

double average_pairwise_error_probability(const BoundInputs& in) {
  in.validate();
  if (in.patterns == 1) return 0.0;
  double sum = 0.0;
  for (Index zeta = 1; zeta <= in.groups; ++zeta)
    sum += truncated_binomial_pmf(in.groups, in.patterns, zeta) * f_zeta(zeta, in);
  return sum;
}

double log_ser_union_bound(const BoundInputs& in) {
  in.validate();
  if (in.patterns == 1) return -std::numeric_limits<double>::infinity();
  const double log_k = std::log(static_cast<double>(in.patterns));
  const double log_k1 = std::log(static_cast<double>(in.patterns - 1));
  std::vector<double> terms;
  for (Index zeta = 1; zeta <= in.groups; ++zeta) {
    terms.push_back(std::log(static_cast<double>(binomial(static_cast<std::uint64_t>(in.groups),
                                                          static_cast<std::uint64_t>(zeta)))) +
                    static_cast<double>(zeta + 1) * log_k1 + log_f_zeta(zeta, in));
  }
  return static_cast<double>(in.groups - 1) * log_k - log_candidates_minus_one(in.groups, in.patterns) +
         log_sum_exp(terms);
}

double ser_union_bound(const BoundInputs& in) { return std::exp(log_ser_union_bound(in)); }

double ber_approx(const BoundInputs& in) { return 0.5 * ser_union_bound(in); }

AsymptoticSer asymptotic_ser(const BoundInputs& in) {
  in.validate();
  const double k = static_cast<double>(in.patterns);
  const double n_q = static_cast<double>(in.groups);
  const double n_r = static_cast<double>(in.rx_antennas);
  double sum = 0.0;
  for (Index zeta = 1; zeta <= in.groups; ++zeta) {
    sum += static_cast<double>(binomial(static_cast<std::uint64_t>(in.groups), static_cast<std::uint64_t>(zeta))) *
           std::pow(k - 1.0, static_cast<double>(zeta)) * std::pow(static_cast<double>(zeta), -n_r);
  }
  const double central =
      static_cast<double>(binomial(2 * static_cast<std::uint64_t>(in.rx_antennas), static_cast<std::uint64_t>(in.rx_antennas)));
  AsymptoticSer out;
  out.constant = (k - 1.0) * std::pow(k, n_q - 1.0) / (2.0 * (std::pow(k, n_q) - 1.0)) *
                 central * sum;
  out.diversity_order = static_cast<int>(in.rx_antennas);
  out.coding_gain = 2.0 * static_cast<double>(in.elements) / n_q * std::pow(out.constant, -1.0 / n_r);
  out.error_probability = std::pow(out.coding_gain * in.snr, -n_r);
  return out;
}

double partition_penalty_ratio(Index rx_antennas, Index groups, Index base_patterns) {
  if (rx_antennas < 1 || groups < 1 || base_patterns < 2)
    throw InvalidParameters("partition_penalty_ratio: need n_R >= 1, N_Q >= 1, K1 >= 2");
  const double k1 = static_cast<double>(base_patterns);
  const double n_q = static_cast<double>(groups);
  const double n_r = static_cast<double>(rx_antennas);
  double sum = 0.0;
  for (Index zeta = 1; zeta <= groups; ++zeta) {
    sum += static_cast<double>(binomial(static_cast<std::uint64_t>(groups), static_cast<std::uint64_t>(zeta))) *
           std::pow(k1 - 1.0, static_cast<double>(zeta)) * std::pow(static_cast<double>(zeta), -n_r);
  }
  const double denom = std::pow(k1, n_q) - 1.0;
  return std::pow(n_q, n_r) * (k1 - 1.0) * std::pow(k1, n_q - 1.0) / (denom * denom) * sum;
}

}  // namespace riscsm
