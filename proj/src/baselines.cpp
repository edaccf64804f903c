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

#include "riscsm/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <string>

#include "riscsm/analysis.hpp"

namespace riscsm {

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::csm: return "ris-csm";
    case Scheme::ris_mimo: return "ris-mimo";
    case Scheme::ris_gsm: return "ris-gsm";
    case Scheme::ris_cim: return "ris-cim";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "csm" || s == "ris-csm") return Scheme::csm;
  if (s == "ris-mimo" || s == "mimo") return Scheme::ris_mimo;
  if (s == "ris-gsm" || s == "gsm") return Scheme::ris_gsm;
  if (s == "ris-cim" || s == "cim") return Scheme::ris_cim;
  throw InvalidParameters("unknown scheme '" + std::string(name) + "'");
}

namespace {

Index gsm_index_count(Index groups, Index active) {
  const std::uint64_t combos = binomial(static_cast<int>(groups), static_cast<int>(active));
  return static_cast<Index>(std::bit_floor(combos));
}

}  // namespace

void BaselineConfig::validate() const {
  if (!is_power_of_two(tx_order)) throw InvalidParameters("tx_order must be a power of two");
  switch (scheme) {
    case Scheme::csm:
      if (groups < 1 || patterns < 2 || !is_power_of_two(patterns))
        throw InvalidParameters("RIS-CSM needs groups >= 1 and a power-of-two pattern count >= 2");
      break;
    case Scheme::ris_mimo:
      if (groups < 1) throw InvalidParameters("RIS-MIMO needs at least one group");
      if (ris_phases < 2 || !is_power_of_two(ris_phases))
        throw InvalidParameters("RIS-MIMO phase count must be a power of two >= 2");
      break;
    case Scheme::ris_gsm:
      if (groups < 1 || active_groups < 1 || active_groups > groups)
        throw InvalidParameters("RIS-GSM needs 1 <= active_groups <= groups");
      if (groups > 62) throw InvalidParameters("RIS-GSM supports at most 62 groups");
      break;
    case Scheme::ris_cim:
      if (code_length < 1 || !is_power_of_two(code_length))
        throw InvalidParameters("RIS-CIM code length must be a power of two");
      if (codes < 1 || codes > code_length || !is_power_of_two(codes))
        throw InvalidParameters("RIS-CIM needs a power-of-two code count no larger than the code length");
      break;
  }
}

Index BaselineConfig::index_count() const {
  switch (scheme) {
    case Scheme::csm: {
      Index n = 1;
      for (Index q = 0; q < groups; ++q) n *= patterns;
      return n;
    }
    case Scheme::ris_mimo: {
      Index n = 1;
      for (Index q = 0; q < groups; ++q) n *= ris_phases;
      return n;
    }
    case Scheme::ris_gsm: return gsm_index_count(groups, active_groups);
    case Scheme::ris_cim: return codes;
  }
  return 1;
}

int BaselineConfig::bits_per_transmission() const {
  return log2_exact(tx_order) + std::countr_zero(static_cast<std::uint64_t>(index_count()));
}

double BaselineConfig::spectral_efficiency() const {
  validate();
  const double bits = bits_per_transmission();
  return scheme == Scheme::ris_cim ? bits / static_cast<double>(code_length) : bits;
}

double spectral_efficiency(const BaselineConfig& config) { return config.spectral_efficiency(); }

std::vector<std::vector<Index>> activation_patterns(Index groups, Index active, Index count) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> combo(static_cast<std::size_t>(active));
  for (Index i = 0; i < active; ++i) combo[static_cast<std::size_t>(i)] = i;
  while (static_cast<Index>(out.size()) < count) {
    out.push_back(combo);
    // Advance to the next combination in lexicographic order.
    Index i = active - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == groups - active + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < active; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

BaselineLink::BaselineLink(SystemConfig system, BaselineConfig scheme, ChannelModel channel)
    : system_(system),
      scheme_(scheme),
      channel_(std::move(channel)),
      constellation_((scheme.validate(), Constellation::qam(scheme.tx_order))),
      ris_phases_(Constellation::psk(scheme.scheme == Scheme::ris_mimo ? scheme.ris_phases : 1)) {
  if (scheme_.scheme == Scheme::csm) throw InvalidParameters("BaselineLink does not run RIS-CSM; use LinkSetup");
  if (system_.elements < 1 || system_.rx_antennas < 1) throw InvalidDimensions("baseline: N and n_R must be positive");
  if (scheme_.scheme != Scheme::ris_cim && system_.elements % scheme_.groups != 0)
    throw InvalidDimensions("baseline: groups must divide the element count");
  if (!(system_.symbol_energy >= 0.0) || !(system_.noise_variance >= 0.0))
    throw InvalidParameters("baseline: energies must be non-negative");
  if (scheme_.scheme == Scheme::ris_gsm)
    activations_ = activation_patterns(scheme_.groups, scheme_.active_groups, scheme_.index_count());
  if (scheme_.scheme == Scheme::ris_cim) codes_ = sylvester(scheme_.code_length);
}

ComplexMatrixd BaselineLink::codebook(const ChannelRealization& ch) const {
  const Index rx = system_.rx_antennas;
  const Index partitions = scheme_.scheme == Scheme::ris_cim ? 1 : scheme_.groups;
  const Index width = system_.elements / partitions;

  // Per-partition reflected sum G_q h_q with all-ones reflection.
  ComplexMatrixd sums(rx, partitions);
  for (Index q = 0; q < partitions; ++q)
    sums.col(q) = ch.G.middleCols(q * width, width) * ch.h.segment(q * width, width);

  const Index count = scheme_.index_count();
  switch (scheme_.scheme) {
    case Scheme::ris_mimo: {
      ComplexMatrixd book = ComplexMatrixd::Zero(rx, count);
      for (Index c = 0; c < count; ++c) {
        // Group 0 takes the most significant phase digit.
        Index rest = c;
        for (Index q = partitions - 1; q >= 0; --q) {
          book.col(c) += ris_phases_[rest % scheme_.ris_phases] * sums.col(q);
          rest /= scheme_.ris_phases;
        }
      }
      return book;
    }
    case Scheme::ris_gsm: {
      ComplexMatrixd book = ComplexMatrixd::Zero(rx, count);
      for (Index c = 0; c < count; ++c)
        for (Index q : activations_[static_cast<std::size_t>(c)]) book.col(c) += sums.col(q);
      return book;
    }
    case Scheme::ris_cim: {
      const Index chips = scheme_.code_length;
      ComplexMatrixd book(rx * chips, count);
      for (Index c = 0; c < count; ++c)
        for (Index t = 0; t < chips; ++t) book.block(t * rx, c, rx, 1) = static_cast<double>(codes_(c, t)) * sums.col(0);
      return book;
    }
    case Scheme::csm: break;
  }
  return {};
}

ErrorCounters BaselineLink::run_trial(RngStream& rng) const {
  const ChannelRealization ch = channel_.draw(system_.elements, system_.rx_antennas, rng);
  const EffectiveChannelTable table({codebook(ch)});

  const auto m = static_cast<std::uint64_t>(scheme_.tx_order);
  const std::uint64_t sent = rng.uniform_index(static_cast<std::uint64_t>(table.size()) * m);
  const ComplexVectord y = transmit(table.signature(static_cast<Index>(sent / m)).eval(),
                                    constellation_[static_cast<Index>(sent % m)], system_, rng);
  const std::uint64_t detected = ml_detect_flat(y, table, constellation_, system_);

  ErrorCounters out;
  out.trials = 1;
  out.bits = static_cast<std::uint64_t>(scheme_.bits_per_transmission());
  if (detected == sent) return out;
  out.symbol_errors = 1;
  out.group_errors = (detected / m) != (sent / m);
  out.bit_errors = static_cast<std::uint64_t>(std::popcount(detected ^ sent));
  return out;
}

ErrorCounters BaselineLink::run_trials(std::uint64_t trials, RngStream& rng) const {
  if (trials < 1) throw InvalidParameters("run_trials: need at least one trial");
  ErrorCounters total;
  for (std::uint64_t t = 0; t < trials; ++t) total += run_trial(rng);
  return total;
}

namespace {

ErrorCounters single_trial(const SystemConfig& system, BaselineConfig scheme, Scheme expected, RngStream& rng) {
  scheme.scheme = expected;
  return BaselineLink(system, scheme).run_trial(rng);
}

}  // namespace

ErrorCounters ris_mimo_trial(const SystemConfig& system, const BaselineConfig& scheme, RngStream& rng) {
  return single_trial(system, scheme, Scheme::ris_mimo, rng);
}
ErrorCounters ris_gsm_trial(const SystemConfig& system, const BaselineConfig& scheme, RngStream& rng) {
  return single_trial(system, scheme, Scheme::ris_gsm, rng);
}
ErrorCounters ris_cim_trial(const SystemConfig& system, const BaselineConfig& scheme, RngStream& rng) {
  return single_trial(system, scheme, Scheme::ris_cim, rng);
}

}  // namespace riscsm
