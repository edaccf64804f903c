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
#include <string>
#include <string_view>
#include <vector>

#include "riscsm/baselines.hpp"
#include "riscsm/channel.hpp"
#include "riscsm/system_config.hpp"

namespace riscsm {

enum class Metric { per_group_ser, supersymbol_ser, ber, capacity, mse, mindist_cdf, analytic_bound, asymptote };
enum class Axis { snr, ebno };

std::string_view metric_name(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);
std::string_view axis_name(Axis axis);
std::optional<Axis> parse_axis(std::string_view name);

bool is_rate_metric(Metric metric);

struct SnrRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  // start, start + step, ... up to stop (inclusive, with a small tolerance).
  std::vector<double> points() const;
};

// "START:STOP:STEP" in dB. Returns nullopt on malformed text.
std::optional<SnrRange> parse_snr_range(std::string_view text);

// One sweep. The axis value of each point means:
//   error-rate and capacity metrics: SNR (or Eb/N0) in dB, sigma^2 = E_s / snr;
//   mse: training SNR in dB (E_t with unit training noise);
//   mindist-cdf: distance threshold;
//   analytic-bound, asymptote: SNR in dB, no trials.
struct SweepSpec {
  Scheme scheme = Scheme::csm;
  SystemConfig system;
  BaselineConfig baseline;
  std::optional<CorrelationSpec> correlation;  // nullopt: i.i.d. Rayleigh
  std::optional<TrainingConfig> estimation;    // nullopt: perfect CSI
  Metric metric = Metric::ber;
  Axis axis = Axis::snr;
  SnrRange range;
  std::uint64_t trials = 100000;  // per-point budget; channel draws for capacity/mindist
  std::uint64_t min_errors = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: all available cores
  Index inner_samples = 2000;  // capacity only

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct SweepRecord {
  std::string scheme;
  Index elements = 0;
  Index groups = 0;
  Index patterns = 0;
  Index rx_antennas = 0;
  Index modulation_order = 0;
  double snr_db = 0.0;
  std::string metric;
  double value = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double std_err = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct SweepResult {
  std::vector<SweepRecord> records;
};

// Runs every point of the sweep. Point i uses RNG streams i * 2^40 + trial,
// so the output is bit-identical for any thread count.
SweepResult run_sweep(const SweepSpec& spec);

// Trials are grouped into chunks of this size; adaptive stopping is checked
// after each chunk in index order.
inline constexpr std::uint64_t kTrialChunk = 256;

// Least-squares slope of -log10(value) against log10(snr) over points with
// value in [1e-5, 1e-2]. Throws InsufficientPoints below three such points.
double diversity_slope(const SweepResult& result);
double diversity_slope(const std::vector<double>& snr_db, const std::vector<double>& values);

}  // namespace riscsm
