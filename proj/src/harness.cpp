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

#include "riscsm/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "riscsm/analysis.hpp"
#include "riscsm/capacity.hpp"
#include "riscsm/mmse_estimation.hpp"
#include "riscsm/parallel.hpp"

namespace riscsm {

namespace {

struct MetricName {
  Metric metric;
  std::string_view name;
};

constexpr MetricName kMetricNames[] = {
    {Metric::per_group_ser, "per-group-ser"}, {Metric::supersymbol_ser, "supersymbol-ser"},
    {Metric::ber, "ber"},                     {Metric::capacity, "capacity"},
    {Metric::mse, "mse"},                     {Metric::mindist_cdf, "mindist-cdf"},
    {Metric::analytic_bound, "analytic-bound"}, {Metric::asymptote, "asymptote"},
};

}  // namespace

std::string_view metric_name(Metric metric) {
  for (const auto& m : kMetricNames)
    if (m.metric == metric) return m.name;
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (const auto& m : kMetricNames)
    if (m.name == name) return m.metric;
  return std::nullopt;
}

std::string_view axis_name(Axis axis) { return axis == Axis::snr ? "snr" : "ebno"; }

std::optional<Axis> parse_axis(std::string_view name) {
  if (name == "snr") return Axis::snr;
  if (name == "ebno") return Axis::ebno;
  return std::nullopt;
}

bool is_rate_metric(Metric metric) {
  return metric == Metric::per_group_ser || metric == Metric::supersymbol_ser || metric == Metric::ber;
}

std::vector<double> SnrRange::points() const {
  std::vector<double> out;
  if (!(step > 0.0) || stop < start) return out;
  const auto count = static_cast<std::uint64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::optional<SnrRange> parse_snr_range(std::string_view text) {
  double parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos) return std::nullopt;
    const std::string_view field = text.substr(pos, end - pos);
    const char* first = field.data();
    if (!field.empty() && field.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), parts[i]);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) return std::nullopt;
    pos = end + 1;
  }
  return SnrRange{parts[0], parts[1], parts[2]};
}

void SweepSpec::validate() const {
  if (!(range.step > 0.0)) throw ConfigError("sweep.snr.step", "must be positive");
  if (!std::isfinite(range.start) || !std::isfinite(range.stop))
    throw ConfigError("sweep.snr", "start and stop must be finite");
  if (range.stop < range.start) throw ConfigError("sweep.snr.stop", "must not be below start");
  if (trials < 1) throw ConfigError("sweep.trials", "must be at least 1");
  if (min_errors < 1) throw ConfigError("sweep.min_errors", "must be at least 1");
  if (inner_samples < 1) throw ConfigError("sweep.inner_samples", "must be at least 1");

  const bool csm_only = metric == Metric::capacity || metric == Metric::mse || metric == Metric::mindist_cdf ||
                        metric == Metric::analytic_bound || metric == Metric::asymptote;
  if (scheme != Scheme::csm && csm_only)
    throw ConfigError("sweep.metric", std::string(metric_name(metric)) + " is only defined for ris-csm");
  if (axis == Axis::ebno && (metric == Metric::mse || metric == Metric::mindist_cdf))
    throw ConfigError("sweep.axis", "ebno is meaningless for " + std::string(metric_name(metric)));

  try {
    if (scheme == Scheme::csm) {
      system.validate();
    } else {
      BaselineConfig b = baseline;
      b.scheme = scheme;
      b.validate();
      if (system.elements < 1 || !is_power_of_two(system.elements))
        throw ConfigError("system.N", "must be a power of two");
      if (system.rx_antennas < 1) throw ConfigError("system.n_R", "must be at least 1");
      if (scheme != Scheme::ris_cim && system.elements % b.groups != 0)
        throw ConfigError("baseline.N_Q", "must divide system.N");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(scheme == Scheme::csm ? "system" : "baseline", e.what());
  }
  if (!(system.symbol_energy >= 0.0)) throw ConfigError("system.E_s", "must be non-negative");
  if (!(system.noise_variance > 0.0)) throw ConfigError("system.sigma2", "must be positive");

  if (correlation) {
    try {
      correlation->validate();
    } catch (const Error& e) {
      throw ConfigError("channel", e.what());
    }
    if (correlation->columns * correlation->rows != system.elements)
      throw ConfigError("channel.N_h", "N_h * N_v must equal system.N");
  }
  if (estimation) {
    if (scheme != Scheme::csm) throw ConfigError("estimation", "imperfect CSI is only modelled for ris-csm");
    try {
      estimation->validate();
    } catch (const Error& e) {
      throw ConfigError("estimation", e.what());
    }
  }
  if (metric == Metric::capacity) {
    const double candidates = std::pow(static_cast<double>(system.patterns), static_cast<double>(system.groups)) *
                              static_cast<double>(system.modulation_order);
    if (candidates > static_cast<double>(kMaxCapacityCandidates))
      throw ConfigError("system", "capacity needs M * K^N_Q <= 65536");
  }
  if (metric == Metric::mindist_cdf && system.signature_count() < 2)
    throw ConfigError("system.K", "min-distance needs at least two signatures");
}

namespace {

struct PointTally {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t samples = 0;
};

std::uint64_t stream_id(std::uint64_t point, std::uint64_t trial) { return (point << 40) | trial; }

// Runs trials in chunk order until the selected error count reaches the
// target or the budget runs out. A window of chunks is computed in parallel
// and folded in index order, so the stopping point is thread-count
// independent.
template <typename Trial, typename Errors>
ErrorCounters run_adaptive(const SweepSpec& spec, unsigned threads, std::uint64_t point, Trial&& trial,
                           Errors&& errors_of) {
  const std::uint64_t chunks = (spec.trials + kTrialChunk - 1) / kTrialChunk;
  const std::uint64_t window = std::max<unsigned>(threads, 1);
  ErrorCounters total;
  for (std::uint64_t base = 0; base < chunks; base += window) {
    const std::uint64_t span = std::min(window, chunks - base);
    const auto parts = parallel_map(span, threads, [&](std::uint64_t j) {
      const std::uint64_t first = (base + j) * kTrialChunk;
      const std::uint64_t last = std::min(first + kTrialChunk, spec.trials);
      ErrorCounters c;
      for (std::uint64_t t = first; t < last; ++t) {
        RngStream rng(spec.seed, stream_id(point, t));
        c += trial(rng);
      }
      return c;
    });
    for (const ErrorCounters& c : parts) {
      total += c;
      if (errors_of(total) >= spec.min_errors) return total;
    }
  }
  return total;
}

// Binomial standard error. With few errors the plug-in estimate is too
// optimistic, so the rate is replaced by (errors + 1) / (units + 2).
double rate_std_err(std::uint64_t errors, double units, std::uint64_t trials) {
  if (units <= 0.0) return 0.0;
  double p = static_cast<double>(errors) / units;
  if (errors < std::min<std::uint64_t>(trials, 25)) p = (static_cast<double>(errors) + 1.0) / (units + 2.0);
  return std::sqrt(p * (1.0 - p) / units);
}

ChannelModel make_channel(const SweepSpec& spec) {
  return spec.correlation ? ChannelModel::correlated(*spec.correlation) : ChannelModel::iid();
}

SweepRecord base_record(const SweepSpec& spec) {
  SweepRecord r;
  r.scheme = std::string(scheme_name(spec.scheme));
  r.elements = spec.system.elements;
  r.rx_antennas = spec.system.rx_antennas;
  r.metric = std::string(metric_name(spec.metric));
  r.seed = spec.seed;
  switch (spec.scheme) {
    case Scheme::csm:
      r.groups = spec.system.groups;
      r.patterns = spec.system.patterns;
      r.modulation_order = spec.system.modulation_order;
      break;
    case Scheme::ris_mimo:
      r.groups = spec.baseline.groups;
      r.patterns = spec.baseline.ris_phases;
      r.modulation_order = spec.baseline.tx_order;
      break;
    case Scheme::ris_gsm: {
      BaselineConfig b = spec.baseline;
      b.scheme = Scheme::ris_gsm;
      r.groups = b.groups;
      r.patterns = b.index_count();
      r.modulation_order = b.tx_order;
      break;
    }
    case Scheme::ris_cim:
      r.groups = 1;
      r.patterns = spec.baseline.codes;
      r.modulation_order = spec.baseline.tx_order;
      break;
  }
  return r;
}

double rate_of(const SweepSpec& spec) {
  if (spec.scheme == Scheme::csm) return spec.system.spectral_efficiency();
  BaselineConfig b = spec.baseline;
  b.scheme = spec.scheme;
  return b.spectral_efficiency();
}

void fill_rate(SweepRecord& r, const ErrorCounters& c, double units_per_trial, std::uint64_t errors) {
  const double units = static_cast<double>(c.trials) * units_per_trial;
  r.trials = c.trials;
  r.errors = errors;
  r.value = units > 0.0 ? static_cast<double>(errors) / units : 0.0;
  r.std_err = rate_std_err(errors, units, c.trials);
}

void run_rate_point(const SweepSpec& spec, unsigned threads, std::uint64_t point, double snr_db,
                    const ChannelModel& channel, SweepRecord& record) {
  SystemConfig system = spec.system;
  const double snr = db_to_linear(snr_db);
  if (system.symbol_energy > 0.0) system.noise_variance = system.symbol_energy / snr;

  const Metric metric = spec.metric;
  double units_per_trial = 1.0;
  auto errors_of = [metric](const ErrorCounters& c) {
    switch (metric) {
      case Metric::per_group_ser: return c.group_errors;
      case Metric::ber: return c.bit_errors;
      default: return c.symbol_errors;
    }
  };

  ErrorCounters total;
  if (spec.scheme == Scheme::csm) {
    const LinkSetup setup(system, channel, spec.estimation);
    if (metric == Metric::per_group_ser) units_per_trial = static_cast<double>(system.groups);
    if (metric == Metric::ber) units_per_trial = system.bits_per_use();
    total = run_adaptive(spec, threads, point, [&](RngStream& rng) { return run_trial(setup, rng); }, errors_of);
  } else {
    BaselineConfig b = spec.baseline;
    b.scheme = spec.scheme;
    const BaselineLink link(system, b, channel);
    if (metric == Metric::ber) units_per_trial = b.bits_per_transmission();
    total = run_adaptive(spec, threads, point, [&](RngStream& rng) { return link.run_trial(rng); }, errors_of);
  }
  fill_rate(record, total, units_per_trial, errors_of(total));
}

void run_mse_point(const SweepSpec& spec, unsigned threads, std::uint64_t point, double training_db,
                   const ChannelModel& channel, SweepRecord& record) {
  const Index repetitions = spec.estimation ? spec.estimation->repetitions : 1;
  const TrainingConfig training = TrainingConfig::from_snr_db(training_db, repetitions);
  const SystemConfig& system = spec.system;
  const PatternSet patterns = pattern_set(system.group_size(), system.patterns);

  const std::uint64_t chunks = (spec.trials + kTrialChunk - 1) / kTrialChunk;
  const auto parts = parallel_map(chunks, threads, [&](std::uint64_t j) {
    PointTally tally;
    const std::uint64_t first = j * kTrialChunk;
    const std::uint64_t last = std::min(first + kTrialChunk, spec.trials);
    for (std::uint64_t t = first; t < last; ++t) {
      RngStream rng(spec.seed, stream_id(point, t));
      const ChannelRealization ch = channel.draw(system, rng);
      const auto q = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(system.groups)));
      const auto k = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(system.patterns)));
      const auto pilots = collect_pilots(ch, patterns, system, q, k, training, rng);
      const ComplexVectord estimate = mmse_estimate(pilots, training, system.elements, system.groups);
      const ComplexVectord truth = group_signature(ch, patterns, system, q, k);
      const double err = (estimate - truth).squaredNorm() / static_cast<double>(system.rx_antennas);
      tally.sum += err;
      tally.sum_sq += err * err;
      ++tally.samples;
    }
    return tally;
  });
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : parts) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const auto n = static_cast<double>(spec.trials);
  const double mean = sum / n;
  const double var = spec.trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  record.value = mean;
  record.trials = spec.trials;
  record.std_err = std::sqrt(var / n);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const unsigned threads = spec.threads == 0 ? default_threads() : spec.threads;
  const std::vector<double> axis = spec.range.points();
  const double ebno_offset = spec.axis == Axis::ebno ? linear_to_db(rate_of(spec)) : 0.0;
  const ChannelModel channel = make_channel(spec);

  SweepResult result;
  result.records.reserve(axis.size());

  // Minimum distances do not depend on the axis; draw them once.
  std::vector<double> distances;
  if (spec.metric == Metric::mindist_cdf) {
    distances = parallel_map(spec.trials, threads, [&](std::uint64_t t) {
      RngStream rng(spec.seed, stream_id(0, t));
      const ChannelRealization ch = channel.draw(spec.system, rng);
      const PatternSet patterns = pattern_set(spec.system.group_size(), spec.system.patterns);
      return min_pairwise_distance(build_effective_table(ch, patterns, spec.system));
    });
  }

  for (std::size_t i = 0; i < axis.size(); ++i) {
    SweepRecord record = base_record(spec);
    record.snr_db = axis[i];
    const double snr_db = axis[i] + ebno_offset;
    const auto point = static_cast<std::uint64_t>(i);

    switch (spec.metric) {
      case Metric::per_group_ser:
      case Metric::supersymbol_ser:
      case Metric::ber:
        run_rate_point(spec, threads, point, snr_db, channel, record);
        break;
      case Metric::analytic_bound:
      case Metric::asymptote: {
        const BoundInputs in{spec.system.elements, spec.system.groups, spec.system.patterns,
                             spec.system.rx_antennas, db_to_linear(snr_db)};
        record.value = spec.metric == Metric::analytic_bound ? ser_union_bound(in) : asymptotic_ser(in).error_probability;
        break;
      }
      case Metric::capacity: {
        SystemConfig system = spec.system;
        if (system.symbol_energy > 0.0) system.noise_variance = system.symbol_energy / db_to_linear(snr_db);
        const LinkSetup setup(system, channel);
        const CapacityEstimate est = ergodic_capacity(setup, static_cast<Index>(spec.trials), spec.inner_samples,
                                                      spec.seed, stream_id(point, 0), threads);
        record.value = est.bpcu;
        record.trials = spec.trials;
        record.std_err = est.std_error;
        break;
      }
      case Metric::mse:
        run_mse_point(spec, threads, point, axis[i], channel, record);
        break;
      case Metric::mindist_cdf: {
        const auto below = static_cast<std::uint64_t>(
            std::count_if(distances.begin(), distances.end(), [&](double d) { return d < axis[i]; }));
        record.trials = spec.trials;
        record.errors = below;
        record.value = static_cast<double>(below) / static_cast<double>(spec.trials);
        record.std_err = std::sqrt(record.value * (1.0 - record.value) / static_cast<double>(spec.trials));
        break;
      }
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

double diversity_slope(const std::vector<double>& snr_db, const std::vector<double>& values) {
  if (snr_db.size() != values.size()) throw LengthMismatch("diversity_slope: axis and value lengths differ");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 1e-5 && v <= 1e-2)) continue;
    const double x = snr_db[i] / 10.0;  // log10(snr)
    const double y = std::log10(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) throw InsufficientPoints("diversity_slope: need at least three points with value in [1e-5, 1e-2]");
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom <= 0.0) throw InsufficientPoints("diversity_slope: qualifying points share one SNR");
  return -(dn * sxy - sx * sy) / denom;
}

double diversity_slope(const SweepResult& result) {
  std::vector<double> x, y;
  for (const auto& r : result.records) {
    x.push_back(r.snr_db);
    y.push_back(r.value);
  }
  return diversity_slope(x, y);
}

}  // namespace riscsm
