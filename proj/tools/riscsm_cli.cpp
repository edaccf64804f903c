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

// Command-line front end: loads an experiment file, applies flag overrides,
// runs the sweep and writes CSV or JSON.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "riscsm/config.hpp"
#include "riscsm/errors.hpp"
#include "riscsm/harness.hpp"
#include "riscsm/results_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
  std::string config_path;
  std::optional<std::string> scheme;
  std::optional<std::string> metric;
  std::optional<std::string> snr;
  std::optional<std::string> axis;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> min_errors;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out = "-";
  std::string format = "csv";
};

riscsm::SweepSpec build_spec(const Overrides& o) {
  riscsm::SweepSpec spec = o.config_path.empty() ? riscsm::SweepSpec{} : riscsm::load_config(o.config_path);
  if (o.scheme) {
    try {
      spec.scheme = riscsm::parse_scheme(*o.scheme);
    } catch (const riscsm::Error&) {
      throw riscsm::ConfigError("--scheme", "unknown scheme '" + *o.scheme + "'");
    }
  }
  if (o.metric) {
    const auto m = riscsm::parse_metric(*o.metric);
    if (!m) throw riscsm::ConfigError("--metric", "unknown metric '" + *o.metric + "'");
    spec.metric = *m;
  }
  if (o.snr) {
    const auto r = riscsm::parse_snr_range(*o.snr);
    if (!r) throw riscsm::ConfigError("--snr", "expected START:STOP:STEP");
    spec.range = *r;
  }
  if (o.axis) spec.axis = *riscsm::parse_axis(*o.axis);
  if (o.trials) spec.trials = *o.trials;
  if (o.min_errors) spec.min_errors = *o.min_errors;
  if (o.seed) spec.seed = *o.seed;
  if (o.threads) spec.threads = *o.threads;
  spec.validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo and analytic sweeps for RIS channel signature modulation"};
  Overrides o;
  app.add_option("--config", o.config_path, "JSON experiment file")->check(CLI::ExistingFile);
  app.add_option("--scheme", o.scheme, "ris-csm, ris-mimo, ris-gsm or ris-cim");
  app.add_option("--metric", o.metric,
                 "per-group-ser, supersymbol-ser, ber, capacity, mse, mindist-cdf, analytic-bound or asymptote");
  app.add_option("--snr", o.snr, "axis range START:STOP:STEP (dB)");
  app.add_option("--axis", o.axis, "snr or ebno")->check(CLI::IsMember({"snr", "ebno"}));
  app.add_option("--trials", o.trials, "trial budget per point");
  app.add_option("--min-errors", o.min_errors, "stop a point after this many errors (default 100)");
  app.add_option("--seed", o.seed, "master RNG seed");
  app.add_option("--threads", o.threads, "worker threads (default: all cores)");
  app.add_option("--out", o.out, "output file, '-' for stdout");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  riscsm::SweepSpec spec;
  try {
    spec = build_spec(o);
  } catch (const riscsm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const riscsm::SweepResult result = riscsm::run_sweep(spec);
    const auto format = o.format == "json" ? riscsm::OutputFormat::json : riscsm::OutputFormat::csv;
    riscsm::emit(result, format, o.out);
  } catch (const riscsm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
