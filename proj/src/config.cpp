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

#include "riscsm/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace riscsm {

namespace {

using nlohmann::json;

// Reads typed fields out of one JSON object and reports bad or unknown keys
// with their full dotted path.
class Section {
 public:
  Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ConfigError(path_, "must be an object");
  }

  std::string path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return doc_.contains(key); }
  const json& raw(const std::string& key) {
    seen_.insert(key);
    return doc_.at(key);
  }

  template <typename T>
  void read(const std::string& key, T& target) {
    if (!has(key)) return;
    const json& v = raw(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
      target = v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
      if (std::is_unsigned_v<T> && v.get<std::int64_t>() < 0 && !v.is_number_unsigned())
        throw ConfigError(path(key), "must not be negative");
      target = v.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(path(key), "expected a number");
      target = v.get<T>();
    } else {
      if (!v.is_string()) throw ConfigError(path(key), "expected a string");
      target = v.get<std::string>();
    }
  }

  void reject_unknown() const {
    for (const auto& [key, value] : doc_.items())
      if (!seen_.count(key)) throw ConfigError(path(key), "unknown key");
  }

 private:
  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_system(Section s, SystemConfig& c) {
  s.read("N", c.elements);
  s.read("N_Q", c.groups);
  s.read("K", c.patterns);
  s.read("n_R", c.rx_antennas);
  s.read("M", c.modulation_order);
  s.read("E_s", c.symbol_energy);
  s.read("sigma2", c.noise_variance);
  s.reject_unknown();
}

std::optional<CorrelationSpec> read_channel(Section s, Index elements) {
  std::string model = "iid";
  s.read("model", model);
  CorrelationSpec spec;
  spec.columns = 0;
  spec.rows = 0;
  s.read("N_h", spec.columns);
  s.read("N_v", spec.rows);
  s.read("spacing_over_lambda", spec.spacing_over_lambda);
  s.reject_unknown();
  if (model == "iid") return std::nullopt;
  if (model != "correlated") throw ConfigError(s.path("model"), "expected \"iid\" or \"correlated\"");
  // Default to the squarest grid with N_h >= N_v.
  if (spec.columns == 0 && spec.rows == 0) {
    Index rows = 1;
    while (rows * rows * 4 <= elements) rows *= 2;
    spec.rows = rows;
    spec.columns = elements / rows;
  } else if (spec.columns == 0 || spec.rows == 0) {
    throw ConfigError(s.path(spec.columns == 0 ? "N_h" : "N_v"), "set both N_h and N_v or neither");
  }
  return spec;
}

std::optional<TrainingConfig> read_estimation(Section s) {
  bool enabled = true;
  s.read("enabled", enabled);
  TrainingConfig t;
  if (s.has("E_t") && s.has("training_snr_db"))
    throw ConfigError(s.path("E_t"), "give either E_t or training_snr_db, not both");
  s.read("E_t", t.energy);
  if (s.has("training_snr_db")) {
    double db = 0.0;
    s.read("training_snr_db", db);
    t.energy = db_to_linear(db);
  }
  s.read("tau", t.repetitions);
  s.reject_unknown();
  if (!enabled) return std::nullopt;
  return t;
}

void read_baseline(Section s, BaselineConfig& b) {
  s.read("M_tx", b.tx_order);
  s.read("M_ris", b.ris_phases);
  s.read("N_Q", b.groups);
  s.read("N_A", b.active_groups);
  s.read("W", b.codes);
  s.read("Len", b.code_length);
  s.reject_unknown();
}

void read_sweep(Section s, SweepSpec& spec) {
  if (s.has("scheme")) {
    std::string name;
    s.read("scheme", name);
    try {
      spec.scheme = parse_scheme(name);
    } catch (const Error&) {
      throw ConfigError(s.path("scheme"), "unknown scheme '" + name + "'");
    }
  }
  if (s.has("metric")) {
    std::string name;
    s.read("metric", name);
    const auto m = parse_metric(name);
    if (!m) throw ConfigError(s.path("metric"), "unknown metric '" + name + "'");
    spec.metric = *m;
  }
  if (s.has("axis")) {
    std::string name;
    s.read("axis", name);
    const auto a = parse_axis(name);
    if (!a) throw ConfigError(s.path("axis"), "expected \"snr\" or \"ebno\"");
    spec.axis = *a;
  }
  if (s.has("snr")) {
    const json& v = s.raw("snr");
    if (v.is_string()) {
      const auto r = parse_snr_range(v.get<std::string>());
      if (!r) throw ConfigError(s.path("snr"), "expected \"START:STOP:STEP\"");
      spec.range = *r;
    } else {
      Section range(v, s.path("snr"));
      range.read("start", spec.range.start);
      range.read("stop", spec.range.stop);
      range.read("step", spec.range.step);
      range.reject_unknown();
    }
  }
  s.read("trials", spec.trials);
  s.read("min_errors", spec.min_errors);
  s.read("seed", spec.seed);
  s.read("threads", spec.threads);
  s.read("inner_samples", spec.inner_samples);
  s.reject_unknown();
}

}  // namespace

SweepSpec parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }

  SweepSpec spec;
  try {
    Section root(doc, "");
    if (root.has("system")) read_system(Section(root.raw("system"), "system"), spec.system);
    if (root.has("channel")) spec.correlation = read_channel(Section(root.raw("channel"), "channel"), spec.system.elements);
    if (root.has("estimation")) spec.estimation = read_estimation(Section(root.raw("estimation"), "estimation"));
    if (root.has("baseline")) read_baseline(Section(root.raw("baseline"), "baseline"), spec.baseline);
    if (root.has("sweep")) read_sweep(Section(root.raw("sweep"), "sweep"), spec);
    root.reject_unknown();
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid value: ") + e.what());
  }
  spec.baseline.scheme = spec.scheme == Scheme::csm ? Scheme::ris_mimo : spec.scheme;
  return spec;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace riscsm
