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

#include "riscsm/results_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace riscsm {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw IoError("format_double: conversion failed");
  return std::string(buf, end);
}

namespace {

template <typename T>
std::string format_int(T value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw IoError("format_int: conversion failed");
  return std::string(buf, end);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t end = line.find(sep, pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) return out;
    pos = end + 1;
  }
}

template <typename T>
T parse_field(std::string_view text, std::size_t line, const char* column) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars does not accept the inf/nan spellings to_chars produces for
    // negative values with a sign, so handle them directly.
    if (text == "inf") return std::numeric_limits<T>::infinity();
    if (text == "-inf") return -std::numeric_limits<T>::infinity();
    if (text == "nan" || text == "-nan") return std::numeric_limits<T>::quiet_NaN();
  }
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw IoError("parse_csv: line " + std::to_string(line) + ": bad " + column + " '" + std::string(text) + "'");
  return value;
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.records) {
    out << r.scheme << ',' << format_int(r.elements) << ',' << format_int(r.groups) << ',' << format_int(r.patterns)
        << ',' << format_int(r.rx_antennas) << ',' << format_int(r.modulation_order) << ',' << format_double(r.snr_db)
        << ',' << r.metric << ',' << format_double(r.value) << ',' << format_int(r.trials) << ','
        << format_int(r.errors) << ',' << format_double(r.std_err) << ',' << format_int(r.seed) << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    doc.push_back({{"scheme", r.scheme},
                   {"N", r.elements},
                   {"N_Q", r.groups},
                   {"K", r.patterns},
                   {"n_R", r.rx_antennas},
                   {"M", r.modulation_order},
                   {"snr_db", r.snr_db},
                   {"metric", r.metric},
                   {"value", r.value},
                   {"trials", r.trials},
                   {"errors", r.errors},
                   {"std_err", r.std_err},
                   {"seed", r.seed}});
  }
  out << doc.dump(2) << '\n';
}

SweepResult parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("parse_csv: missing or unexpected header");
  SweepResult result;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) throw IoError("parse_csv: line " + std::to_string(number) + ": expected 13 fields");
    SweepRecord r;
    r.scheme = std::string(f[0]);
    r.elements = parse_field<Index>(f[1], number, "N");
    r.groups = parse_field<Index>(f[2], number, "N_Q");
    r.patterns = parse_field<Index>(f[3], number, "K");
    r.rx_antennas = parse_field<Index>(f[4], number, "n_R");
    r.modulation_order = parse_field<Index>(f[5], number, "M");
    r.snr_db = parse_field<double>(f[6], number, "snr_db");
    r.metric = std::string(f[7]);
    r.value = parse_field<double>(f[8], number, "value");
    r.trials = parse_field<std::uint64_t>(f[9], number, "trials");
    r.errors = parse_field<std::uint64_t>(f[10], number, "errors");
    r.std_err = parse_field<double>(f[11], number, "std_err");
    r.seed = parse_field<std::uint64_t>(f[12], number, "seed");
    result.records.push_back(std::move(r));
  }
  return result;
}

void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  auto write = [&](std::ostream& out) {
    if (format == OutputFormat::csv)
      write_csv(result, out);
    else
      write_json(result, out);
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("emit: failed writing to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("emit: cannot open '" + path + "' for writing");
  write(file);
  file.close();
  if (!file) throw IoError("emit: failed writing '" + path + "'");
}

}  // namespace riscsm
