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

#include "riscsm/numerics.hpp"

namespace riscsm {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                            static_cast<std::uint32_t>(stream_),
                                            static_cast<std::uint32_t>(stream_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  buffer_ = philox4x32_10(ctr, key);
  ++block_;
  cursor_ = 0;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (is_power_of_two(static_cast<std::int64_t>(n))) return next_u64() & (n - 1);
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

namespace {

// Ziggurat tables for the standard normal, 128 layers. The layer index uses
// the low 7 bits of a 32-bit word and the signed value the remaining 25, so
// the two are independent.
struct ZigguratTables {
  static constexpr double kTail = 3.442619855899;
  static constexpr double kArea = 9.91256303526217e-3;
  static constexpr double kScale = 16777216.0;  // 2^24

  std::array<std::uint32_t, 128> k{};
  std::array<double, 128> w{};
  std::array<double, 128> f{};

  ZigguratTables() {
    double d = kTail, t = kTail;
    const double q = kArea / std::exp(-0.5 * d * d);
    k[0] = static_cast<std::uint32_t>((d / q) * kScale);
    k[1] = 0;
    w[0] = q / kScale;
    w[127] = d / kScale;
    f[0] = 1.0;
    f[127] = std::exp(-0.5 * d * d);
    for (int i = 126; i >= 1; --i) {
      d = std::sqrt(-2.0 * std::log(kArea / d + std::exp(-0.5 * d * d)));
      k[i + 1] = static_cast<std::uint32_t>((d / t) * kScale);
      t = d;
      f[i] = std::exp(-0.5 * d * d);
      w[i] = d / kScale;
    }
  }
};

const ZigguratTables& ziggurat() {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace

double RngStream::open_uniform() { return (static_cast<double>(next_u32()) + 0.5) * 0x1.0p-32; }

double RngStream::standard_normal() {
  const ZigguratTables& z = ziggurat();
  for (;;) {
    const std::uint32_t bits = next_u32();
    const unsigned layer = bits & 127u;
    const std::int32_t value = static_cast<std::int32_t>(bits) >> 7;
    const auto magnitude = static_cast<std::uint32_t>(value < 0 ? -value : value);
    const double x = value * z.w[layer];
    if (magnitude < z.k[layer]) return x;
    if (layer == 0) {
      // Tail beyond kTail, Marsaglia's exponential method.
      double tx, ty;
      do {
        tx = -std::log(open_uniform()) / ZigguratTables::kTail;
        ty = -std::log(open_uniform());
      } while (ty + ty < tx * tx);
      return value > 0 ? ZigguratTables::kTail + tx : -ZigguratTables::kTail - tx;
    }
    if (z.f[layer] + open_uniform() * (z.f[layer - 1] - z.f[layer]) < std::exp(-0.5 * x * x)) return x;
  }
}

cd RngStream::cn01() {
  constexpr double kHalf = 0.70710678118654752440;
  const double re = standard_normal();
  return {re * kHalf, standard_normal() * kHalf};
}

ComplexVectord sample_cn01(RngStream& rng, Index count) {
  if (count < 1) throw InvalidDimensions("sample_cn01: count must be >= 1");
  ComplexVectord out(count);
  fill_cn01(rng, out);
  return out;
}

}  // namespace riscsm
