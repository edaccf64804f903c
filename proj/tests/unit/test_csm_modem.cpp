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

#include <bit>
#include <cmath>
#include <set>

#include "doctest.h"
#include "riscsm/analysis.hpp"
#include "riscsm/csm_modem.hpp"
#include "support/oracles.hpp"

using namespace riscsm;

namespace {

SystemConfig make_config(Index n, Index nq, Index k, Index nr, Index m = 1, double es = 1.0, double noise = 1.0) {
  SystemConfig c;
  c.elements = n;
  c.groups = nq;
  c.patterns = k;
  c.rx_antennas = nr;
  c.modulation_order = m;
  c.symbol_energy = es;
  c.noise_variance = noise;
  return c;
}

std::vector<int> to_int(const std::vector<Index>& k) { return {k.begin(), k.end()}; }

}  // namespace

TEST_CASE("system configuration rules") {
  const SystemConfig c = make_config(64, 2, 16, 1, 4);
  CHECK_NOTHROW(c.validate());
  CHECK(c.group_size() == 32);
  CHECK(c.bits_per_use() == 10);
  CHECK(c.spectral_efficiency() == 10.0);
  CHECK(c.signature_count() == 256);
  CHECK(make_config(64, 1, 16, 1, 1, 10.0, 2.0).snr() == 5.0);

  CHECK_THROWS_AS(make_config(48, 1, 4, 1).validate(), InvalidDimensions);
  CHECK_THROWS_AS(make_config(64, 3, 4, 1).validate(), InvalidDimensions);
  CHECK_THROWS_AS(make_config(64, 8, 16, 1).validate(), InvalidDimensions);
  CHECK_THROWS_AS(make_config(64, 1, 6, 1).validate(), InvalidDimensions);
  CHECK_THROWS_AS(make_config(64, 1, 4, 0).validate(), InvalidDimensions);
  CHECK_THROWS_AS(make_config(64, 1, 4, 1, 3).validate(), InvalidDimensions);
  CHECK_THROWS_AS(make_config(64, 1, 4, 1, 1, -1.0).validate(), InvalidParameters);
}

TEST_CASE("constellations have unit average energy and distinct points") {
  for (Index m : {1, 2, 4, 8, 16, 32, 64, 128, 256}) {
    const Constellation c = Constellation::qam(m);
    CHECK(c.size() == m);
    CHECK(c.average_energy() == doctest::Approx(1.0).epsilon(1e-12));
    std::set<std::pair<double, double>> pts;
    for (const cd& p : c.points()) pts.insert({std::round(p.real() * 1e9), std::round(p.imag() * 1e9)});
    CHECK(static_cast<Index>(pts.size()) == m);
  }
  CHECK(Constellation::qam(1)[0] == cd(1.0, 0.0));
  CHECK(Constellation::qam(2)[0] == cd(-1.0, 0.0));
  const Constellation psk = Constellation::psk(16);
  CHECK(psk.average_energy() == doctest::Approx(1.0));
  CHECK(std::abs(psk[4] - cd(0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(Constellation::qam(6), InvalidParameters);
}

TEST_CASE("bit mapping") {
  SUBCASE("table example: bits 01 select the alternating pattern") {
    const SystemConfig c = make_config(16, 1, 4, 1);
    const std::uint8_t bits[] = {0, 1};
    const IndexVector idx = map_bits(bits, c);
    REQUIRE(idx.k.size() == 1);
    CHECK(idx.k[0] == 1);
    const PatternSet set = pattern_set(16, 4);
    for (int j = 0; j < 16; ++j) CHECK(set.pattern(idx.k[0])(j) == (j % 2 ? -1 : 1));
  }
  SUBCASE("all-zero bits") {
    const SystemConfig c = make_config(64, 2, 8, 1, 4);
    const std::vector<std::uint8_t> zeros(static_cast<std::size_t>(c.bits_per_use()), 0);
    const IndexVector idx = map_bits(zeros, c);
    CHECK(idx.k == std::vector<Index>{0, 0});
    CHECK(idx.symbol == 0);
  }
  SUBCASE("exhaustive round trip") {
    for (Index m : {1, 4}) {
      const SystemConfig c = make_config(32, 2, 4, 1, m);
      const int r = c.bits_per_use();
      for (std::uint64_t v = 0; v < (1u << r); ++v) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) bits[static_cast<std::size_t>(i)] = (v >> (r - 1 - i)) & 1u;
        const IndexVector idx = map_bits(bits, c);
        CHECK(demap_bits(idx, c) == bits);
        CHECK(flat_index(idx, c) == v);
        CHECK(from_flat_index(v, c) == idx);
      }
    }
  }
  SUBCASE("sub-block order: group 0 takes the leading bits") {
    const SystemConfig c = make_config(32, 2, 4, 1, 2);
    const std::uint8_t bits[] = {1, 0, 0, 1, 1};
    const IndexVector idx = map_bits(bits, c);
    CHECK(idx.k == std::vector<Index>{2, 1});
    CHECK(idx.symbol == 1);
  }
  SUBCASE("errors") {
    const SystemConfig c = make_config(16, 1, 4, 1);
    const std::uint8_t three[] = {0, 1, 1};
    CHECK_THROWS_AS(map_bits(three, c), LengthMismatch);
    CHECK_THROWS_AS(flat_index(IndexVector{{4}, 0}, c), IndexOutOfRange);
    CHECK_THROWS_AS(flat_index(IndexVector{{0, 0}, 0}, c), LengthMismatch);
  }
}

TEST_CASE("effective table") {
  SUBCASE("all-ones pattern with one group is sum_j G(:, j) h_j") {
    const SystemConfig c = make_config(16, 1, 4, 2);
    RngStream rng(8, 0);
    const ChannelRealization ch = draw_iid(c, rng);
    const EffectiveChannelTable t = build_effective_table(ch, pattern_set(16, 4), c);
    ComplexVectord direct = ComplexVectord::Zero(2);
    for (Index j = 0; j < 16; ++j) direct += ch.G.col(j) * ch.h(j);
    CHECK((t.signature(Index{0}) - direct).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("composition matches element-by-element evaluation") {
    for (const SystemConfig& c : {make_config(8, 2, 2, 2), make_config(8, 1, 8, 2), make_config(16, 2, 4, 3),
                                  make_config(64, 4, 4, 1)}) {
      RngStream rng(9, static_cast<std::uint64_t>(c.groups * 100 + c.patterns));
      const ChannelRealization ch = draw_iid(c, rng);
      const PatternSet set = pattern_set(c.group_size(), c.patterns);
      const EffectiveChannelTable t = build_effective_table(ch, set, c);
      REQUIRE(t.size() == c.signature_count());
      double worst = 0.0;
      for (Index flat = 0; flat < t.size(); ++flat) {
        const IndexVector idx = from_flat_index(static_cast<std::uint64_t>(flat), c);
        const Eigen::VectorXcd want = oracle::brute_force_signature(ch.h, ch.G, static_cast<int>(c.groups), to_int(idx.k));
        worst = std::max(worst, (t.signature(flat) - want).cwiseAbs().maxCoeff());
        worst = std::max(worst, (t.signature(idx.k) - want).cwiseAbs().maxCoeff());
        ComplexVectord sum = ComplexVectord::Zero(c.rx_antennas);
        for (Index q = 0; q < c.groups; ++q) sum += group_signature(ch, set, c, q, idx.k[static_cast<std::size_t>(q)]);
        worst = std::max(worst, (sum - want).cwiseAbs().maxCoeff());
      }
      CHECK(worst < 1e-12);
    }
  }
  SUBCASE("signature entries have variance N") {
    const SystemConfig c = make_config(16, 2, 4, 1);
    const PatternSet set = pattern_set(8, 4);
    RngStream rng(10, 0);
    const int draws = 100000;
    double power = 0.0;
    for (int t = 0; t < draws; ++t) {
      const EffectiveChannelTable table = build_effective_table(draw_iid(c, rng), set, c);
      power += std::norm(table.composed()(0, 5));
    }
    CHECK(power / draws == doctest::Approx(16.0).epsilon(0.03));
  }
  SUBCASE("shape errors") {
    const SystemConfig c = make_config(16, 1, 4, 1);
    RngStream rng(1, 0);
    CHECK_THROWS_AS(build_effective_table(draw_iid(32, 1, rng), pattern_set(16, 4), c), DimensionMismatch);
    CHECK_THROWS_AS(build_effective_table(draw_iid(16, 1, rng), pattern_set(16, 2), c), DimensionMismatch);
  }
}

TEST_CASE("transmit") {
  RngStream rng(12, 0);
  ComplexVectord d(2);
  d << cd(1.0, 2.0), cd(-0.5, 0.25);
  const cd x(0.6, -0.8);

  const ComplexVectord clean = transmit(d, x, make_config(16, 1, 4, 2, 1, 4.0, 0.0), rng);
  CHECK((clean - 2.0 * x * d).cwiseAbs().maxCoeff() == 0.0);

  double noise_power = 0.0, total_power = 0.0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    noise_power += transmit(d, x, make_config(16, 1, 4, 2, 1, 0.0, 0.5), rng).squaredNorm();
    total_power += transmit(d, x, make_config(16, 1, 4, 2, 1, 3.0, 0.5), rng).squaredNorm();
  }
  CHECK(noise_power / draws == doctest::Approx(2 * 0.5).epsilon(0.02));
  CHECK(total_power / draws == doctest::Approx(3.0 * d.squaredNorm() + 2 * 0.5).epsilon(0.02));
}

TEST_CASE("ML detection") {
  SUBCASE("noise-free recovery of every candidate") {
    const SystemConfig c = make_config(32, 2, 4, 2, 4, 1.0, 0.0);
    const Constellation qam = Constellation::qam(4);
    RngStream rng(13, 0);
    const EffectiveChannelTable t = build_effective_table(draw_iid(c, rng), pattern_set(16, 4), c);
    for (std::uint64_t v = 0; v < 64; ++v) {
      const ComplexVectord y = transmit(t.signature(static_cast<Index>(v / 4)), qam[static_cast<Index>(v % 4)], c, rng);
      CHECK(ml_detect_flat(y, t, qam, c) == v);
      CHECK(ml_detect(y, t, qam, c) == from_flat_index(v, c));
    }
  }
  SUBCASE("choice equals the brute-force minimum") {
    const SystemConfig c = make_config(16, 2, 4, 1, 2, 1.0, 2.0);
    const Constellation bpsk = Constellation::qam(2);
    RngStream rng(14, 0);
    for (int trial = 0; trial < 200; ++trial) {
      const ChannelRealization ch = draw_iid(c, rng);
      const EffectiveChannelTable t = build_effective_table(ch, pattern_set(8, 4), c);
      const ComplexVectord y = transmit(t.signature(Index{3}), bpsk[1], c, rng);
      double best = 1e300;
      std::uint64_t arg = 0;
      for (std::uint64_t v = 0; v < 32; ++v) {
        const IndexVector idx = from_flat_index(v, c);
        const Eigen::VectorXcd d = oracle::brute_force_signature(ch.h, ch.G, 2, to_int(idx.k));
        const double dist = (y - bpsk[idx.symbol] * d).squaredNorm();
        if (dist < best) {
          best = dist;
          arg = v;
        }
      }
      CHECK(ml_detect_flat(y, t, bpsk, c) == arg);
    }
  }
  SUBCASE("single candidate and ties") {
    const SystemConfig one = make_config(4, 1, 1, 1);
    RngStream rng(15, 0);
    const EffectiveChannelTable t1 = build_effective_table(draw_iid(one, rng), pattern_set(4, 1), one);
    ComplexVectord y(1);
    y << cd(5.0, -3.0);
    CHECK(ml_detect_flat(y, t1, Constellation::qam(1), one) == 0u);

    ComplexMatrixd same(1, 4);
    same.setConstant(cd(1.0, 1.0));
    const EffectiveChannelTable tied({same});
    CHECK(ml_detect_flat(y, tied, Constellation::qam(1), make_config(4, 1, 4, 1)) == 0u);
  }
}

TEST_CASE("error trials") {
  SUBCASE("no noise, no errors") {
    const LinkSetup setup(make_config(32, 2, 4, 1, 1, 1.0, 0.0));
    RngStream rng(16, 0);
    const ErrorCounters e = run_error_trials(setup, 2000, rng);
    CHECK(e.trials == 2000);
    CHECK(e.symbol_errors == 0);
    CHECK(e.group_errors == 0);
    CHECK(e.bit_errors == 0);
    CHECK(e.bits == 2000 * 4);
  }
  SUBCASE("no signal: uniform guessing") {
    // With E_s = 0 every candidate is equally distant, the detector always
    // returns candidate 0, and the per-group SER is (K - 1) / K.
    const LinkSetup setup(make_config(32, 2, 8, 1, 1, 0.0, 1.0));
    RngStream rng(17, 0);
    const std::uint64_t trials = 20000;
    const ErrorCounters e = run_error_trials(setup, trials, rng);
    const double ser = static_cast<double>(e.group_errors) / (2.0 * trials);
    CHECK(ser == doctest::Approx(7.0 / 8.0).epsilon(0.01));
    CHECK(e.group_errors <= trials * 2);
    CHECK(e.bit_errors <= trials * 6);
  }
  SUBCASE("SER at 20 dB sits under the union bound") {
    const double snr = db_to_linear(20.0);
    const LinkSetup setup(make_config(32, 1, 8, 1, 1, 1.0, 1.0 / snr));
    RngStream rng(18, 0);
    const std::uint64_t trials = 150000;
    const ErrorCounters e = run_error_trials(setup, trials, rng);
    const double ser = static_cast<double>(e.group_errors) / trials;
    const double se = std::sqrt(ser * (1 - ser) / trials);
    const double bound = ser_union_bound({32, 1, 8, 1, snr});
    CHECK(e.group_errors > 50);
    CHECK(ser <= bound + 3 * se);
    CHECK(ser > 0.3 * bound);
  }
  SUBCASE("deterministic") {
    const LinkSetup setup(make_config(32, 1, 8, 2, 2, 1.0, 0.3));
    RngStream a(19, 4), b(19, 4);
    CHECK(run_error_trials(setup, 500, a) == run_error_trials(setup, 500, b));
  }
}

TEST_CASE("minimum pairwise distance") {
  ComplexMatrixd two(2, 2);
  two << cd(1, 0), cd(1, 0), cd(0, 2), cd(0, 2);
  CHECK(min_pairwise_distance(EffectiveChannelTable({two})) == 0.0);

  ComplexMatrixd pair(2, 2);
  pair << cd(1, 1), cd(-1, 0), cd(0, 2), cd(3, -1);
  const double want = std::sqrt(std::norm(cd(2, 1)) + std::norm(cd(-3, 3)));
  CHECK(min_pairwise_distance(EffectiveChannelTable({pair})) == doctest::Approx(want).epsilon(1e-14));

  ComplexMatrixd lone(1, 1);
  lone << cd(1, 0);
  CHECK_THROWS_AS(min_pairwise_distance(EffectiveChannelTable({lone})), TooFewSignatures);
}
