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

#include <cmath>

#include "doctest.h"
#include "riscsm/baselines.hpp"

using namespace riscsm;

namespace {

SystemConfig link(Index n, Index nr, double es, double noise) {
  SystemConfig c;
  c.elements = n;
  c.rx_antennas = nr;
  c.symbol_energy = es;
  c.noise_variance = noise;
  return c;
}

BaselineConfig mimo(Index phases, Index tx = 1, Index groups = 1) {
  BaselineConfig b;
  b.scheme = Scheme::ris_mimo;
  b.ris_phases = phases;
  b.tx_order = tx;
  b.groups = groups;
  return b;
}

BaselineConfig gsm(Index groups, Index active, Index tx) {
  BaselineConfig b;
  b.scheme = Scheme::ris_gsm;
  b.groups = groups;
  b.active_groups = active;
  b.tx_order = tx;
  return b;
}

BaselineConfig cim(Index tx, Index codes, Index length) {
  BaselineConfig b;
  b.scheme = Scheme::ris_cim;
  b.tx_order = tx;
  b.codes = codes;
  b.code_length = length;
  return b;
}

}  // namespace

TEST_CASE("spectral efficiency formulas") {
  CHECK(spectral_efficiency(gsm(4, 3, 4)) == 4.0);
  CHECK(spectral_efficiency(cim(128, 2, 2)) == 4.0);
  CHECK(spectral_efficiency(mimo(16)) == 4.0);
  CHECK(spectral_efficiency(mimo(4, 4, 2)) == 6.0);
  BaselineConfig csm;
  csm.scheme = Scheme::csm;
  csm.groups = 2;
  csm.patterns = 16;
  csm.tx_order = 4;
  CHECK(spectral_efficiency(csm) == 10.0);
  // floor(log2 C(8, 4)) = floor(log2 70) = 6
  CHECK(spectral_efficiency(gsm(8, 4, 1)) == 6.0);
}

TEST_CASE("configuration checks") {
  CHECK_THROWS_AS(gsm(4, 5, 4).validate(), InvalidParameters);
  CHECK_THROWS_AS(gsm(4, 0, 4).validate(), InvalidParameters);
  CHECK_THROWS_AS(cim(4, 4, 2).validate(), InvalidParameters);
  CHECK_THROWS_AS(cim(4, 1, 3).validate(), InvalidParameters);
  CHECK_THROWS_AS(mimo(3).validate(), InvalidParameters);
  CHECK_THROWS_AS(mimo(4, 3).validate(), InvalidParameters);
  CHECK_THROWS_AS(BaselineLink(link(64, 1, 1, 1), gsm(3, 1, 1)), InvalidDimensions);
}

TEST_CASE("scheme names") {
  CHECK(parse_scheme("ris-gsm") == Scheme::ris_gsm);
  CHECK(parse_scheme("RIS-CIM") == Scheme::ris_cim);
  CHECK(parse_scheme("csm") == Scheme::csm);
  CHECK(scheme_name(Scheme::ris_mimo) == "ris-mimo");
  CHECK_THROWS_AS(parse_scheme("ofdm"), InvalidParameters);
}

TEST_CASE("activation patterns are lexicographic") {
  const auto four = activation_patterns(4, 3, 4);
  REQUIRE(four.size() == 4);
  CHECK(four[0] == std::vector<Index>{0, 1, 2});
  CHECK(four[1] == std::vector<Index>{0, 1, 3});
  CHECK(four[2] == std::vector<Index>{0, 2, 3});
  CHECK(four[3] == std::vector<Index>{1, 2, 3});
  const auto first = activation_patterns(8, 4, 64);
  CHECK(first.size() == 64);
  CHECK(first.back() == std::vector<Index>{2, 4, 6, 7});
  CHECK(gsm(4, 3, 4).index_count() == 4);
  CHECK(gsm(4, 4, 4).index_count() == 1);
}

TEST_CASE("no noise, no errors") {
  for (const BaselineConfig& b : {mimo(16), mimo(4, 1, 2), gsm(4, 3, 4), gsm(4, 2, 2), cim(128, 2, 2), cim(4, 4, 4)}) {
    const BaselineLink l(link(64, 2, 1.0, 0.0), b);
    RngStream rng(40, static_cast<std::uint64_t>(b.scheme));
    const ErrorCounters e = l.run_trials(300, rng);
    CHECK(e.symbol_errors == 0);
    CHECK(e.bit_errors == 0);
    CHECK(e.bits == 300u * static_cast<std::uint64_t>(b.bits_per_transmission()));
  }
  RngStream rng(41, 0);
  CHECK(ris_mimo_trial(link(16, 1, 1.0, 0.0), mimo(8), rng).symbol_errors == 0);
  CHECK(ris_gsm_trial(link(16, 1, 1.0, 0.0), gsm(4, 2, 2), rng).symbol_errors == 0);
  CHECK(ris_cim_trial(link(16, 1, 1.0, 0.0), cim(2, 2, 2), rng).symbol_errors == 0);
}

TEST_CASE("RIS-MIMO codebook") {
  SUBCASE("phases rotate the summed channel and its entries have variance N") {
    const BaselineLink l(link(32, 1, 1.0, 1.0), mimo(4));
    RngStream rng(42, 0);
    double power = 0.0;
    const int draws = 50000;
    for (int t = 0; t < draws; ++t) {
      const ChannelRealization ch = draw_iid(32, 1, rng);
      const ComplexMatrixd book = l.codebook(ch);
      const cd sum = (ch.G * ch.h)(0);
      if (t == 0) {
        CHECK(std::abs(book(0, 0) - sum) < 1e-12);
        CHECK(std::abs(book(0, 1) - cd(0, 1) * sum) < 1e-12);
        CHECK(std::abs(book(0, 2) + sum) < 1e-12);
      }
      power += std::norm(sum);
    }
    CHECK(power / draws == doctest::Approx(32.0).epsilon(0.03));
  }
  SUBCASE("binary phase at zero SNR is a coin flip") {
    const BaselineLink l(link(32, 1, 0.0, 1.0), mimo(2));
    RngStream rng(43, 0);
    const ErrorCounters e = l.run_trials(20000, rng);
    CHECK(static_cast<double>(e.symbol_errors) / 20000.0 == doctest::Approx(0.5).epsilon(0.03));
  }
}

TEST_CASE("RIS-GSM codebook") {
  RngStream rng(44, 0);
  const ChannelRealization ch = draw_iid(16, 1, rng);
  ComplexVectord sums(4);
  for (Index q = 0; q < 4; ++q) sums(q) = (ch.G.middleCols(q * 4, 4) * ch.h.segment(q * 4, 4))(0);

  const BaselineLink three(link(16, 1, 1.0, 1.0), gsm(4, 3, 4));
  const ComplexMatrixd book = three.codebook(ch);
  REQUIRE(book.cols() == 4);
  CHECK(std::abs(book(0, 0) - (sums(0) + sums(1) + sums(2))) < 1e-12);
  CHECK(std::abs(book(0, 3) - (sums(1) + sums(2) + sums(3))) < 1e-12);

  // All groups active: a single codeword, the full reflected sum.
  const BaselineLink all(link(16, 1, 1.0, 1.0), gsm(4, 4, 4));
  const ComplexMatrixd full = all.codebook(ch);
  REQUIRE(full.cols() == 1);
  CHECK(std::abs(full(0, 0) - sums.sum()) < 1e-12);
}

TEST_CASE("RIS-CIM detection") {
  SUBCASE("single code is spread QAM") {
    const BaselineLink l(link(16, 1, 1.0, 1.0), cim(4, 1, 2));
    RngStream rng(45, 0);
    const ChannelRealization ch = draw_iid(16, 1, rng);
    const ComplexMatrixd book = l.codebook(ch);
    REQUIRE(book.cols() == 1);
    REQUIRE(book.rows() == 2);
    CHECK(book(0, 0) == book(1, 0));
  }
  SUBCASE("joint ML equals a per-code matched-filter search") {
    // For orthogonal codes the distance splits as
    // |y|^2 - 2 Re(x* d^H (sum_t c[t] y_t)) + Len |x|^2 |d|^2, so the best
    // (w, x) can be found from the code correlations alone.
    const BaselineConfig b = cim(4, 2, 2);
    const SystemConfig sys = link(16, 2, 1.0, 0.8);
    const BaselineLink l(sys, b);
    const Constellation qam = Constellation::qam(4);
    RngStream rng(46, 0);
    for (int trial = 0; trial < 300; ++trial) {
      const ChannelRealization ch = draw_iid(16, 2, rng);
      const ComplexMatrixd book = l.codebook(ch);
      const ComplexVectord d = ch.G * ch.h;
      const std::uint64_t sent = rng.uniform_index(8);
      const ComplexVectord y = transmit(book.col(static_cast<Index>(sent / 4)).eval(), qam[static_cast<Index>(sent % 4)],
                                        sys, rng);
      const EffectiveChannelTable table({book});
      const std::uint64_t joint = ml_detect_flat(y, table, qam, sys);

      const Eigen::MatrixXi h = sylvester(2);
      double best = 1e300;
      std::uint64_t arg = 0;
      for (Index w = 0; w < 2; ++w) {
        const ComplexVectord r = h(w, 0) * y.head(2) + h(w, 1) * y.tail(2);
        const cd corr = d.dot(r);  // d^H r
        for (Index s = 0; s < 4; ++s) {
          const double metric = -2.0 * std::real(std::conj(qam[s]) * corr) + 2.0 * std::norm(qam[s]) * d.squaredNorm();
          if (metric < best) {
            best = metric;
            arg = static_cast<std::uint64_t>(w * 4 + s);
          }
        }
      }
      CHECK(joint == arg);
    }
  }
}
