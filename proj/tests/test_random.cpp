// Copyright 2026 The rtnq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stats.hpp"
#include "rtnq/random.hpp"

#include <doctest.h>

#include <boost/math/distributions/beta.hpp>

#include <cmath>
#include <vector>

using namespace rtnq;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  // Random123 kat_vectors
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(Philox4x32::block(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  std::vector<double> va, vb, vc, vd;
  for (int i = 0; i < 100; ++i) {
    va.push_back(a.uniform());
    vb.push_back(b.uniform());
    vc.push_back(c.uniform());
    vd.push_back(d.uniform());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  for (double u : va) {
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("variates have the right laws") {
  RngStream rng(5, 0);
  std::vector<double> e, b;
  for (int i = 0; i < 20000; ++i) e.push_back(rng.exponential(2.5));
  for (int i = 0; i < 20000; ++i) b.push_back(rng.beta(3.0, 2.0));
  CHECK(oracle::ks_pvalue(oracle::ks_statistic(e, [](double x) { return 1 - std::exp(-2.5 * x); }), e.size()) > 0.01);
  const boost::math::beta_distribution<> law(3.0, 2.0);
  CHECK(oracle::ks_pvalue(oracle::ks_statistic(b, [&](double x) { return boost::math::cdf(law, x); }), b.size()) > 0.01);

  for (double mean : {0.3, 5.0, 40.0}) {
    double s = 0, ss = 0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(mean));
      s += k;
      ss += k * k;
    }
    const double m = s / n;
    CHECK(std::abs(m - mean) < 4 * std::sqrt(mean / n));
    CHECK((ss / n - m * m) == doctest::Approx(mean).epsilon(0.05));
  }
  int plus = 0;
  for (int i = 0; i < 40000; ++i) plus += rng.sign() > 0;
  CHECK(std::abs(plus - 20000) < 4 * 100);
}
