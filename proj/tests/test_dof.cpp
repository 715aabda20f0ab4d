// SPDX-License-Identifier: Apache-2.0
//
// align_bench: interference alignment beamforming workbench
// Copyright (C) 2026 The align_bench authors
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

#include <gtest/gtest.h>

#include <set>

#include "align_bench/dof.hpp"
#include "test_support.hpp"

using namespace align_bench;
using align_bench::testing::brute_force_simplex;
using align_bench::testing::brute_force_simplex_count;

namespace {

Rational q(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

std::vector<std::vector<std::uint32_t>> values_of(const std::vector<ExponentVector>& v) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& e : v) out.push_back(e.values);
  return out;
}

}  // namespace

TEST(GeneratorCount, Examples) {
  EXPECT_EQ(generator_count(3), 1u);
  EXPECT_EQ(generator_count(4), 5u);
  EXPECT_EQ(generator_count(5), 11u);
  EXPECT_THROW(generator_count(2), ParameterError);
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(6, 5), 6);
  EXPECT_EQ(binomial(7, 5), 21);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 4), 0);
  EXPECT_EQ(binomial(60, 30), BigInt("118264581564861424"));
}

TEST(EnumerateExponents, Examples) {
  using V = std::vector<std::vector<std::uint32_t>>;
  EXPECT_EQ(values_of(enumerate_exponents(1, 2)), (V{{0}, {1}, {2}}));
  EXPECT_EQ(values_of(enumerate_exponents(2, 1)), (V{{0, 0}, {0, 1}, {1, 0}}));
}

TEST(EnumerateExponents, MatchesNestedLoopOracle) {
  // N = 5, budget 1: zero vector plus the five unit vectors
  const auto oracle = brute_force_simplex(5, 1);
  ASSERT_EQ(oracle.size(), 6u);
  const auto got = values_of(enumerate_exponents(5, 1));
  EXPECT_EQ(std::set(got.begin(), got.end()), std::set(oracle.begin(), oracle.end()));
  EXPECT_EQ(got.size(), 6u);
}

TEST(EnumerateExponents, CardinalityCrossCheck) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::uint32_t b = 0; b <= 6; ++b) {
      const auto got = enumerate_exponents(n, b);
      const auto oracle = brute_force_simplex(n, b);
      EXPECT_EQ(got.size(), oracle.size()) << "N=" << n << " b=" << b;
      EXPECT_EQ(BigInt(got.size()), binomial(b + n, n));
      const auto vals = values_of(got);
      EXPECT_EQ(std::set(vals.begin(), vals.end()), std::set(oracle.begin(), oracle.end()));
    }
}

TEST(EnumerateExponents, GradedLexicographicOrder) {
  const auto v = enumerate_exponents(4, 3);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const auto a = v[i - 1].total();
    const auto b = v[i].total();
    EXPECT_TRUE(a < b || (a == b && v[i - 1].values < v[i].values));
  }
}

TEST(StreamCounts, Examples) {
  auto sc = stream_counts(3, 2);
  EXPECT_EQ(sc.d3, 3);
  EXPECT_EQ(sc.d1, 4);
  EXPECT_EQ(BigInt(enumerate_exponents(1, 2).size()), sc.d3);
  EXPECT_EQ(BigInt(enumerate_exponents(1, 3).size()), sc.d1);

  sc = stream_counts(4, 1);
  EXPECT_EQ(sc.d3, 6);
  EXPECT_EQ(sc.d1, 21);
  EXPECT_EQ(brute_force_simplex_count(5, 1), 6u);
  EXPECT_EQ(brute_force_simplex_count(5, 2), 21u);

  for (std::size_t k = 3; k <= 7; ++k) {
    const auto z = stream_counts(k, 0);
    EXPECT_EQ(z.d3, 1);
    EXPECT_EQ(z.d1, BigInt(generator_count(k) + 1));
  }
}

TEST(StreamCounts, RatioIdentity) {
  for (std::size_t k = 3; k <= 7; ++k)
    for (std::uint64_t n = 0; n <= 20; ++n) {
      const auto sc = stream_counts(k, n);
      const auto big_n = generator_count(k);
      EXPECT_EQ(Rational(sc.d1, sc.d3), Rational(BigInt(n + big_n + 1), BigInt(n + 1)));
    }
}

TEST(ProposedGain, Examples) {
  EXPECT_EQ(proposed_gain(3, 0), q(4, 3));
  EXPECT_EQ(proposed_gain(4, 1), q(13, 9));
  const auto sc = stream_counts(4, 1);
  EXPECT_EQ(gain_from_streams(4, sc.d3, sc.d1), q(39, 27));
  const double far = proposed_gain(3, 1'000'000).convert_to<double>();
  EXPECT_LT(std::abs(far - 1.5), 1e-5);
}

TEST(ProposedGain, AgreesWithStreamCountFormula) {
  for (std::size_t k = 3; k <= 8; ++k)
    for (std::uint64_t n = 0; n <= 15; ++n) {
      const auto sc = stream_counts(k, n);
      EXPECT_EQ(proposed_gain(k, n), gain_from_streams(k, sc.d3, sc.d1)) << "K=" << k << " n*=" << n;
      EXPECT_EQ(proposed_point(k, n).gain, proposed_gain(k, n));
    }
}

TEST(ProposedGain, StrictlyIncreasingAndBelowHalfK) {
  for (std::size_t k = 3; k <= 8; ++k) {
    const Rational half(BigInt(k), BigInt(2));
    Rational prev = proposed_gain(k, 0);
    EXPECT_GE(prev, Rational(1));
    for (std::uint64_t n = 1; n <= 60; ++n) {
      const auto g = proposed_gain(k, n);
      EXPECT_GT(g, prev);
      EXPECT_LT(g, half);
      prev = g;
    }
  }
}

TEST(OriginalGain, Examples) {
  auto p = original_gain(4, 0);
  EXPECT_EQ(p.gain, q(35, 33));
  EXPECT_EQ(p.channel_uses, 33);
  p = original_gain(3, 0);
  EXPECT_EQ(p.gain, q(4, 3));
  EXPECT_EQ(p.channel_uses, 3);
  for (std::uint64_t m = 0; m <= 30; ++m) EXPECT_EQ(original_gain(3, m).gain, proposed_gain(3, m));
}

TEST(OriginalGain, HandlesHugePowers) {
  // (m+2)^N overflows 64 bits here
  const auto p = original_gain(5, 40);
  EXPECT_EQ(p.d1, boost::multiprecision::pow(BigInt(42), 11));
  EXPECT_LT(p.gain, Rational(BigInt(5), BigInt(2)));
}

TEST(OriginalGain, StrictlyIncreasingAndBelowHalfK) {
  for (std::size_t k = 3; k <= 6; ++k) {
    Rational prev = original_gain(k, 0).gain;
    for (std::uint64_t m = 1; m <= 15; ++m) {
      const auto g = original_gain(k, m).gain;
      EXPECT_GT(g, prev);
      EXPECT_LT(g, Rational(BigInt(k), BigInt(2)));
      prev = g;
    }
  }
}

TEST(ProposedChannelUses, Examples) {
  EXPECT_EQ(proposed_channel_uses(3, 0), 3);
  EXPECT_EQ(proposed_channel_uses(4, 0), 7);
  EXPECT_EQ(proposed_channel_uses(4, 1), 27);
}

TEST(GainTable, FourUsersUpToForty) {
  const auto t = gain_table(4, 40);
  ASSERT_EQ(t.proposed.size(), 2u);
  EXPECT_EQ(t.proposed[0].channel_uses, 7);
  EXPECT_EQ(t.proposed[0].gain, q(9, 7));
  EXPECT_EQ(t.proposed[1].channel_uses, 27);
  EXPECT_EQ(t.proposed[1].gain, q(13, 9));
  ASSERT_EQ(t.original.size(), 1u);
  EXPECT_EQ(t.original[0].channel_uses, 33);
  EXPECT_EQ(t.original[0].gain, q(35, 33));
  EXPECT_EQ(t.proposed_envelope.back(), q(13, 9));
}

TEST(GainTable, ThreeUsersCoincide) {
  const auto t = gain_table(3, 3);
  ASSERT_EQ(t.proposed.size(), 1u);
  ASSERT_EQ(t.original.size(), 1u);
  EXPECT_EQ(t.proposed[0].gain, q(4, 3));
  EXPECT_EQ(t.original[0].gain, q(4, 3));
  EXPECT_EQ(t.proposed[0].channel_uses, 3);
  EXPECT_EQ(t.original[0].channel_uses, 3);
}

TEST(GainTable, EveryGainBelowHalfKAndSorted) {
  for (std::size_t k = 3; k <= 7; ++k) {
    const auto t = gain_table(k, 100000);
    const Rational half(BigInt(k), BigInt(2));
    for (const auto* pts : {&t.proposed, &t.original})
      for (std::size_t i = 0; i < pts->size(); ++i) {
        EXPECT_LT((*pts)[i].gain, half);
        EXPECT_EQ((*pts)[i].gain, Rational((*pts)[i].streams_total, (*pts)[i].channel_uses));
        if (i) {
          EXPECT_LT((*pts)[i - 1].channel_uses, (*pts)[i].channel_uses);
        }
      }
  }
  EXPECT_THROW(gain_table(2, 10), ParameterError);
  EXPECT_THROW(gain_table(3, 2), ParameterError);
}

TEST(Dominance, ProposedEnvelopeBeatsOriginal) {
  for (std::size_t k = 4; k <= 6; ++k) {
    const auto t = gain_table(k, 20000);
    for (std::uint64_t b = proposed_channel_uses(k, 0).convert_to<std::uint64_t>(); b <= 20000; b += 7) {
      const auto orig = envelope_gain(t.original, b);
      if (!orig) continue;
      const auto prop = envelope_gain(t.proposed, b);
      ASSERT_TRUE(prop.has_value());
      EXPECT_GT(*prop, *orig) << "K=" << k << " B=" << b;
    }
  }
  const auto t3 = gain_table(3, 2000);
  for (std::uint64_t b = 3; b <= 2000; ++b) EXPECT_EQ(envelope_gain(t3.proposed, b), envelope_gain(t3.original, b));
}

TEST(Remark7, RatioInequality) {
  for (std::size_t k = 3; k <= 6; ++k) {
    const auto n = static_cast<unsigned>(generator_count(k));
    for (std::uint64_t m = 0; m <= 4; ++m) {
      const BigInt numerator = boost::multiprecision::pow(BigInt(m + 1), n) +
                               boost::multiprecision::pow(BigInt(m + 2), n) - BigInt(n) - 2;
      if (numerator < 0 || numerator % 2 != 0) continue;
      const BigInt ns = numerator / 2;
      const Rational lhs(ns + n + 1, ns + 1);
      const Rational rhs(boost::multiprecision::pow(BigInt(m + 2), n), boost::multiprecision::pow(BigInt(m + 1), n));
      EXPECT_LE(lhs, rhs);
      EXPECT_EQ(lhs == rhs, n == 1) << "K=" << k << " m=" << m;
    }
  }
}

TEST(MimoGain, Examples) {
  for (std::size_t k = 3; k <= 6; ++k)
    for (std::uint64_t n = 0; n <= 5; ++n) EXPECT_EQ(mimo_gain(k, 1, n), proposed_gain(k, n));
  EXPECT_EQ(mimo_gain(3, 2, 0), q(25, 21));
  EXPECT_LT(std::abs(mimo_gain(3, 2, 100'000'000).convert_to<double>() - 3.0), 1e-6);
  EXPECT_THROW(mimo_gain(3, 0, 0), ParameterError);
}

TEST(GainTable, EnvelopeLookupMatchesLinearScan) {
  for (std::size_t k = 3; k <= 5; ++k) {
    const auto t = gain_table(k, 3000);
    for (std::uint64_t b = 0; b <= 3000; b += 7) {
      EXPECT_EQ(proposed_envelope_at(t, b), envelope_gain(t.proposed, b)) << "K=" << k << " B=" << b;
      EXPECT_EQ(original_envelope_at(t, b), envelope_gain(t.original, b)) << "K=" << k << " B=" << b;
    }
    EXPECT_FALSE(proposed_envelope_at(t, 2).has_value());
  }
}
