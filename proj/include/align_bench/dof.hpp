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

/**
 * @file dof.hpp
 * @brief Stream counts and multiplexing-gain formulas in exact arithmetic.
 *
 * The proposed scheme bounds the sum of N generator exponents, so user 3
 * gets C(n*+N, N) streams and user 1 gets C(n*+N+1, N). The original scheme
 * bounds every exponent separately and gets (m+1)^N and (m+2)^N. In both
 * cases the gain is ((K-1) d3 + d1) / (d3 + d1) over d3 + d1 channel uses.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "align_bench/errors.hpp"

namespace align_bench {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Nonnegative generator exponents, one per generator in canonical order.
struct ExponentVector {
  std::vector<std::uint32_t> values;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto v : values) s += v;
    return s;
  }
  std::size_t size() const noexcept { return values.size(); }
  std::uint32_t operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
};

enum class Scheme { proposed, original };

inline const char* to_string(Scheme s) { return s == Scheme::proposed ? "proposed" : "original"; }

struct GainPoint {
  Scheme scheme = Scheme::proposed;
  std::uint64_t param = 0;  // n* for proposed, m for original
  BigInt d3;
  BigInt d1;
  BigInt channel_uses;
  BigInt streams_total;
  Rational gain;
};

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;  // exact: acc is C(n-k+i, i) here
  }
  return acc;
}

/// N = (K-1)(K-2) - 1, the number of generators of the construction.
inline std::size_t generator_count(std::size_t users) {
  if (users < 3) throw ParameterError("K = " + std::to_string(users) + ": at least 3 users are required");
  return (users - 1) * (users - 2) - 1;
}

namespace detail {

inline void compositions(std::size_t pos, std::uint32_t remaining, std::vector<std::uint32_t>& cur,
                         std::vector<ExponentVector>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(ExponentVector{cur});
    return;
  }
  for (std::uint32_t v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    compositions(pos + 1, remaining - v, cur, out);
  }
}

inline constexpr std::uint64_t kMaxEnumeration = 50'000'000;

}  // namespace detail

/// All exponent vectors of length N with coordinate sum <= budget, ordered by
/// total degree and lexicographically within a degree.
inline std::vector<ExponentVector> enumerate_exponents(std::size_t n_generators, std::uint32_t budget) {
  if (n_generators < 1) throw ParameterError("enumerate_exponents: N must be at least 1");
  const BigInt count = binomial(budget + n_generators, n_generators);
  if (count > detail::kMaxEnumeration) {
    throw ParameterError("enumerate_exponents: " + count.str() + " vectors is too many to materialize");
  }
  std::vector<ExponentVector> out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<std::uint32_t> cur(n_generators, 0);
  for (std::uint32_t degree = 0; degree <= budget; ++degree) detail::compositions(0, degree, cur, out);
  return out;
}

struct StreamCounts {
  BigInt d3;
  BigInt d1;
};

inline StreamCounts stream_counts(std::size_t users, std::uint64_t n_star) {
  const auto n = generator_count(users);
  return {binomial(n_star + n, n), binomial(n_star + n + 1, n)};
}

/// Gain of any design with user 1 carrying d1 streams and the other K-1 users d3 each.
inline Rational gain_from_streams(std::size_t users, const BigInt& d3, const BigInt& d1) {
  return Rational(BigInt(users - 1) * d3 + d1, d3 + d1);
}

/// ((K-1)(n*+1) + n* + N + 1) / (2n* + N + 2)
inline Rational proposed_gain(std::size_t users, std::uint64_t n_star) {
  const BigInt n = generator_count(users);
  const BigInt ns = n_star;
  return Rational(BigInt(users - 1) * (ns + 1) + ns + n + 1, 2 * ns + n + 2);
}

inline BigInt proposed_channel_uses(std::size_t users, std::uint64_t n_star) {
  const auto sc = stream_counts(users, n_star);
  return sc.d3 + sc.d1;
}

inline GainPoint proposed_point(std::size_t users, std::uint64_t n_star) {
  const auto sc = stream_counts(users, n_star);
  GainPoint p;
  p.scheme = Scheme::proposed;
  p.param = n_star;
  p.d3 = sc.d3;
  p.d1 = sc.d1;
  p.channel_uses = sc.d3 + sc.d1;
  p.streams_total = BigInt(users - 1) * sc.d3 + sc.d1;
  p.gain = Rational(p.streams_total, p.channel_uses);
  return p;
}

/// Comparator point of the original scheme: d3 = (m+1)^N, d1 = (m+2)^N.
inline GainPoint original_gain(std::size_t users, std::uint64_t m) {
  const auto n = static_cast<unsigned>(generator_count(users));
  GainPoint p;
  p.scheme = Scheme::original;
  p.param = m;
  p.d3 = boost::multiprecision::pow(BigInt(m + 1), n);
  p.d1 = boost::multiprecision::pow(BigInt(m + 2), n);
  p.channel_uses = p.d3 + p.d1;
  p.streams_total = BigInt(users - 1) * p.d3 + p.d1;
  p.gain = Rational(p.streams_total, p.channel_uses);
  return p;
}

/// ((KM-1)(n*+1) + n* + N' + 1) / (2n* + N' + 2) with N' = (KM-1)(KM-2) - 1.
inline Rational mimo_gain(std::size_t users, std::size_t antennas, std::uint64_t n_star) {
  if (users < 3) throw ParameterError("K = " + std::to_string(users) + ": at least 3 users are required");
  if (antennas < 1) throw ParameterError("antenna count must be at least 1");
  return proposed_gain(users * antennas, n_star);
}

struct GainTable {
  std::size_t users = 0;
  std::uint64_t max_channel_uses = 0;
  std::vector<GainPoint> proposed;
  std::vector<GainPoint> original;
  // best gain among points of the same scheme with channel_uses <= this point's
  std::vector<Rational> proposed_envelope;
  std::vector<Rational> original_envelope;
};

/// Envelope value at `budget` from points sorted by channel uses and their running maximum.
inline std::optional<Rational> envelope_lookup(const std::vector<GainPoint>& points,
                                               const std::vector<Rational>& envelope, const BigInt& budget) {
  if (points.size() != envelope.size()) throw DimensionError("envelope length does not match point count");
  const auto it = std::upper_bound(points.begin(), points.end(), budget,
                                   [](const BigInt& b, const GainPoint& p) { return b < p.channel_uses; });
  if (it == points.begin()) return std::nullopt;
  return envelope[static_cast<std::size_t>(it - points.begin()) - 1];
}

inline std::optional<Rational> proposed_envelope_at(const GainTable& t, const BigInt& budget) {
  return envelope_lookup(t.proposed, t.proposed_envelope, budget);
}

inline std::optional<Rational> original_envelope_at(const GainTable& t, const BigInt& budget) {
  return envelope_lookup(t.original, t.original_envelope, budget);
}

/// Best gain among `points` whose channel uses fit within `budget`.
inline std::optional<Rational> envelope_gain(const std::vector<GainPoint>& points, const BigInt& budget) {
  std::optional<Rational> best;
  for (const auto& p : points) {
    if (p.channel_uses > budget) continue;
    if (!best || p.gain > *best) best = p.gain;
  }
  return best;
}

inline GainTable gain_table(std::size_t users, std::uint64_t max_channel_uses) {
  generator_count(users);
  if (max_channel_uses < 3) throw ParameterError("max_channel_uses must be at least 3");
  GainTable t;
  t.users = users;
  t.max_channel_uses = max_channel_uses;
  const BigInt cap = max_channel_uses;

  // channel uses grow strictly with the parameter for both schemes
  for (std::uint64_t n = 0;; ++n) {
    auto p = proposed_point(users, n);
    if (p.channel_uses > cap) break;
    t.proposed.push_back(std::move(p));
  }
  for (std::uint64_t m = 0;; ++m) {
    auto p = original_gain(users, m);
    if (p.channel_uses > cap) break;
    t.original.push_back(std::move(p));
  }
  auto by_uses = [](const GainPoint& a, const GainPoint& b) { return a.channel_uses < b.channel_uses; };
  std::stable_sort(t.proposed.begin(), t.proposed.end(), by_uses);
  std::stable_sort(t.original.begin(), t.original.end(), by_uses);

  auto running = [](const std::vector<GainPoint>& pts) {
    std::vector<Rational> env;
    for (const auto& p : pts) env.push_back(env.empty() ? p.gain : std::max(env.back(), p.gain));
    return env;
  };
  t.proposed_envelope = running(t.proposed);
  t.original_envelope = running(t.original);
  return t;
}

}  // namespace align_bench
