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
 * @file channel.hpp
 * @brief K-user frequency-selective channel sets over M realizations.
 *
 * H(k, l) is the diagonal operator from transmitter l to receiver k, both
 * 1-based. Entries have magnitude uniform in [h_min, h_max] and phase uniform
 * in [0, 2pi), drawn independently in (k, l, i) order from a 64-bit Mersenne
 * twister seeded with the recorded seed.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "align_bench/errors.hpp"
#include "align_bench/io.hpp"
#include "align_bench/numerics.hpp"

namespace align_bench {

inline constexpr double kDefaultHMin = 0.5;
inline constexpr double kDefaultHMax = 2.0;
inline constexpr int kChannelFormatVersion = 1;

namespace detail {
// |polar(r, theta)| may differ from r in the last bits
inline constexpr double kMagnitudeSlack = 1e-12;

inline void check_user_count(std::size_t users) {
  if (users < 3) throw ParameterError("K = " + std::to_string(users) + ": at least 3 users are required");
}
}  // namespace detail

class ChannelSet {
 public:
  /// `operators` is the K x K grid in row-major (receiver-major) order.
  ChannelSet(std::size_t users, std::size_t realizations, std::vector<DiagonalOperator> operators,
             std::uint64_t seed, double h_min, double h_max)
      : users_(users),
        realizations_(realizations),
        seed_(seed),
        h_min_(h_min),
        h_max_(h_max),
        operators_(std::move(operators)) {
    validate();
  }

  /// Every link is the identity; a degenerate set on which alignment collapses.
  static ChannelSet identity(std::size_t users, std::size_t realizations) {
    detail::check_user_count(users);
    return ChannelSet(users, realizations,
                      std::vector<DiagonalOperator>(users * users, DiagonalOperator::identity(realizations)), 0, 1.0,
                      1.0);
  }

  std::size_t users() const noexcept { return users_; }
  std::size_t realizations() const noexcept { return realizations_; }
  std::uint64_t seed() const noexcept { return seed_; }
  double h_min() const noexcept { return h_min_; }
  double h_max() const noexcept { return h_max_; }

  /// Channel from transmitter l to receiver k (1-based).
  const DiagonalOperator& h(std::size_t k, std::size_t l) const {
    if (k < 1 || k > users_ || l < 1 || l > users_) {
      throw ParameterError("channel index (" + std::to_string(k) + ", " + std::to_string(l) + ") out of range");
    }
    return operators_[(k - 1) * users_ + (l - 1)];
  }

  const std::vector<DiagonalOperator>& operators() const noexcept { return operators_; }

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

 private:
  void validate() const {
    detail::check_user_count(users_);
    if (realizations_ < 1) throw ParameterError("M must be at least 1");
    if (!(h_min_ > 0.0) || !(h_min_ <= h_max_) || !std::isfinite(h_max_)) {
      throw ParameterError("magnitude bounds must satisfy 0 < h_min <= h_max < inf");
    }
    if (operators_.size() != users_ * users_) {
      throw DimensionError("expected " + std::to_string(users_ * users_) + " channel operators, got " +
                           std::to_string(operators_.size()));
    }
    const double lo = h_min_ * (1.0 - detail::kMagnitudeSlack);
    const double hi = h_max_ * (1.0 + detail::kMagnitudeSlack);
    for (std::size_t idx = 0; idx < operators_.size(); ++idx) {
      const auto& op = operators_[idx];
      if (op.size() != realizations_) {
        throw DimensionError("channel operator length " + std::to_string(op.size()) + " != M = " +
                             std::to_string(realizations_));
      }
      for (std::size_t i = 0; i < op.size(); ++i) {
        const double mag = std::abs(op[i]);
        if (!std::isfinite(op[i].real()) || !std::isfinite(op[i].imag()) || mag < lo || mag > hi) {
          throw FormatError("channel H(" + std::to_string(idx / users_ + 1) + "," + std::to_string(idx % users_ + 1) +
                            ") entry " + std::to_string(i + 1) + " has magnitude " + io::format_double(mag) +
                            " outside [h_min, h_max]");
        }
      }
    }
  }

  std::size_t users_ = 0;
  std::size_t realizations_ = 0;
  std::uint64_t seed_ = 0;
  double h_min_ = kDefaultHMin;
  double h_max_ = kDefaultHMax;
  std::vector<DiagonalOperator> operators_;
};

inline ChannelSet generate_channels(std::size_t users, std::size_t realizations, std::uint64_t seed,
                                    double h_min = kDefaultHMin, double h_max = kDefaultHMax) {
  detail::check_user_count(users);
  if (realizations < 1) throw ParameterError("M must be at least 1");
  if (!(h_min > 0.0) || !(h_min <= h_max) || !std::isfinite(h_max)) {
    throw ParameterError("magnitude bounds must satisfy 0 < h_min <= h_max < inf");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(h_min, h_max);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  std::vector<DiagonalOperator> ops;
  ops.reserve(users * users);
  for (std::size_t link = 0; link < users * users; ++link) {
    std::vector<Complex> entries(realizations);
    for (auto& e : entries) {
      const double r = h_min == h_max ? h_min : magnitude(rng);
      const double theta = phase(rng);
      e = std::polar(r, theta);
    }
    ops.emplace_back(std::move(entries));
  }
  return ChannelSet(users, realizations, std::move(ops), seed, h_min, h_max);
}

inline std::string channels_to_text(const ChannelSet& cs) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format_version\": " << kChannelFormatVersion << ",\n";
  os << "  \"K\": " << cs.users() << ",\n";
  os << "  \"M\": " << cs.realizations() << ",\n";
  os << "  \"seed\": " << cs.seed() << ",\n";
  os << "  \"h_min\": " << io::format_double(cs.h_min()) << ",\n";
  os << "  \"h_max\": " << io::format_double(cs.h_max()) << ",\n";
  os << "  \"H\": [\n";
  for (std::size_t k = 1; k <= cs.users(); ++k) {
    os << "    [\n";
    for (std::size_t l = 1; l <= cs.users(); ++l) {
      os << "      ";
      io::write_complex_array(os, cs.h(k, l).entries());
      os << (l < cs.users() ? ",\n" : "\n");
    }
    os << (k < cs.users() ? "    ],\n" : "    ]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

namespace detail {

inline Complex parse_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<Complex> parse_complex_array(const nlohmann::json& j, std::size_t expected, const char* what) {
  if (!j.is_array() || j.size() != expected) {
    throw FormatError(std::string(what) + ": expected an array of " + std::to_string(expected) + " complex entries");
  }
  std::vector<Complex> out;
  out.reserve(expected);
  for (const auto& e : j) out.push_back(parse_complex(e));
  return out;
}

inline nlohmann::json parse_document(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

template <typename T>
T require_field(const nlohmann::json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace detail

inline ChannelSet channels_from_text(const std::string& text) {
  const auto doc = detail::parse_document(text);
  if (detail::require_field<int>(doc, "format_version") != kChannelFormatVersion) {
    throw FormatError("unsupported channel format_version");
  }
  const auto users = detail::require_field<long long>(doc, "K");
  const auto realizations = detail::require_field<long long>(doc, "M");
  if (users < 3) throw ParameterError("K = " + std::to_string(users) + ": at least 3 users are required");
  if (realizations < 1) throw ParameterError("M must be at least 1");
  const auto seed = detail::require_field<std::uint64_t>(doc, "seed");
  const auto h_min = detail::require_field<double>(doc, "h_min");
  const auto h_max = detail::require_field<double>(doc, "h_max");
  if (!doc.contains("H")) throw FormatError("missing field 'H'");
  const auto& grid = doc["H"];
  const auto K = static_cast<std::size_t>(users);
  const auto M = static_cast<std::size_t>(realizations);
  if (!grid.is_array() || grid.size() != K) throw FormatError("H must have K rows");
  std::vector<DiagonalOperator> ops;
  ops.reserve(K * K);
  for (const auto& row : grid) {
    if (!row.is_array() || row.size() != K) throw FormatError("every H row must have K operators");
    for (const auto& op : row) ops.emplace_back(detail::parse_complex_array(op, M, "H operator"));
  }
  return ChannelSet(K, M, std::move(ops), seed, h_min, h_max);
}

inline void save_channels(const ChannelSet& cs, const std::filesystem::path& path) {
  io::write_file_atomic(path, channels_to_text(cs));
}

inline ChannelSet load_channels(const std::filesystem::path& path) { return channels_from_text(io::read_file(path)); }

}  // namespace align_bench
