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
 * @file beamformer.hpp
 * @brief Transmit beamformers that align all interference at every receiver.
 *
 * For receivers k and senders j outside user 1, T(k, j) is the diagonal
 *
 *     T(k, j) = H(k,1)^-1 H(k,j) H(1,j)^-1 H(1,3).
 *
 * Writing B = T(2,3)^-1 and G(k,l) = B T(k,l) for the N ordered pairs other
 * than (2,3), the user 1 basis is every monomial prod G^e applied to the seed
 * vector with |e| <= n*+1, and the user 3 basis is B times the monomials with
 * |e| <= n*. Every other user i sends H(1,i)^-1 H(1,3) V3 so that all
 * interference lines up exactly at receiver 1.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "align_bench/channel.hpp"
#include "align_bench/dof.hpp"
#include "align_bench/errors.hpp"
#include "align_bench/io.hpp"
#include "align_bench/numerics.hpp"

namespace align_bench {

inline constexpr int kDesignFormatVersion = 1;

/// Ordered user pair (k, l), naming T(k, l): receiver k, sender l.
using UserPair = std::pair<std::size_t, std::size_t>;

inline DiagonalOperator t_matrix(const ChannelSet& cs, std::size_t k, std::size_t j,
                                 double eps = kDefaultInverseEps) {
  if (k < 2 || j < 2 || k == j || k > cs.users() || j > cs.users()) {
    throw ParameterError("T(" + std::to_string(k) + ", " + std::to_string(j) + ") is undefined");
  }
  return diag_inverse(cs.h(k, 1), eps) * cs.h(k, j) * diag_inverse(cs.h(1, j), eps) * cs.h(1, 3);
}

/// T(k, j) for every ordered pair k != j in {2..K}, keyed by (k, j).
inline std::map<UserPair, DiagonalOperator> compute_T(const ChannelSet& cs, double eps = kDefaultInverseEps) {
  std::map<UserPair, DiagonalOperator> out;
  for (std::size_t k = 2; k <= cs.users(); ++k)
    for (std::size_t j = 2; j <= cs.users(); ++j)
      if (k != j) out.emplace(UserPair{k, j}, t_matrix(cs, k, j, eps));
  return out;
}

struct GeneratorSet {
  DiagonalOperator base_inverse;            // T(2,3)^-1
  std::vector<DiagonalOperator> generators;  // T(2,3)^-1 T(k,l), lexicographic in (k,l)
  std::vector<UserPair> index_map;
};

inline GeneratorSet build_generator_set(const ChannelSet& cs, double eps = kDefaultInverseEps) {
  const auto t = compute_T(cs, eps);
  GeneratorSet g;
  g.base_inverse = diag_inverse(t.at({2, 3}), eps);
  for (const auto& [pair, op] : t) {  // std::map iterates in lexicographic order
    if (pair == UserPair{2, 3}) continue;
    g.generators.push_back(g.base_inverse * op);
    g.index_map.push_back(pair);
  }
  return g;
}

namespace detail {

/// Columns prod_g G_g^{e_g} x for every e in `exponents` (graded-lex order).
/// Each nonzero e reuses the column of e minus its first nonzero unit vector.
inline std::vector<std::vector<Complex>> monomial_columns(const std::vector<DiagonalOperator>& generators,
                                                          const std::vector<ExponentVector>& exponents,
                                                          std::span<const Complex> seed) {
  std::map<ExponentVector, std::size_t> index;
  std::vector<std::vector<Complex>> cols;
  cols.reserve(exponents.size());
  for (const auto& e : exponents) {
    std::size_t g = 0;
    while (g < e.size() && e[g] == 0) ++g;
    if (g == e.size()) {
      cols.emplace_back(seed.begin(), seed.end());
    } else {
      auto parent = e;
      --parent.values[g];
      const auto it = index.find(parent);
      if (it == index.end()) throw Error("monomial_columns: exponent set is not downward closed");
      cols.push_back(diag_apply(generators[g], cols[it->second]));
    }
    index.emplace(e, cols.size() - 1);
  }
  return cols;
}

inline std::vector<Complex> resolve_seed(const ChannelSet& cs, const std::optional<std::vector<Complex>>& seed) {
  if (!seed) return std::vector<Complex>(cs.realizations(), Complex(1.0, 0.0));
  if (seed->size() != cs.realizations()) throw DimensionError("seed vector length must equal M");
  return *seed;
}

inline std::uint32_t checked_budget(std::uint64_t b) {
  if (b > 1'000'000) throw ParameterError("exponent budget too large");
  return static_cast<std::uint32_t>(b);
}

}  // namespace detail

/// Throws DimensionError unless M equals d3 + d1 for (K, n*).
inline void require_channel_uses(const ChannelSet& cs, std::uint64_t n_star) {
  const BigInt required = proposed_channel_uses(cs.users(), n_star);
  if (BigInt(cs.realizations()) != required) {
    throw DimensionError("dimension budget: K = " + std::to_string(cs.users()) + ", n* = " + std::to_string(n_star) +
                         " requires M = " + required.str() + ", channel set has M = " +
                         std::to_string(cs.realizations()));
  }
}

inline DenseMatrix build_V3(const ChannelSet& cs, std::uint64_t n_star,
                            const std::optional<std::vector<Complex>>& seed = std::nullopt) {
  require_channel_uses(cs, n_star);
  const auto gs = build_generator_set(cs);
  const auto x = detail::resolve_seed(cs, seed);
  const auto exps = enumerate_exponents(gs.generators.size(), detail::checked_budget(n_star));
  auto cols = detail::monomial_columns(gs.generators, exps, x);
  for (auto& c : cols) c = diag_apply(gs.base_inverse, c);
  return DenseMatrix::from_columns(cs.realizations(), cols);
}

inline DenseMatrix build_V1(const ChannelSet& cs, std::uint64_t n_star,
                            const std::optional<std::vector<Complex>>& seed = std::nullopt) {
  require_channel_uses(cs, n_star);
  const auto gs = build_generator_set(cs);
  const auto x = detail::resolve_seed(cs, seed);
  const auto exps = enumerate_exponents(gs.generators.size(), detail::checked_budget(n_star + 1));
  return DenseMatrix::from_columns(cs.realizations(), detail::monomial_columns(gs.generators, exps, x));
}

/// H(1,i)^-1 H(1,3) V3, which aligns user i with user 3 at receiver 1.
inline DenseMatrix derive_Vi(const ChannelSet& cs, const DenseMatrix& v3, std::size_t user) {
  if (user < 2 || user == 3 || user > cs.users()) {
    throw ParameterError("derive_Vi: user " + std::to_string(user) + " is not in {2, 4, ..., K}");
  }
  return diag_apply(diag_inverse(cs.h(1, user)) * cs.h(1, 3), v3);
}

struct BeamformingDesign {
  std::size_t users = 0;
  std::size_t realizations = 0;
  std::uint64_t n_star = 0;
  std::vector<DenseMatrix> beams;   // beams[k-1] is M x d[k-1]
  std::vector<std::size_t> streams; // d

  const DenseMatrix& V(std::size_t k) const { return beams.at(k - 1); }
  DenseMatrix& V(std::size_t k) { return beams.at(k - 1); }
  std::size_t d(std::size_t k) const { return streams.at(k - 1); }
  std::size_t total_streams() const {
    std::size_t s = 0;
    for (auto x : streams) s += x;
    return s;
  }

  /// Recomputes `streams` from the beam widths after a beam is edited.
  void sync_streams() {
    streams.clear();
    for (const auto& b : beams) streams.push_back(b.cols());
  }

  friend bool operator==(const BeamformingDesign&, const BeamformingDesign&) = default;
};

struct BuildOptions {
  std::optional<std::vector<Complex>> seed_vector;  // defaults to the all-ones vector
  double rank_tol = kDefaultRankTol;
  std::uint64_t max_n_star = 6;
  double dynamic_range_warning = 1e12;
  std::function<void(const std::string&)> warn = [](const std::string& msg) {
    std::clog << "warning: " << msg << '\n';
  };
};

/// Rough max/min entry magnitude ratio of the deepest monomial column.
inline double estimated_dynamic_range(const GeneratorSet& gs, std::uint64_t n_star) {
  double hi = 1.0;
  double lo = 1.0;
  for (const auto& g : gs.generators) {
    hi = std::max(hi, g.max_magnitude());
    lo = std::min(lo, g.min_magnitude());
  }
  return std::pow(hi / lo, static_cast<double>(n_star + 1)) *
         (gs.base_inverse.max_magnitude() / gs.base_inverse.min_magnitude());
}

/// Assembles V1, V3 and the derived beams without checking their ranks.
inline BeamformingDesign construct_design(const ChannelSet& cs, std::uint64_t n_star, const BuildOptions& opts = {}) {
  if (n_star > opts.max_n_star) {
    throw ParameterError("n* = " + std::to_string(n_star) + " exceeds the cap of " + std::to_string(opts.max_n_star));
  }
  require_channel_uses(cs, n_star);
  const auto gs = build_generator_set(cs);
  if (const double range = estimated_dynamic_range(gs, n_star); range > opts.dynamic_range_warning && opts.warn) {
    opts.warn("estimated dynamic range " + io::format_double(range) + " of the beam columns exceeds " +
              io::format_double(opts.dynamic_range_warning) + "; rank decisions may be unreliable");
  }

  BeamformingDesign d;
  d.users = cs.users();
  d.realizations = cs.realizations();
  d.n_star = n_star;
  const auto v3 = build_V3(cs, n_star, opts.seed_vector);
  d.beams.reserve(cs.users());
  for (std::size_t k = 1; k <= cs.users(); ++k) {
    if (k == 1) {
      d.beams.push_back(build_V1(cs, n_star, opts.seed_vector));
    } else if (k == 3) {
      d.beams.push_back(v3);
    } else {
      d.beams.push_back(derive_Vi(cs, v3, k));
    }
  }
  d.sync_streams();
  return d;
}

/// construct_design plus a full-column-rank check of every beam.
inline BeamformingDesign build_design(const ChannelSet& cs, std::uint64_t n_star, const BuildOptions& opts = {}) {
  auto d = construct_design(cs, n_star, opts);
  for (std::size_t k = 1; k <= d.users; ++k) {
    const auto info = rank_info(d.V(k), opts.rank_tol);
    if (info.rank != d.d(k)) {
      throw DegenerateDesignError("construction degenerate: V[" + std::to_string(k) + "] has rank " +
                                  std::to_string(info.rank) + " < " + std::to_string(d.d(k)) +
                                  " columns at tolerance " + io::format_double(opts.rank_tol));
    }
  }
  return d;
}

/// Receiver k's [desired | interference basis] matrix: [H(1,1)V1 | H(1,3)V3]
/// at receiver 1 and [H(k,k)Vk | H(k,1)V1] elsewhere.
inline DenseMatrix receiver_matrix(const ChannelSet& cs, const BeamformingDesign& d, std::size_t k) {
  if (k < 1 || k > cs.users()) throw ParameterError("receiver index out of range");
  const auto desired = diag_apply(cs.h(k, k), d.V(k));
  const auto interference = k == 1 ? diag_apply(cs.h(1, 3), d.V(3)) : diag_apply(cs.h(k, 1), d.V(1));
  return hcat(desired, interference);
}

inline void check_compatible(const ChannelSet& cs, const BeamformingDesign& d) {
  if (d.users != cs.users()) {
    throw DimensionError("design has K = " + std::to_string(d.users) + ", channels have K = " +
                         std::to_string(cs.users()));
  }
  if (d.realizations != cs.realizations()) {
    throw DimensionError("design has M = " + std::to_string(d.realizations) + ", channels have M = " +
                         std::to_string(cs.realizations()));
  }
  if (d.beams.size() != d.users || d.streams.size() != d.users) throw DimensionError("design must hold K beams");
  for (std::size_t k = 1; k <= d.users; ++k) {
    if (d.V(k).rows() != d.realizations || d.V(k).cols() != d.d(k)) {
      throw DimensionError("V[" + std::to_string(k) + "] shape does not match (M, d[k])");
    }
  }
}

inline std::string design_to_text(const BeamformingDesign& d) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format_version\": " << kDesignFormatVersion << ",\n";
  os << "  \"K\": " << d.users << ",\n";
  os << "  \"M\": " << d.realizations << ",\n";
  os << "  \"n_star\": " << d.n_star << ",\n";
  os << "  \"d\": [";
  for (std::size_t k = 0; k < d.streams.size(); ++k) os << (k ? ", " : "") << d.streams[k];
  os << "],\n";
  os << "  \"V\": [\n";
  for (std::size_t k = 0; k < d.beams.size(); ++k) {
    os << "    [\n";
    const auto& v = d.beams[k];
    for (std::size_t c = 0; c < v.cols(); ++c) {
      os << "      ";
      io::write_complex_array(os, v.column(c));
      os << (c + 1 < v.cols() ? ",\n" : "\n");
    }
    os << (k + 1 < d.beams.size() ? "    ],\n" : "    ]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

inline BeamformingDesign design_from_text(const std::string& text) {
  const auto doc = detail::parse_document(text);
  if (detail::require_field<int>(doc, "format_version") != kDesignFormatVersion) {
    throw FormatError("unsupported design format_version");
  }
  const auto users = detail::require_field<long long>(doc, "K");
  const auto realizations = detail::require_field<long long>(doc, "M");
  if (users < 3) throw ParameterError("K = " + std::to_string(users) + ": at least 3 users are required");
  if (realizations < 1) throw ParameterError("M must be at least 1");
  const auto counts = detail::require_field<std::vector<long long>>(doc, "d");
  BeamformingDesign d;
  d.users = static_cast<std::size_t>(users);
  d.realizations = static_cast<std::size_t>(realizations);
  d.n_star = detail::require_field<std::uint64_t>(doc, "n_star");
  if (counts.size() != d.users) throw FormatError("d must list K stream counts");
  if (!doc.contains("V") || !doc["V"].is_array() || doc["V"].size() != d.users) {
    throw FormatError("V must hold K beamforming matrices");
  }
  for (std::size_t k = 0; k < d.users; ++k) {
    const auto& cols = doc["V"][k];
    if (!cols.is_array()) throw FormatError("V entries must be arrays of columns");
    if (counts[k] < 0 || static_cast<std::size_t>(counts[k]) != cols.size()) {
      throw FormatError("d[" + std::to_string(k + 1) + "] = " + std::to_string(counts[k]) + " but V[" +
                        std::to_string(k + 1) + "] has " + std::to_string(cols.size()) + " columns");
    }
    std::vector<std::vector<Complex>> columns;
    for (const auto& c : cols) columns.push_back(detail::parse_complex_array(c, d.realizations, "V column"));
    for (const auto& c : columns)
      for (const auto& z : c)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw FormatError("non-finite beam entry");
    d.beams.push_back(DenseMatrix::from_columns(d.realizations, columns));
    d.streams.push_back(cols.size());
  }
  return d;
}

inline void save_design(const BeamformingDesign& d, const std::filesystem::path& path) {
  io::write_file_atomic(path, design_to_text(d));
}

inline BeamformingDesign load_design(const std::filesystem::path& path) {
  return design_from_text(io::read_file(path));
}

}  // namespace align_bench
