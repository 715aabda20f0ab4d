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
 * @file link_sim.hpp
 * @brief Zero-forcing sum rate over an SNR sweep and its high-SNR slope.
 *
 * Every beam column is sent with unit norm and power snr / (total streams).
 * Receiver k inverts its normalized [desired | interference basis] matrix;
 * the rows for the desired columns null all aligned interference. With the
 * filter rescaled so that it passes its own stream with unit gain, the
 * output SINR is p / ||w||^2 under unit-variance noise, and the stream
 * contributes log2(1 + SINR) bits per M channel uses.
 */

#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "align_bench/beamformer.hpp"
#include "align_bench/channel.hpp"
#include "align_bench/dof.hpp"
#include "align_bench/io.hpp"
#include "align_bench/numerics.hpp"

namespace align_bench {

struct EffectiveChannel {
  DenseMatrix matrix;          // M x M, unit-norm columns
  std::vector<double> scales;  // norms of the raw receiver-matrix columns
  std::size_t desired = 0;     // leading columns carrying receiver k's streams
};

inline EffectiveChannel effective_channel(const ChannelSet& cs, const BeamformingDesign& d, std::size_t k) {
  check_compatible(cs, d);
  auto raw = receiver_matrix(cs, d, k);
  if (raw.cols() != raw.rows()) {
    throw DimensionError("receiver " + std::to_string(k) + " matrix is " + std::to_string(raw.rows()) + "x" +
                         std::to_string(raw.cols()) + ", expected square (M == d1 + d3)");
  }
  auto n = normalize_columns(raw);
  return {std::move(n.matrix), std::move(n.scales), d.d(k)};
}

/// Desired-stream rows of the inverse of the normalized effective channel:
/// row i times the effective channel is the unit row e_i.
inline DenseMatrix zf_filters(const EffectiveChannel& eff, double tol_rel = kDefaultRankTol) {
  const auto inv = inverse(eff.matrix, tol_rel);
  DenseMatrix w(eff.desired, inv.cols());
  for (std::size_t i = 0; i < eff.desired; ++i)
    for (std::size_t c = 0; c < inv.cols(); ++c) w(i, c) = inv(i, c);
  return w;
}

inline DenseMatrix zf_filters(const ChannelSet& cs, const BeamformingDesign& d, std::size_t k,
                              double tol_rel = kDefaultRankTol) {
  return zf_filters(effective_channel(cs, d, k), tol_rel);
}

/// Post-ZF SINR per unit transmit power, 1 / ||w||^2 with w normalized to pass
/// its own unit-norm beam with gain 1. Ordered by receiver, then stream.
inline std::vector<double> stream_sinr_gains(const ChannelSet& cs, const BeamformingDesign& d,
                                             double tol_rel = kDefaultRankTol) {
  std::vector<double> gains;
  gains.reserve(d.total_streams());
  for (std::size_t k = 1; k <= cs.users(); ++k) {
    const auto eff = effective_channel(cs, d, k);
    const auto w = zf_filters(eff, tol_rel);
    for (std::size_t i = 0; i < eff.desired; ++i) {
      // H(k,k) v_i / |v_i| = (scale_i / |v_i|) * normalized column i
      const double amplitude = eff.scales[i] / d.V(k).column_norm(i);
      gains.push_back(amplitude * amplitude / std::norm(vector_norm(w.row(i))));
    }
  }
  return gains;
}

/// Sum of log2(1 + p g) with p = snr / gains.size().
inline double sum_rate_from_gains(const std::vector<double>& gains, double snr) {
  if (gains.empty()) return 0.0;
  const double p = snr / static_cast<double>(gains.size());
  double r = 0.0;
  for (double g : gains) r += std::log2(1.0 + p * g);
  return r;
}

/// Bits per M channel uses at linear total SNR `snr`.
inline double sum_rate(const ChannelSet& cs, const BeamformingDesign& d, double snr,
                       double tol_rel = kDefaultRankTol) {
  if (!(snr > 0.0)) throw ParameterError("snr must be positive");
  return sum_rate_from_gains(stream_sinr_gains(cs, d, tol_rel), snr);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct LinkReport {
  std::vector<double> snr_grid_db;
  std::vector<double> sum_rate_bits;
  double slope_streams = 0.0;
  double normalized_slope = 0.0;
  Rational target_gain;
  std::size_t channel_uses = 0;

  double target() const { return target_gain.convert_to<double>(); }
  double relative_deviation() const { return std::abs(normalized_slope - target()) / target(); }
};

/// Sweeps `steps` evenly spaced points over [lo, hi] dB and reports the
/// endpoint slope of rate against log2(snr).
inline LinkReport simulate_link(const ChannelSet& cs, const BeamformingDesign& d, double snr_lo_db, double snr_hi_db,
                                std::size_t steps = 2, double tol_rel = kDefaultRankTol) {
  if (!(snr_hi_db > snr_lo_db)) throw ParameterError("snr_hi_db must exceed snr_lo_db");
  if (snr_lo_db < 20.0) throw ParameterError("slope estimation needs snr_lo_db >= 20");
  if (steps < 2) throw ParameterError("at least two SNR steps are required");
  const auto gains = stream_sinr_gains(cs, d, tol_rel);

  LinkReport rep;
  rep.channel_uses = cs.realizations();
  for (std::size_t s = 0; s < steps; ++s) {
    const double db = snr_lo_db + (snr_hi_db - snr_lo_db) * static_cast<double>(s) / static_cast<double>(steps - 1);
    rep.snr_grid_db.push_back(db);
    rep.sum_rate_bits.push_back(sum_rate_from_gains(gains, db_to_linear(db)));
  }
  const double r_lo = sum_rate_from_gains(gains, db_to_linear(snr_lo_db));
  const double r_hi = sum_rate_from_gains(gains, db_to_linear(snr_hi_db));
  rep.slope_streams = (r_hi - r_lo) / ((snr_hi_db - snr_lo_db) / 10.0 * std::log2(10.0));
  rep.normalized_slope = rep.slope_streams / static_cast<double>(cs.realizations());
  rep.target_gain = proposed_gain(d.users, d.n_star);
  return rep;
}

inline LinkReport estimate_slope(const ChannelSet& cs, const BeamformingDesign& d, double snr_lo_db,
                                 double snr_hi_db) {
  return simulate_link(cs, d, snr_lo_db, snr_hi_db, 2);
}

/// `snr_db,sum_rate_bits` rows followed by `#` summary lines.
inline std::string link_report_to_csv(const LinkReport& rep) {
  std::ostringstream os;
  os << "snr_db,sum_rate_bits\n";
  for (std::size_t i = 0; i < rep.snr_grid_db.size(); ++i) {
    os << io::format_double(rep.snr_grid_db[i]) << ',' << io::format_double(rep.sum_rate_bits[i]) << '\n';
  }
  os << "# slope_streams=" << io::format_double(rep.slope_streams) << '\n';
  os << "# normalized_slope=" << io::format_double(rep.normalized_slope) << '\n';
  os << "# target_gain=" << rep.target_gain.str() << '\n';
  os << "# relative_deviation=" << io::format_double(rep.relative_deviation()) << '\n';
  return os.str();
}

}  // namespace align_bench
