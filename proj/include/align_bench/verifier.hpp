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
 * @file verifier.hpp
 * @brief Certifies the alignment conditions of a design on a channel set.
 *
 * Receiver 1 alignment is an entrywise identity (H(1,i) Vi == H(1,3) V3) and
 * is checked as a relative residual against `alignment_tol`. The remaining
 * conditions are span statements (T(k,l) V3 inside span V1, full-rank
 * receiver matrices, full-column-rank beams) and are decided by the pivoted
 * QR rank at `rank_tol`.
 */

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "align_bench/beamformer.hpp"
#include "align_bench/channel.hpp"
#include "align_bench/dof.hpp"
#include "align_bench/io.hpp"
#include "align_bench/numerics.hpp"

namespace align_bench {

inline constexpr double kDefaultAlignmentTol = 1e-10;

struct VerifyTolerances {
  double alignment = kDefaultAlignmentTol;
  double rank = kDefaultRankTol;
};

struct AlignmentResidual {
  std::size_t user = 0;
  double residual = 0.0;
  bool passed = false;
};

struct InclusionResult {
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t rank_v1 = 0;         // rank of V1
  std::size_t rank_augmented = 0;  // rank of [V1 | T(k,l) V3]
  bool included = false;
};

struct ReceiverRank {
  std::size_t receiver = 0;
  std::size_t rank = 0;
  std::size_t required = 0;
  double condition = 0.0;
  bool passed = false;
};

struct BeamRank {
  std::size_t user = 0;
  std::size_t rank = 0;
  std::size_t columns = 0;
  bool passed = false;
};

struct StreamCountCheck {
  std::string expected_d3;
  std::string expected_d1;
  bool d3_ok = false;        // every user other than 1 carries C(n*+N, N)
  bool d1_ok = false;        // user 1 carries C(n*+N+1, N)
  bool dimension_ok = false; // M == d1 + d3
  bool passed() const { return d3_ok && d1_ok && dimension_ok; }
};

struct AlignmentReport {
  std::vector<AlignmentResidual> rx1_alignment;
  std::vector<InclusionResult> table1_inclusions;
  std::vector<ReceiverRank> effective_ranks;
  std::vector<BeamRank> beam_ranks;
  StreamCountCheck stream_counts;

  bool alignment_ok() const {
    for (const auto& r : rx1_alignment)
      if (!r.passed) return false;
    return true;
  }
  bool inclusions_ok() const {
    for (const auto& r : table1_inclusions)
      if (!r.included) return false;
    return true;
  }
  bool effective_ranks_ok() const {
    for (const auto& r : effective_ranks)
      if (!r.passed) return false;
    return true;
  }
  bool beam_ranks_ok() const {
    for (const auto& r : beam_ranks)
      if (!r.passed) return false;
    return true;
  }
  bool overall() const {
    return alignment_ok() && inclusions_ok() && effective_ranks_ok() && beam_ranks_ok() && stream_counts.passed();
  }
};

/// Relative residual ||H(1,i)Vi - H(1,3)V3|| / ||H(1,3)V3|| for i in {2, 4, ..., K}.
inline std::vector<AlignmentResidual> check_alignment_rx1(const ChannelSet& cs, const BeamformingDesign& d,
                                                          double tol = kDefaultAlignmentTol) {
  check_compatible(cs, d);
  const auto reference = diag_apply(cs.h(1, 3), d.V(3));
  const double ref_norm = reference.frobenius_norm();
  std::vector<AlignmentResidual> out;
  for (std::size_t i = 2; i <= cs.users(); ++i) {
    if (i == 3) continue;
    AlignmentResidual r;
    r.user = i;
    const auto received = diag_apply(cs.h(1, i), d.V(i));
    if (received.cols() != reference.cols()) {
      r.residual = std::numeric_limits<double>::infinity();
    } else {
      const double diff = (received - reference).frobenius_norm();
      r.residual = ref_norm > 0.0 ? diff / ref_norm : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    }
    r.passed = r.residual <= tol;
    out.push_back(r);
  }
  return out;
}

/// span T(k,l) V3 inside span V1 for every ordered pair k != l in {2..K}, (2,3) included.
inline std::vector<InclusionResult> check_table1_inclusions(const ChannelSet& cs, const BeamformingDesign& d,
                                                            double rank_tol = kDefaultRankTol) {
  check_compatible(cs, d);
  const auto t = compute_T(cs);
  const std::size_t rank_v1 = matrix_rank(d.V(1), rank_tol);
  std::vector<InclusionResult> out;
  for (const auto& [pair, op] : t) {
    InclusionResult r;
    r.k = pair.first;
    r.l = pair.second;
    r.rank_v1 = rank_v1;
    r.rank_augmented = matrix_rank(hcat(d.V(1), diag_apply(op, d.V(3))), rank_tol);
    r.included = r.rank_augmented == rank_v1;
    out.push_back(r);
  }
  return out;
}

/// Every receiver matrix must have rank M.
inline std::vector<ReceiverRank> check_effective_rank(const ChannelSet& cs, const BeamformingDesign& d,
                                                      double rank_tol = kDefaultRankTol) {
  check_compatible(cs, d);
  std::vector<ReceiverRank> out;
  for (std::size_t k = 1; k <= cs.users(); ++k) {
    const auto info = rank_info(receiver_matrix(cs, d, k), rank_tol);
    ReceiverRank r;
    r.receiver = k;
    r.rank = info.rank;
    r.required = cs.realizations();
    r.condition = info.condition();
    r.passed = info.rank == r.required;
    out.push_back(r);
  }
  return out;
}

inline StreamCountCheck check_stream_counts(const BeamformingDesign& d) {
  const auto expected = stream_counts(d.users, d.n_star);
  StreamCountCheck c;
  c.expected_d3 = expected.d3.str();
  c.expected_d1 = expected.d1.str();
  c.d1_ok = BigInt(d.d(1)) == expected.d1;
  c.d3_ok = true;
  for (std::size_t k = 2; k <= d.users; ++k) c.d3_ok = c.d3_ok && BigInt(d.d(k)) == expected.d3;
  c.dimension_ok = d.d(1) + d.d(3) == d.realizations;
  return c;
}

inline std::vector<BeamRank> check_beam_ranks(const BeamformingDesign& d, double rank_tol = kDefaultRankTol) {
  std::vector<BeamRank> out;
  for (std::size_t k = 1; k <= d.users; ++k) {
    BeamRank r;
    r.user = k;
    r.rank = matrix_rank(d.V(k), rank_tol);
    r.columns = d.V(k).cols();
    r.passed = r.rank == r.columns;
    out.push_back(r);
  }
  return out;
}

inline AlignmentReport verify_design(const ChannelSet& cs, const BeamformingDesign& d,
                                     const VerifyTolerances& tol = {}) {
  check_compatible(cs, d);
  AlignmentReport rep;
  rep.rx1_alignment = check_alignment_rx1(cs, d, tol.alignment);
  rep.table1_inclusions = check_table1_inclusions(cs, d, tol.rank);
  rep.effective_ranks = check_effective_rank(cs, d, tol.rank);
  rep.beam_ranks = check_beam_ranks(d, tol.rank);
  rep.stream_counts = check_stream_counts(d);
  return rep;
}

/// `tol` bounds the receiver 1 alignment residual; rank decisions use the default.
inline AlignmentReport verify_design(const ChannelSet& cs, const BeamformingDesign& d, double tol) {
  return verify_design(cs, d, VerifyTolerances{tol, kDefaultRankTol});
}

/// One `check=... key=value ... status=pass|fail` record per line, then `overall=...`.
inline std::string report_to_text(const AlignmentReport& rep) {
  auto status = [](bool ok) { return ok ? "pass" : "fail"; };
  std::ostringstream os;
  for (const auto& r : rep.rx1_alignment) {
    os << "check=rx1_alignment user=" << r.user << " residual=" << io::format_double(r.residual)
       << " status=" << status(r.passed) << '\n';
  }
  for (const auto& r : rep.table1_inclusions) {
    os << "check=table1_inclusion k=" << r.k << " l=" << r.l << " rank_v1=" << r.rank_v1
       << " rank_augmented=" << r.rank_augmented << " status=" << status(r.included) << '\n';
  }
  for (const auto& r : rep.effective_ranks) {
    os << "check=effective_rank receiver=" << r.receiver << " rank=" << r.rank << " required=" << r.required
       << " condition=" << io::format_double(r.condition) << " status=" << status(r.passed) << '\n';
  }
  for (const auto& r : rep.beam_ranks) {
    os << "check=beam_rank user=" << r.user << " rank=" << r.rank << " columns=" << r.columns
       << " status=" << status(r.passed) << '\n';
  }
  const auto& s = rep.stream_counts;
  os << "check=stream_counts expected_d3=" << s.expected_d3 << " expected_d1=" << s.expected_d1
     << " d3_ok=" << (s.d3_ok ? 1 : 0) << " d1_ok=" << (s.d1_ok ? 1 : 0) << " dimension_ok=" << (s.dimension_ok ? 1 : 0)
     << " status=" << status(s.passed()) << '\n';
  os << "overall=" << status(rep.overall()) << '\n';
  return os.str();
}

}  // namespace align_bench
