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

// Builds a 4-user design with n* = 1 (27 channel uses), verifies it, and
// compares the zero-forcing rate slope against the closed-form gain.

#include <cstdio>

#include "align_bench/align_bench.hpp"

int main() {
  using namespace align_bench;
  constexpr std::size_t users = 4;
  constexpr std::uint64_t n_star = 1;

  const auto realizations = proposed_channel_uses(users, n_star).convert_to<std::size_t>();
  const auto channels = generate_channels(users, realizations, /*seed=*/7);
  const auto design = build_design(channels, n_star);

  std::printf("K=%zu n*=%llu M=%zu streams:", users, static_cast<unsigned long long>(n_star), realizations);
  for (auto d : design.streams) std::printf(" %zu", d);
  std::printf("\n\n%s\n", report_to_text(verify_design(channels, design)).c_str());

  const auto link = simulate_link(channels, design, 60.0, 80.0, 5);
  std::printf("normalized slope %.4f vs gain %s = %.4f\n", link.normalized_slope, link.target_gain.str().c_str(),
              link.target());
  return 0;
}
