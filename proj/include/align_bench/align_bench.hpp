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

#pragma once

#include "align_bench/errors.hpp"
#include "align_bench/numerics.hpp"
#include "align_bench/channel.hpp"
#include "align_bench/dof.hpp"
#include "align_bench/beamformer.hpp"
#include "align_bench/verifier.hpp"
#include "align_bench/link_sim.hpp"
