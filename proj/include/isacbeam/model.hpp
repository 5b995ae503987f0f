// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - robust dual-function radar-communication transmit beamforming
// Copyright (C) 2026 the isacbeam authors
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

#ifndef ISACBEAM_MODEL_HPP
#define ISACBEAM_MODEL_HPP

#include <cstdint>
#include <random>

#include "isacbeam/types.hpp"

namespace isacbeam {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and a stream index
// (splitmix64 over the combined word). Used wherever work is partitioned
// across workers, so results do not depend on the partitioning.
std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t stream);

// ULA array response a(theta); element n equals
// exp(j * 2*pi * (d/lambda) * n * sin(theta)), element 0 equals 1.
CVector steering_vector(const UlaGeometry& geometry, double angle_rad);

// K x N matrix of iid CN(0,1) entries (Re and Im each N(0, 1/2)).
// Row k is the nominal channel of user k.
CMatrix sample_nominal_channels(int num_users, int num_antennas, Rng& rng);

// Length-N draw of iid CN(0, error_std^2) entries.
CVector sample_channel_error(int num_antennas, double error_std, Rng& rng);

} // namespace isacbeam

#endif
