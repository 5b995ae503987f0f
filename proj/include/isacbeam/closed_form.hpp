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
//
// Single-user analytic design at unit power budget. The optimal unit-norm
// transmit vector either equals the pure probing beamformer conj(a0)/sqrt(N)
// (when that already satisfies the robust rate constraint) or lives in the
// two-dimensional span of the channel and probing directions with a mixing
// weight rho found as the smallest root of a scalar margin equation.

#ifndef ISACBEAM_CLOSED_FORM_HPP
#define ISACBEAM_CLOSED_FORM_HPP

#include "isacbeam/types.hpp"

namespace isacbeam {

struct SuInputs {
    CVector h;                  // nominal channel, nonzero
    CVector a0;                 // probing steering vector, ||a0||^2 = N
    double error_std = 0.0;     // sigma of the CSI error
    double noise_variance = 1.0;
    double sinr_target = 1.0;   // gamma
    double outage_tolerance = 0.05;  // p, epsilon = -ln(p)
};

enum class SuBranch { Radar, Subspace };
enum class SuStatus { Ok, Saturated, NoRoot };

struct SuSolution {
    SuStatus status = SuStatus::Ok;
    SuBranch branch = SuBranch::Radar;
    CVector w;                // unit norm
    double lambda = 0.0;      // radar-branch feasibility threshold
    double alignment = 0.0;   // |h^T conj(a0)|^2, compared against lambda
    double rho = 0.0;         // channel-direction weight, Subspace branch only
    CVector h_par;            // conj(h)/||h||, Subspace branch only
    CVector h_perp;           // unit vector orthogonal to h_par, Subspace only
    bool degenerate = false;  // conj(a0) collinear with h_par within 1e-9
};

// N * (gamma sigma_c^2 - sigma^2 + sqrt(2 eps) sigma sqrt(sigma^2 + 2|h^T conj(a0)|^2 / N)).
// The pure probing beamformer is robust-feasible iff this is <= |h^T conj(a0)|^2.
double radar_branch_threshold(const SuInputs& in);

struct SuDirections {
    CVector h_par;
    CVector h_perp;
    bool degenerate = false;
};

// h_par = conj(h)/||h||; h_perp = Gram-Schmidt of conj(a0) against h_par,
// unit norm. Degenerate when conj(a0) has no component off h_par; h_perp is
// then an arbitrary unit vector orthogonal to h_par. Throws on zero channel.
SuDirections decompose_parallel_perp(const CVector& h, const CVector& a0);

// Robust rate margin at blend weight x = sqrt(rho):
//   g(x) = x^2 ||h||^2 - (gamma sigma_c^2 - sigma^2)
//          - sigma sqrt(2 eps) sqrt(sigma^2 + 2 x^2 ||h||^2).
// Nonnegative iff W = w w^H meets the concentration restriction at unit
// power; shares its error terms with radar_branch_threshold.
double rate_margin(const SuInputs& in, double x);

struct RhoResult {
    SuStatus status = SuStatus::Ok;
    double rho = 0.0;
};

// Smallest root of rate_margin on [0,1]: 1024-interval sign scan, then
// bisection until the bracket is narrower than 1e-12. rate_margin(0) > 0
// reports Saturated with rho = 0 (constraint slack with no power on the
// channel direction); no sign change reports NoRoot (target unreachable at
// unit power).
RhoResult find_rho(const SuInputs& in);

// Throws std::invalid_argument on dimension mismatch, zero channel,
// nonpositive sinr_target or noise_variance, negative error_std, or
// outage_tolerance outside (0,1). NoRoot is reported in-band via status.
SuSolution solve_single_user(const SuInputs& in);

} // namespace isacbeam

#endif
