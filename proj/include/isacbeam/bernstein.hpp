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
// Deterministic convex restriction of the per-user SINR outage constraints.
// For user k with per-user combination Wbar_k = (1/gamma_k) W_k - sum_{l!=k} W_l
// the Gaussian concentration argument yields the terms
//   A_k = sigma_dh_k^2 * Wbar_k
//   b_k = sigma_dh_k   * Wbar_k * conj(h_k)
//   sigma_k^2 = sigma_c^2 - h_k^T Wbar_k conj(h_k)
//   eps_k = -ln(p_k)
// and the cone memberships assembled by assemble_constraints().

#ifndef ISACBEAM_BERNSTEIN_HPP
#define ISACBEAM_BERNSTEIN_HPP

#include <variant>
#include <vector>

#include "isacbeam/types.hpp"

namespace isacbeam {

struct BernsteinTerms {
    CMatrix A;
    CVector b;
    double sigma_sq = 0.0;  // real part; imaginary residue checked against 1e-9
    double epsilon = 0.0;   // -ln(p), natural log
};

enum class ConstraintFamily {
    LinearScalar,  // scalar affine inequality tying W_l, mu_k, nu_k
    NonNeg,        // nu_k >= 0
    PsdShift,      // nu_k I + A_k  PSD
    SocOrLmi,      // mu_k >= || [sqrt(2) b_k ; vec A_k] ||
    PsdVar,        // W_k PSD
    Power          // sum_l Tr(W_l) <= budget
};

// sum_l <w_coeffs[l], W_l> + mu_coeff*mu_k + nu_coeff*nu_k + constant >= 0
struct LinearScalarConstraint {
    int user = 0;
    std::vector<CMatrix> w_coeffs;  // Hermitian coefficient per W_l
    double mu_coeff = 0.0;
    double nu_coeff = 0.0;
    double constant = 0.0;
};

struct NonNegConstraint {
    int user = 0;
};

// nu_k * I + sum_l w_coeffs[l] * W_l  PSD
struct PsdShiftConstraint {
    int user = 0;
    std::vector<double> w_coeffs;
};

// mu_k bounds the norm of [sqrt(2)*sigma*Wbar_k*conj(h); sigma^2*vec(Wbar_k)]
// with Wbar_k = sum_l w_coeffs[l] * W_l.
struct SocConstraint {
    int user = 0;
    std::vector<double> w_coeffs;
    CVector h;
    double error_std = 0.0;
};

struct PsdVarConstraint {
    int user = 0;
};

struct PowerConstraint {
    double budget = 1.0;
};

struct ConstraintRecord {
    ConstraintFamily family;
    std::variant<LinearScalarConstraint, NonNegConstraint, PsdShiftConstraint,
                 SocConstraint, PsdVarConstraint, PowerConstraint>
        data;
};

// Exactly 5K + 1 records for a K-user scenario, ordered per user
// (LinearScalar, NonNeg, PsdShift, SocOrLmi, PsdVar) with the power
// constraint last.
struct ConicConstraintSet {
    int num_antennas = 0;
    int num_users = 0;
    std::vector<ConstraintRecord> records;
};

// (1/gamma) W_k - sum_{l != k} W_l. All inputs must be N x N.
CMatrix interference_combination(const std::vector<CMatrix>& W, double sinr_target, int k);

// Throws std::invalid_argument when outage_tolerance is outside (0,1) or
// when sigma_k^2 has imaginary residue above 1e-9.
BernsteinTerms bernstein_terms(const CMatrix& Wbar, const CVector& h, double error_std,
                               double noise_variance, double outage_tolerance);

// [sqrt(2) b ; vec A], complex, length N + N^2. mu >= ||soc_vector|| is the
// second-order-cone form of the arrow LMI below.
CVector soc_vector(const BernsteinTerms& terms);

// Hermitian arrow matrix of size 1 + N + N^2: top-left mu, border
// [sqrt(2) b ; vec A], remaining diagonal mu*I. PSD iff mu >= ||soc_vector||.
CMatrix lmi_arrow_matrix(double mu, const BernsteinTerms& terms);

// Builds the full record list for a validated scenario.
ConicConstraintSet assemble_constraints(const ScenarioConfig& scenario);

// Value-level evaluation, used by diagnostics and tests.
double linear_scalar_value(const LinearScalarConstraint& c, const std::vector<CMatrix>& W,
                           double mu, double nu);
CMatrix psd_shift_value(const PsdShiftConstraint& c, const std::vector<CMatrix>& W, double nu);
CVector soc_value(const SocConstraint& c, const std::vector<CMatrix>& W);

} // namespace isacbeam

#endif
