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

#include "isacbeam/bernstein.hpp"

#include <cmath>
#include <stdexcept>

namespace isacbeam {

namespace {

// Wbar is affine in the W_l with these coefficients: 1/gamma on W_k, -1 on
// every other covariance.
std::vector<double> combination_coefficients(int num_users, double sinr_target, int k) {
    std::vector<double> coeffs(num_users, -1.0);
    coeffs[k] = 1.0 / sinr_target;
    return coeffs;
}

CMatrix combine(const std::vector<double>& coeffs, const std::vector<CMatrix>& W) {
    CMatrix out = coeffs[0] * W[0];
    for (std::size_t l = 1; l < W.size(); ++l)
        out += coeffs[l] * W[l];
    return out;
}

} // namespace

CMatrix interference_combination(const std::vector<CMatrix>& W, double sinr_target, int k) {
    if (W.empty() || k < 0 || k >= static_cast<int>(W.size()))
        throw std::invalid_argument("interference_combination: user index out of range");
    if (sinr_target <= 0.0)
        throw std::invalid_argument("interference_combination: sinr_target must be positive");
    const Eigen::Index n = W[0].rows();
    for (const CMatrix& Wl : W)
        if (Wl.rows() != n || Wl.cols() != n)
            throw std::invalid_argument("interference_combination: covariance shapes disagree");
    return combine(combination_coefficients(static_cast<int>(W.size()), sinr_target, k), W);
}

BernsteinTerms bernstein_terms(const CMatrix& Wbar, const CVector& h, double error_std,
                               double noise_variance, double outage_tolerance) {
    if (Wbar.rows() != Wbar.cols() || Wbar.rows() != h.size())
        throw std::invalid_argument("bernstein_terms: dimension mismatch");
    if (outage_tolerance <= 0.0 || outage_tolerance >= 1.0)
        throw std::invalid_argument("bernstein_terms: outage_tolerance must lie in (0, 1)");
    BernsteinTerms terms;
    terms.A = (error_std * error_std) * Wbar;
    terms.b = error_std * (Wbar * h.conjugate());
    const Complex quad = h.conjugate().dot(Wbar * h.conjugate());
    const double scale = std::max(1.0, std::abs(quad));
    if (std::abs(quad.imag()) > 1e-9 * scale)
        throw std::invalid_argument("bernstein_terms: quadratic form has imaginary residue");
    terms.sigma_sq = noise_variance - quad.real();
    terms.epsilon = -std::log(outage_tolerance);
    return terms;
}

CVector soc_vector(const BernsteinTerms& terms) {
    const int n = static_cast<int>(terms.b.size());
    CVector v(n + n * n);
    v.head(n) = std::sqrt(2.0) * terms.b;
    v.tail(n * n) = Eigen::Map<const CVector>(terms.A.data(), n * n);
    return v;
}

CMatrix lmi_arrow_matrix(double mu, const BernsteinTerms& terms) {
    const CVector border = soc_vector(terms);
    const int m = static_cast<int>(border.size());
    CMatrix arrow = CMatrix::Zero(1 + m, 1 + m);
    arrow(0, 0) = mu;
    arrow.col(0).tail(m) = border;
    arrow.row(0).tail(m) = border.adjoint();
    arrow.bottomRightCorner(m, m).diagonal().setConstant(mu);
    return arrow;
}

ConicConstraintSet assemble_constraints(const ScenarioConfig& scenario) {
    validate_scenario(scenario);
    const int n = scenario.num_antennas();
    const int num_users = scenario.num_users();
    ConicConstraintSet set;
    set.num_antennas = n;
    set.num_users = num_users;
    set.records.reserve(5 * num_users + 1);
    for (int k = 0; k < num_users; ++k) {
        const UserChannel& user = scenario.users[k];
        const std::vector<double> coeffs =
            combination_coefficients(num_users, user.sinr_target, k);
        const double eps = -std::log(user.outage_tolerance);
        const double sig = user.error_std;

        // (i) Tr(A) - sqrt(2 eps) mu - eps nu - sigma_c^2 + h^T Wbar conj(h) >= 0,
        // affine in the W_l through C_l = coeffs[l] (conj(h) h^T + sigma^2 I).
        // Tr(C_l^H W_l) is real for Hermitian W_l, so one scalar row suffices.
        LinearScalarConstraint lin;
        lin.user = k;
        const CMatrix base =
            user.nominal_channel.conjugate() * user.nominal_channel.transpose() +
            (sig * sig) * CMatrix::Identity(n, n);
        lin.w_coeffs.reserve(num_users);
        for (int l = 0; l < num_users; ++l)
            lin.w_coeffs.push_back(coeffs[l] * base);
        lin.mu_coeff = -std::sqrt(2.0 * eps);
        lin.nu_coeff = -eps;
        lin.constant = -scenario.noise_variance;
        set.records.push_back({ConstraintFamily::LinearScalar, std::move(lin)});

        set.records.push_back({ConstraintFamily::NonNeg, NonNegConstraint{k}});

        PsdShiftConstraint shift;
        shift.user = k;
        shift.w_coeffs.resize(num_users);
        for (int l = 0; l < num_users; ++l)
            shift.w_coeffs[l] = (sig * sig) * coeffs[l];
        set.records.push_back({ConstraintFamily::PsdShift, std::move(shift)});

        SocConstraint soc;
        soc.user = k;
        soc.w_coeffs.assign(coeffs.begin(), coeffs.end());
        soc.h = user.nominal_channel;
        soc.error_std = sig;
        set.records.push_back({ConstraintFamily::SocOrLmi, std::move(soc)});

        set.records.push_back({ConstraintFamily::PsdVar, PsdVarConstraint{k}});
    }
    set.records.push_back({ConstraintFamily::Power, PowerConstraint{scenario.power_budget}});
    return set;
}

double linear_scalar_value(const LinearScalarConstraint& c, const std::vector<CMatrix>& W,
                           double mu, double nu) {
    double value = c.constant + c.mu_coeff * mu + c.nu_coeff * nu;
    for (std::size_t l = 0; l < W.size(); ++l)
        value += (c.w_coeffs[l].adjoint() * W[l]).trace().real();
    return value;
}

CMatrix psd_shift_value(const PsdShiftConstraint& c, const std::vector<CMatrix>& W, double nu) {
    const int n = static_cast<int>(W[0].rows());
    CMatrix out = nu * CMatrix::Identity(n, n);
    for (std::size_t l = 0; l < W.size(); ++l)
        out += c.w_coeffs[l] * W[l];
    return out;
}

CVector soc_value(const SocConstraint& c, const std::vector<CMatrix>& W) {
    CMatrix Wbar = combine(c.w_coeffs, W);
    BernsteinTerms terms;
    terms.A = (c.error_std * c.error_std) * Wbar;
    terms.b = c.error_std * (Wbar * c.h.conjugate());
    return soc_vector(terms);
}

} // namespace isacbeam
