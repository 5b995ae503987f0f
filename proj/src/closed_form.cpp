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

#include "isacbeam/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace isacbeam {

namespace {

constexpr int kScanIntervals = 1024;
constexpr double kBisectWidth = 1e-12;

void validate_inputs(const SuInputs& in) {
    if (in.h.size() < 1 || in.h.size() != in.a0.size())
        throw std::invalid_argument("h and a0 must be nonempty and equally sized");
    if (in.h.norm() == 0.0)
        throw std::invalid_argument("h: channel must be nonzero");
    if (!(in.noise_variance > 0.0))
        throw std::invalid_argument("noise_variance: must be positive");
    if (!(in.sinr_target > 0.0))
        throw std::invalid_argument("sinr_target: must be positive");
    if (in.error_std < 0.0)
        throw std::invalid_argument("error_std: must be nonnegative");
    if (!(in.outage_tolerance > 0.0) || !(in.outage_tolerance < 1.0))
        throw std::invalid_argument("outage_tolerance: must lie in (0, 1)");
}

double epsilon_of(const SuInputs& in) {
    return -std::log(in.outage_tolerance);
}

// h^T conj(a0), the alignment between channel and probing direction.
Complex channel_probe_product(const CVector& h, const CVector& a0) {
    return h.conjugate().dot(a0.conjugate());
}

Complex unit_phase(Complex value) {
    const double mag = std::abs(value);
    return mag > 0.0 ? value / mag : Complex(1.0, 0.0);
}

} // namespace

double radar_branch_threshold(const SuInputs& in) {
    validate_inputs(in);
    const double n = static_cast<double>(in.h.size());
    const double eps = epsilon_of(in);
    const double sig = in.error_std;
    const double align = std::norm(channel_probe_product(in.h, in.a0));
    return n * (in.sinr_target * in.noise_variance - sig * sig +
                std::sqrt(2.0 * eps) * sig * std::sqrt(sig * sig + 2.0 * align / n));
}

SuDirections decompose_parallel_perp(const CVector& h, const CVector& a0) {
    if (h.size() < 1 || h.size() != a0.size())
        throw std::invalid_argument("h and a0 must be nonempty and equally sized");
    const double h_norm = h.norm();
    if (h_norm == 0.0)
        throw std::invalid_argument("h: channel must be nonzero");
    SuDirections dirs;
    dirs.h_par = h.conjugate() / h_norm;
    const CVector a0c = a0.conjugate();
    CVector residual = a0c - dirs.h_par.dot(a0c) * dirs.h_par;
    const double res_norm = residual.norm();
    if (res_norm > 1e-9 * a0.norm()) {
        dirs.h_perp = residual / res_norm;
        return dirs;
    }
    // Probing direction carries no component off h_par; any unit vector in
    // the orthogonal complement serves (single-direction beamformers only).
    dirs.degenerate = true;
    const int n = static_cast<int>(h.size());
    if (n == 1) {
        dirs.h_perp = CVector::Zero(1);
        return dirs;
    }
    int weakest = 0;
    dirs.h_par.cwiseAbs().minCoeff(&weakest);
    CVector basis = CVector::Zero(n);
    basis[weakest] = 1.0;
    CVector ortho = basis - dirs.h_par.dot(basis) * dirs.h_par;
    dirs.h_perp = ortho / ortho.norm();
    return dirs;
}

double rate_margin(const SuInputs& in, double x) {
    const double eps = epsilon_of(in);
    const double sig = in.error_std;
    const double signal = x * x * in.h.squaredNorm();
    // Concentration margin of the rank-one restriction at |h^T w|^2 = signal.
    // The factor 2 under the root matches the radar-branch threshold term
    // 2|h^T conj(a0)|^2 / N; both come from the same bound.
    return signal - (in.sinr_target * in.noise_variance - sig * sig) -
           sig * std::sqrt(2.0 * eps) * std::sqrt(sig * sig + 2.0 * signal);
}

RhoResult find_rho(const SuInputs& in) {
    validate_inputs(in);
    RhoResult out;
    if (rate_margin(in, 0.0) > 0.0) {
        out.status = SuStatus::Saturated;
        out.rho = 0.0;
        return out;
    }
    // g(0) <= 0, so the smallest root sits at the first sign change of the
    // dense scan; the bracket keeps g(lo) <= 0 <= g(hi).
    double lo = 0.0;
    double g_lo = rate_margin(in, lo);
    bool bracketed = g_lo == 0.0;
    double hi = 0.0;
    for (int i = 1; !bracketed && i <= kScanIntervals; ++i) {
        const double x = static_cast<double>(i) / kScanIntervals;
        const double g_x = rate_margin(in, x);
        if (g_x >= 0.0) {
            hi = x;
            bracketed = true;
            break;
        }
        lo = x;
        g_lo = g_x;
    }
    if (!bracketed) {
        out.status = SuStatus::NoRoot;
        return out;
    }
    if (g_lo == 0.0) {
        out.rho = lo * lo;
        return out;
    }
    while (hi - lo > kBisectWidth) {
        const double mid = 0.5 * (lo + hi);
        if (rate_margin(in, mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double root = 0.5 * (lo + hi);
    out.rho = root * root;
    return out;
}

SuSolution solve_single_user(const SuInputs& in) {
    validate_inputs(in);
    SuSolution sol;
    const double n = static_cast<double>(in.h.size());
    sol.alignment = std::norm(channel_probe_product(in.h, in.a0));
    sol.lambda = radar_branch_threshold(in);
    if (sol.lambda <= sol.alignment) {
        sol.branch = SuBranch::Radar;
        sol.w = in.a0.conjugate() / std::sqrt(n);
        return sol;
    }
    sol.branch = SuBranch::Subspace;
    const RhoResult rho = find_rho(in);
    sol.status = rho.status;
    if (rho.status == SuStatus::NoRoot) {
        sol.w = CVector::Zero(in.h.size());
        return sol;
    }
    SuDirections dirs = decompose_parallel_perp(in.h, in.a0);
    sol.h_par = dirs.h_par;
    sol.h_perp = dirs.h_perp;
    sol.degenerate = dirs.degenerate;
    const CVector a0c = in.a0.conjugate();
    const Complex phase_par = unit_phase(dirs.h_par.dot(a0c));
    const Complex phase_perp = unit_phase(dirs.h_perp.dot(a0c));
    if (dirs.degenerate) {
        sol.rho = 1.0;
        sol.w = phase_par * dirs.h_par;
        return sol;
    }
    sol.rho = rho.rho;
    sol.w = std::sqrt(sol.rho) * phase_par * dirs.h_par +
            std::sqrt(1.0 - sol.rho) * phase_perp * dirs.h_perp;
    return sol;
}

} // namespace isacbeam
