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
// The decision vector stacks isometric real coordinates of every Hermitian
// covariance followed by the per-user slack scalars. Hermitian-ness is
// carried by the parametrization itself; positive semidefiniteness rides on
// the 2Nx2N real embedding, which represents each complex PSD constraint as
// one real PSD block with doubled eigenvalues.

#include "isacbeam/program.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>

#include "isacbeam/embedding.hpp"
#include "isacbeam/model.hpp"

namespace isacbeam {

namespace {

// Column t is svec(embed(B_t)) for the Hermitian basis matrix B_t with
// hvec(B_t) = e_t. Shared by every PSD lowering of the same order.
RMatrix embedding_columns(int n) {
    const int cols = hvec_dim(n);
    RMatrix E(svec_dim(2 * n), cols);
    RVector unit = RVector::Zero(cols);
    for (int t = 0; t < cols; ++t) {
        unit[t] = 1.0;
        E.col(t) = svec(embed_hermitian_psd(hunvec(unit, n)));
        unit[t] = 0.0;
    }
    return E;
}

} // namespace

VariableLayout make_layout(int num_antennas, int num_users) {
    VariableLayout layout;
    layout.num_antennas = num_antennas;
    layout.num_users = num_users;
    layout.w_block = hvec_dim(num_antennas);
    layout.total = num_users * layout.w_block + 2 * num_users;
    return layout;
}

ConicProgram build_program(const ScenarioConfig& scenario) {
    validate_scenario(scenario);
    ConicProgram program;
    program.constraints = assemble_constraints(scenario);
    program.probe_steering = steering_vector(scenario.geometry, scenario.target.angle_rad);
    return program;
}

conic::StandardForm lower_to_standard_form(const ConicProgram& program) {
    const ConicConstraintSet& set = program.constraints;
    const int n = set.num_antennas;
    const int num_users = set.num_users;
    if (program.probe_steering.size() != n)
        throw std::invalid_argument("lower_to_standard_form: probe steering length mismatch");
    const VariableLayout layout = make_layout(n, num_users);
    const RMatrix E = embedding_columns(n);
    const int embed_rows = static_cast<int>(E.rows());

    int slack_rows = 0;
    for (const ConstraintRecord& record : set.records) {
        switch (record.family) {
        case ConstraintFamily::LinearScalar:
        case ConstraintFamily::NonNeg:
        case ConstraintFamily::Power:
            slack_rows += 1;
            break;
        case ConstraintFamily::PsdShift:
        case ConstraintFamily::PsdVar:
            slack_rows += embed_rows;
            break;
        case ConstraintFamily::SocOrLmi:
            slack_rows += 1 + 2 * n + 2 * n * n;
            break;
        }
    }

    conic::StandardForm form;
    form.c = RVector::Zero(layout.total);
    const CMatrix probe =
        program.probe_steering.conjugate() * program.probe_steering.transpose();
    const RVector probe_coords = hvec(probe);
    for (int k = 0; k < num_users; ++k)
        form.c.segment(layout.w_offset(k), layout.w_block) = -probe_coords;

    form.G = RMatrix::Zero(slack_rows, layout.total);
    form.h = RVector::Zero(slack_rows);
    form.cones.reserve(set.records.size());

    const RVector trace_coords = hvec(CMatrix::Identity(n, n));
    int row = 0;
    for (const ConstraintRecord& record : set.records) {
        switch (record.family) {
        case ConstraintFamily::LinearScalar: {
            const auto& c = std::get<LinearScalarConstraint>(record.data);
            for (int l = 0; l < num_users; ++l)
                form.G.block(row, layout.w_offset(l), 1, layout.w_block) =
                    -hvec(c.w_coeffs[l]).transpose();
            form.G(row, layout.mu_offset(c.user)) = -c.mu_coeff;
            form.G(row, layout.nu_offset(c.user)) = -c.nu_coeff;
            form.h[row] = c.constant;
            form.cones.push_back({conic::ConeKind::NonNeg, 1});
            row += 1;
            break;
        }
        case ConstraintFamily::NonNeg: {
            const auto& c = std::get<NonNegConstraint>(record.data);
            form.G(row, layout.nu_offset(c.user)) = -1.0;
            form.cones.push_back({conic::ConeKind::NonNeg, 1});
            row += 1;
            break;
        }
        case ConstraintFamily::PsdShift: {
            const auto& c = std::get<PsdShiftConstraint>(record.data);
            for (int l = 0; l < num_users; ++l)
                if (c.w_coeffs[l] != 0.0)
                    form.G.block(row, layout.w_offset(l), embed_rows, layout.w_block) =
                        -c.w_coeffs[l] * E;
            form.G.block(row, layout.nu_offset(c.user), embed_rows, 1) =
                -svec(RMatrix::Identity(2 * n, 2 * n));
            form.cones.push_back({conic::ConeKind::Psd, 2 * n});
            row += embed_rows;
            break;
        }
        case ConstraintFamily::SocOrLmi: {
            const auto& c = std::get<SocConstraint>(record.data);
            const int soc_dim = 1 + 2 * n + 2 * n * n;
            form.G(row, layout.mu_offset(c.user)) = -1.0;
            const double sig = c.error_std;
            RVector unit = RVector::Zero(layout.w_block);
            for (int t = 0; t < layout.w_block; ++t) {
                unit[t] = 1.0;
                const CMatrix B = hunvec(unit, n);
                unit[t] = 0.0;
                const CVector b_part = std::sqrt(2.0) * sig * (B * c.h.conjugate());
                const Eigen::Map<const CVector> a_part(B.data(), n * n);
                for (int l = 0; l < num_users; ++l) {
                    if (c.w_coeffs[l] == 0.0)
                        continue;
                    const int col = layout.w_offset(l) + t;
                    const double coef = c.w_coeffs[l];
                    form.G.block(row + 1, col, n, 1) -= coef * b_part.real();
                    form.G.block(row + 1 + n, col, n, 1) -= coef * b_part.imag();
                    form.G.block(row + 1 + 2 * n, col, n * n, 1) -=
                        coef * sig * sig * a_part.real();
                    form.G.block(row + 1 + 2 * n + n * n, col, n * n, 1) -=
                        coef * sig * sig * a_part.imag();
                }
            }
            form.cones.push_back({conic::ConeKind::Soc, soc_dim});
            row += soc_dim;
            break;
        }
        case ConstraintFamily::PsdVar: {
            const auto& c = std::get<PsdVarConstraint>(record.data);
            form.G.block(row, layout.w_offset(c.user), embed_rows, layout.w_block) = -E;
            form.cones.push_back({conic::ConeKind::Psd, 2 * n});
            row += embed_rows;
            break;
        }
        case ConstraintFamily::Power: {
            const auto& c = std::get<PowerConstraint>(record.data);
            for (int k = 0; k < num_users; ++k)
                form.G.block(row, layout.w_offset(k), 1, layout.w_block) =
                    trace_coords.transpose();
            form.h[row] = c.budget;
            form.cones.push_back({conic::ConeKind::NonNeg, 1});
            row += 1;
            break;
        }
        }
    }
    return form;
}

CVector extract_beamformer(const CMatrix& W) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(W);
    const int n = static_cast<int>(W.rows());
    const double lambda1 = std::max(0.0, eig.eigenvalues()[n - 1]);
    CVector w = std::sqrt(lambda1) * eig.eigenvectors().col(n - 1);
    int peak = 0;
    w.cwiseAbs().maxCoeff(&peak);
    const double mag = std::abs(w[peak]);
    if (mag > 0.0)
        w *= std::conj(w[peak]) / mag;
    return w;
}

RankDiagnostic rank_diagnostic(const CMatrix& W, double threshold) {
    RankDiagnostic diag;
    if (W.rows() < 2)
        return diag;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(W, Eigen::EigenvaluesOnly);
    const int n = static_cast<int>(W.rows());
    const double lambda1 = std::max(0.0, eig.eigenvalues()[n - 1]);
    const double lambda2 = std::max(0.0, eig.eigenvalues()[n - 2]);
    diag.ratio = lambda1 == 0.0 ? 0.0 : lambda2 / lambda1;
    diag.high_rank = diag.ratio > threshold;
    return diag;
}

DesignResult solve_design(const ScenarioConfig& scenario, const DesignSettings& settings) {
    const ConicProgram program = build_program(scenario);
    const conic::StandardForm form = lower_to_standard_form(program);

    conic::SolverSettings solver_settings;
    solver_settings.feastol = settings.tolerance;
    solver_settings.abstol = settings.tolerance;
    solver_settings.reltol = settings.tolerance;
    solver_settings.max_iters = settings.max_iters;
    solver_settings.verbose = settings.verbose;
    const conic::SolverResult solved = conic::solve(form, solver_settings);

    DesignResult out;
    out.iterations = solved.iterations;
    out.primal_residual = solved.primal_residual;
    out.dual_residual = solved.dual_residual;
    out.duality_gap = solved.duality_gap;
    out.message = solved.message;
    switch (solved.status) {
    case conic::SolverStatus::Optimal:
        out.status = SolveStatus::Optimal;
        break;
    case conic::SolverStatus::PrimalInfeasible:
        out.status = SolveStatus::Infeasible;
        out.message = "outage constraints unsatisfiable under the power budget";
        return out;
    case conic::SolverStatus::DualInfeasible:
    case conic::SolverStatus::NumericalFailure:
        out.status = SolveStatus::NumericalFailure;
        return out;
    }

    const VariableLayout layout = make_layout(scenario.num_antennas(), scenario.num_users());
    out.covariances.reserve(scenario.num_users());
    out.beamformers.reserve(scenario.num_users());
    for (int k = 0; k < scenario.num_users(); ++k) {
        CMatrix W = hunvec(solved.x.segment(layout.w_offset(k), layout.w_block),
                           scenario.num_antennas());
        out.covariances.push_back(std::move(W));
        out.beamformers.push_back(extract_beamformer(out.covariances.back()));
        out.mu.push_back(solved.x[layout.mu_offset(k)]);
        out.nu.push_back(solved.x[layout.nu_offset(k)]);
        out.rank.push_back(
            rank_diagnostic(out.covariances.back(), settings.rank_ratio_threshold));
    }
    const CVector probe_conj = program.probe_steering.conjugate();
    Complex probe_power = 0.0;
    for (const CMatrix& W : out.covariances)
        probe_power += probe_conj.dot(W * probe_conj);
    out.objective = probe_power.real();
    return out;
}

} // namespace isacbeam
