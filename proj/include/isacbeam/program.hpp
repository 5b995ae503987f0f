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
// Lowers the assembled constraint set to solver standard form over the real
// variable vector [hvec(W_1) .. hvec(W_K), mu_1 .. mu_K, nu_1 .. nu_K],
// maximizing the probing power a(theta0)^H (sum_k W_k) a(theta0), then lifts
// the solver output back to covariance matrices and rank-one beamformers.

#ifndef ISACBEAM_PROGRAM_HPP
#define ISACBEAM_PROGRAM_HPP

#include <string>
#include <vector>

#include "isacbeam/bernstein.hpp"
#include "isacbeam/conic_solver.hpp"
#include "isacbeam/types.hpp"

namespace isacbeam {

enum class SolveStatus { Optimal, Infeasible, NumericalFailure };

struct DesignSettings {
    double tolerance = 1e-8;           // solver feastol/abstol/reltol
    double rank_ratio_threshold = 1e-5;  // lambda2/lambda1 above this flags HIGH_RANK
    int max_iters = 100;
    bool verbose = false;              // interior-point trace on stderr
};

struct RankDiagnostic {
    double ratio = 0.0;  // lambda2 / lambda1, clamped to 0 when lambda1 == 0
    bool high_rank = false;
};

struct DesignResult {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<CMatrix> covariances;   // W_k, Hermitian PSD
    std::vector<CVector> beamformers;   // w_k = sqrt(lambda1) u1, phase-fixed
    std::vector<double> mu;
    std::vector<double> nu;
    std::vector<RankDiagnostic> rank;
    double objective = 0.0;             // probing power at theta0
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double duality_gap = 0.0;
    int iterations = 0;
    std::string message;
};

// Layout bookkeeping shared by the lowering and the lifting.
struct VariableLayout {
    int num_antennas = 0;
    int num_users = 0;
    int w_block = 0;   // hvec length per covariance, num_antennas^2
    int total = 0;     // K*w_block + 2K
    int w_offset(int k) const { return k * w_block; }
    int mu_offset(int k) const { return num_users * w_block + k; }
    int nu_offset(int k) const { return num_users * w_block + num_users + k; }
};

VariableLayout make_layout(int num_antennas, int num_users);

// Constraint records plus the probing direction the objective maximizes.
struct ConicProgram {
    ConicConstraintSet constraints;
    CVector probe_steering;  // a(theta0)
};

ConicProgram build_program(const ScenarioConfig& scenario);

conic::StandardForm lower_to_standard_form(const ConicProgram& program);

// Principal-eigenpair extraction. The dominant eigenvector is scaled by
// sqrt(lambda1) and rotated so its largest-magnitude entry is real and
// nonnegative. lambda1 below is clamped at 0 before the square root.
CVector extract_beamformer(const CMatrix& W);

RankDiagnostic rank_diagnostic(const CMatrix& W, double threshold);

// End-to-end design for a validated scenario.
DesignResult solve_design(const ScenarioConfig& scenario, const DesignSettings& settings = {});

} // namespace isacbeam

#endif
