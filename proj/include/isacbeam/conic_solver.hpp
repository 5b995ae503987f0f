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
// Dense primal-dual interior-point solver for
//   minimize    c'x
//   subject to  Gx + s = h,  s in Kone
// where Kone is a product of nonnegative, second-order, and (svec'd real
// symmetric) positive-semidefinite cones. Homogeneous self-dual embedding
// with Nesterov-Todd scaling and a Mehrotra predictor-corrector, so primal
// or dual infeasibility is detected by certificate rather than by timeout.

#ifndef ISACBEAM_CONIC_SOLVER_HPP
#define ISACBEAM_CONIC_SOLVER_HPP

#include <string>
#include <vector>

#include "isacbeam/types.hpp"

namespace isacbeam::conic {

enum class ConeKind { NonNeg, Soc, Psd };

// dim: number of scalar slack entries for NonNeg, cone dimension for Soc,
// matrix order n for Psd (occupying n(n+1)/2 svec entries).
struct ConeBlock {
    ConeKind kind;
    int dim = 0;
};

struct StandardForm {
    RVector c;
    RMatrix G;
    RVector h;
    std::vector<ConeBlock> cones;
};

struct SolverSettings {
    double feastol = 1e-8;
    double abstol = 1e-8;
    double reltol = 1e-8;
    int max_iters = 100;
    double step_fraction = 0.99;
    int refinement_steps = 1;
    bool verbose = false;  // per-iteration trace on stderr
};

enum class SolverStatus { Optimal, PrimalInfeasible, DualInfeasible, NumericalFailure };

struct SolverResult {
    SolverStatus status = SolverStatus::NumericalFailure;
    RVector x;
    RVector s;
    RVector z;
    double primal_objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double duality_gap = 0.0;
    int iterations = 0;
    std::string message;
};

// Total slack length of the cone product (svec size for Psd blocks).
int cone_length(const std::vector<ConeBlock>& cones);

// Barrier degree: one per NonNeg entry, one per Soc block, n per Psd block.
int cone_degree(const std::vector<ConeBlock>& cones);

// Throws std::invalid_argument on shape mismatch between c, G, h, cones.
SolverResult solve(const StandardForm& problem, const SolverSettings& settings = {});

// Conic benchmark format text of the problem, for cross-checking the
// assembled program against external modeling tools.
std::string to_cbf_text(const StandardForm& problem);

} // namespace isacbeam::conic

#endif
