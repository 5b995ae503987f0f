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
// Homogeneous self-dual embedding over the variables (x, s, z, tau, kappa)
// with residuals
//   rx = G'z + c tau,  rz = Gx + s - h tau,  rt = c'x + h'z + kappa.
// Each iteration computes the Nesterov-Todd scaling W (W z = W^{-T} s =
// lambda), takes a Mehrotra predictor step to pick the centering weight,
// and solves the reduced system through the normal equations
// (W^{-T}G)'(W^{-T}G). Infeasible problems terminate with a certificate
// (h'z < 0 with G'z ~ 0, or c'x < 0 with Gx + s ~ 0) instead of stalling.

#include "isacbeam/conic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "isacbeam/embedding.hpp"

namespace isacbeam::conic {

namespace {

constexpr double kInfiniteStep = 1e300;

struct Block {
    ConeKind kind;
    int order = 0;   // entries for NonNeg, cone dim for Soc, matrix order for Psd
    int offset = 0;  // first slack index
    int size = 0;    // slack entries occupied
};

std::vector<Block> layout_blocks(const std::vector<ConeBlock>& cones) {
    std::vector<Block> blocks;
    blocks.reserve(cones.size());
    int offset = 0;
    for (const ConeBlock& cone : cones) {
        if (cone.dim < 1)
            throw std::invalid_argument("conic::solve: cone block dimension must be >= 1");
        Block b;
        b.kind = cone.kind;
        b.order = cone.dim;
        b.offset = offset;
        b.size = cone.kind == ConeKind::Psd ? svec_dim(cone.dim) : cone.dim;
        offset += b.size;
        blocks.push_back(b);
    }
    return blocks;
}

RMatrix smat_block(const RVector& v, const Block& b) {
    return smat(v.segment(b.offset, b.size), b.order);
}

// Identity element of the cone product: ones for NonNeg, (1,0,..) for Soc,
// svec(I) for Psd.
RVector cone_identity(const std::vector<Block>& blocks, int total) {
    RVector e = RVector::Zero(total);
    for (const Block& b : blocks) {
        switch (b.kind) {
        case ConeKind::NonNeg:
            e.segment(b.offset, b.size).setOnes();
            break;
        case ConeKind::Soc:
            e[b.offset] = 1.0;
            break;
        case ConeKind::Psd:
            e.segment(b.offset, b.size) = svec(RMatrix::Identity(b.order, b.order));
            break;
        }
    }
    return e;
}

// Smallest cone eigenvalue of v: entry for NonNeg, v0 - ||v1|| for Soc,
// matrix eigenvalue for Psd. Interior iff positive.
double min_cone_eigenvalue(const std::vector<Block>& blocks, const RVector& v) {
    double min_eig = std::numeric_limits<double>::infinity();
    for (const Block& b : blocks) {
        switch (b.kind) {
        case ConeKind::NonNeg:
            min_eig = std::min(min_eig, v.segment(b.offset, b.size).minCoeff());
            break;
        case ConeKind::Soc: {
            const double head = v[b.offset];
            const double tail = v.segment(b.offset + 1, b.size - 1).norm();
            min_eig = std::min(min_eig, head - tail);
            break;
        }
        case ConeKind::Psd: {
            Eigen::SelfAdjointEigenSolver<RMatrix> eig(smat_block(v, b),
                                                       Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
            break;
        }
        }
    }
    return min_eig;
}

// u o v per block: elementwise, arrow product, or symmetrized matrix product.
RVector jordan_product(const std::vector<Block>& blocks, const RVector& u, const RVector& v) {
    RVector out(u.size());
    for (const Block& b : blocks) {
        const auto ub = u.segment(b.offset, b.size);
        const auto vb = v.segment(b.offset, b.size);
        switch (b.kind) {
        case ConeKind::NonNeg:
            out.segment(b.offset, b.size) = ub.cwiseProduct(vb);
            break;
        case ConeKind::Soc: {
            out[b.offset] = ub.dot(vb);
            out.segment(b.offset + 1, b.size - 1) =
                ub[0] * vb.tail(b.size - 1) + vb[0] * ub.tail(b.size - 1);
            break;
        }
        case ConeKind::Psd: {
            const RMatrix U = smat_block(u, b);
            const RMatrix V = smat_block(v, b);
            out.segment(b.offset, b.size) = svec(0.5 * (U * V + V * U));
            break;
        }
        }
    }
    return out;
}

// Largest step alpha with lambda + alpha * dir staying in the cone, where
// lambda is a scaled point (diagonal in Psd blocks).
double step_to_boundary(const std::vector<Block>& blocks, const RVector& lambda,
                        const RVector& dir) {
    double alpha = kInfiniteStep;
    for (const Block& b : blocks) {
        const auto lb = lambda.segment(b.offset, b.size);
        const auto db = dir.segment(b.offset, b.size);
        switch (b.kind) {
        case ConeKind::NonNeg:
            for (int i = 0; i < b.size; ++i)
                if (db[i] < 0.0)
                    alpha = std::min(alpha, -lb[i] / db[i]);
            break;
        case ConeKind::Soc: {
            // Boundary where (l0+a*d0)^2 = ||lt+a*dt||^2; first positive root
            // of qa*a^2 + qb*a + qc with qc > 0 at an interior point.
            const double l0 = lb[0];
            const double d0 = db[0];
            const auto lt = lb.tail(b.size - 1);
            const auto dt = db.tail(b.size - 1);
            const double qa = d0 * d0 - dt.squaredNorm();
            const double qb = 2.0 * (l0 * d0 - lt.dot(dt));
            const double qc = l0 * l0 - lt.squaredNorm();
            double root = kInfiniteStep;
            const double disc = qb * qb - 4.0 * qa * qc;
            if (std::abs(qa) < 1e-300) {
                if (qb < 0.0)
                    root = -qc / qb;
            } else if (disc >= 0.0) {
                // Smallest positive root, via the cancellation-free pairing
                // q = -(qb + sign(qb) sqrt(disc))/2, roots q/qa and qc/q.
                const double q = -(qb + std::copysign(std::sqrt(disc), qb)) / 2.0;
                if (q != 0.0) {
                    const double r1 = q / qa;
                    const double r2 = qc / q;
                    if (r1 > 0.0)
                        root = r1;
                    if (r2 > 0.0)
                        root = std::min(root, r2);
                }
            }
            if (d0 < 0.0)
                root = std::min(root, -l0 / d0);
            alpha = std::min(alpha, root);
            break;
        }
        case ConeKind::Psd: {
            // lambda is diagonal here: Lambda + a*D >= 0 iff
            // I + a * Lambda^{-1/2} D Lambda^{-1/2} >= 0.
            const RMatrix D = smat_block(dir, b);
            RVector lam(b.order);
            int at = 0;
            for (int j = 0; j < b.order; ++j) {
                at += j;
                lam[j] = lb[at];
                at += 1;
            }
            RMatrix M(b.order, b.order);
            for (int j = 0; j < b.order; ++j)
                for (int i = 0; i < b.order; ++i)
                    M(i, j) = D(i, j) / std::sqrt(lam[i] * lam[j]);
            Eigen::SelfAdjointEigenSolver<RMatrix> eig(M, Eigen::EigenvaluesOnly);
            const double w_min = eig.eigenvalues().minCoeff();
            if (w_min < 0.0)
                alpha = std::min(alpha, -1.0 / w_min);
            break;
        }
        }
    }
    return alpha;
}

struct BlockScaling {
    RVector w;       // NonNeg: elementwise scaling
    double eta = 0;  // Soc: magnitude
    RVector v;       // Soc: hyperbolic Householder vector, v'Jv = 1
    RMatrix R;       // Psd: W u = svec(R' smat(u) R)
    RMatrix Ri;      // Psd: R^{-1}
};

struct Scaling {
    std::vector<Block> blocks;
    std::vector<BlockScaling> data;
    RVector lambda;     // W z = W^{-T} s
    RVector lambda_sq;  // lambda o lambda

    enum class Op { W, Wt, WInv, WInvT };

    RVector apply(Op op, const RVector& u) const {
        RVector out(u.size());
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const Block& b = blocks[i];
            const BlockScaling& s = data[i];
            const auto ub = u.segment(b.offset, b.size);
            switch (b.kind) {
            case ConeKind::NonNeg:
                if (op == Op::W || op == Op::Wt)
                    out.segment(b.offset, b.size) = s.w.cwiseProduct(ub);
                else
                    out.segment(b.offset, b.size) = ub.cwiseQuotient(s.w);
                break;
            case ConeKind::Soc: {
                // W = eta (2 v v' - J), W^{-1} = (2 Jv v'J - J)/eta; symmetric.
                RVector ju = -ub;
                ju[0] = ub[0];
                if (op == Op::W || op == Op::Wt) {
                    out.segment(b.offset, b.size) = s.eta * (2.0 * s.v.dot(ub) * s.v - ju);
                } else {
                    RVector jv = -s.v;
                    jv[0] = s.v[0];
                    out.segment(b.offset, b.size) = (2.0 * jv.dot(ub) * jv - ju) / s.eta;
                }
                break;
            }
            case ConeKind::Psd: {
                const RMatrix M = smat(ub, b.order);
                RMatrix out_m;
                switch (op) {
                case Op::W: out_m = s.R.transpose() * M * s.R; break;
                case Op::Wt: out_m = s.R * M * s.R.transpose(); break;
                case Op::WInv: out_m = s.Ri.transpose() * M * s.Ri; break;
                case Op::WInvT: out_m = s.Ri * M * s.Ri.transpose(); break;
                }
                out.segment(b.offset, b.size) = svec(0.5 * (out_m + out_m.transpose()));
                break;
            }
            }
        }
        return out;
    }

    // Solves lambda o x = d blockwise (arrow system for Soc, Lyapunov-type
    // diagonal system for Psd).
    RVector solve_lambda(const RVector& d) const {
        RVector out(d.size());
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const Block& b = blocks[i];
            const auto lb = lambda.segment(b.offset, b.size);
            const auto db = d.segment(b.offset, b.size);
            switch (b.kind) {
            case ConeKind::NonNeg:
                out.segment(b.offset, b.size) = db.cwiseQuotient(lb);
                break;
            case ConeKind::Soc: {
                const double l0 = lb[0];
                const auto lt = lb.tail(b.size - 1);
                const double det = l0 * l0 - lt.squaredNorm();
                const double x0 = (l0 * db[0] - lt.dot(db.tail(b.size - 1))) / det;
                out[b.offset] = x0;
                out.segment(b.offset + 1, b.size - 1) =
                    (db.tail(b.size - 1) - x0 * lt) / l0;
                break;
            }
            case ConeKind::Psd: {
                RVector lam(b.order);
                int at = 0;
                for (int j = 0; j < b.order; ++j) {
                    at += j;
                    lam[j] = lb[at];
                    at += 1;
                }
                const RMatrix D = smat(db, b.order);
                RMatrix X(b.order, b.order);
                for (int c = 0; c < b.order; ++c)
                    for (int r = 0; r < b.order; ++r)
                        X(r, c) = 2.0 * D(r, c) / (lam[r] + lam[c]);
                out.segment(b.offset, b.size) = svec(X);
                break;
            }
            }
        }
        return out;
    }
};

// Nesterov-Todd scaling at an interior pair (s, z). Returns false when a
// block has left the interior beyond numerical recovery, naming the block
// in `reason`.
bool compute_scaling(const std::vector<Block>& blocks, const RVector& s, const RVector& z,
                     Scaling& out, std::string* reason = nullptr) {
    const auto fail = [&](std::size_t i, const char* what) {
        if (reason != nullptr) {
            std::ostringstream os;
            os << what << " in cone block " << i;
            *reason = os.str();
        }
        return false;
    };
    out.blocks = blocks;
    out.data.assign(blocks.size(), BlockScaling{});
    out.lambda.resize(s.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        BlockScaling& sc = out.data[i];
        const auto sb = s.segment(b.offset, b.size);
        const auto zb = z.segment(b.offset, b.size);
        switch (b.kind) {
        case ConeKind::NonNeg: {
            if (sb.minCoeff() <= 0.0 || zb.minCoeff() <= 0.0)
                return fail(i, "nonnegative slack left the interior");
            sc.w = (sb.cwiseQuotient(zb)).cwiseSqrt();
            out.lambda.segment(b.offset, b.size) = (sb.cwiseProduct(zb)).cwiseSqrt();
            break;
        }
        case ConeKind::Soc: {
            const int m = b.size;
            const double s_res = sb[0] * sb[0] - sb.tail(m - 1).squaredNorm();
            const double z_res = zb[0] * zb[0] - zb.tail(m - 1).squaredNorm();
            if (s_res <= 0.0 || z_res <= 0.0 || sb[0] <= 0.0 || zb[0] <= 0.0)
                return fail(i, "second-order slack left the interior");
            const double a = std::sqrt(s_res);
            const double bn = std::sqrt(z_res);
            RVector sbar = sb / a;
            RVector zbar = zb / bn;
            const double gamma = std::sqrt((1.0 + sbar.dot(zbar)) / 2.0);
            RVector jz = -zbar;
            jz[0] = zbar[0];
            // (sbar + J zbar)/(2 gamma) reflects zbar onto sbar; the scaling
            // needs the half-angle vector, which maps both onto lambda.
            RVector vt = (sbar + jz) / (2.0 * gamma);
            vt[0] += 1.0;
            sc.v = vt / std::sqrt(2.0 * vt[0]);
            sc.eta = std::sqrt(a / bn);
            RVector ju = -zb;
            ju[0] = zb[0];
            out.lambda.segment(b.offset, m) = sc.eta * (2.0 * sc.v.dot(zb) * sc.v - ju);
            break;
        }
        case ConeKind::Psd: {
            const RMatrix S = smat_block(s, b);
            const RMatrix Z = smat_block(z, b);
            Eigen::LLT<RMatrix> ls(S);
            Eigen::LLT<RMatrix> lz(Z);
            if (ls.info() != Eigen::Success || lz.info() != Eigen::Success)
                return fail(i, "semidefinite slack left the interior");
            const RMatrix Ls = ls.matrixL();
            const RMatrix Lz = lz.matrixL();
            Eigen::JacobiSVD<RMatrix> svd(Lz.transpose() * Ls,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
            const RVector sing = svd.singularValues();
            if (sing.minCoeff() <= 0.0)
                return fail(i, "semidefinite scaling became singular");
            const RVector inv_sqrt = sing.cwiseSqrt().cwiseInverse();
            sc.R = Ls * svd.matrixV() * inv_sqrt.asDiagonal();
            sc.Ri = inv_sqrt.asDiagonal() * svd.matrixU().transpose() * Lz.transpose();
            RMatrix lam = RMatrix::Zero(b.order, b.order);
            lam.diagonal() = sing;
            out.lambda.segment(b.offset, b.size) = svec(lam);
            break;
        }
        }
    }
    out.lambda_sq = jordan_product(blocks, out.lambda, out.lambda);
    return true;
}

struct KktSystem {
    const RMatrix* G = nullptr;
    const Scaling* scaling = nullptr;
    RMatrix Ghat;  // W^{-T} G
    Eigen::LDLT<RMatrix> factor;
    int refinement_steps = 1;

    bool factorize(const RMatrix& g, const Scaling& sc) {
        G = &g;
        scaling = &sc;
        const int n = static_cast<int>(g.cols());
        Ghat.resize(g.rows(), n);
        for (int j = 0; j < n; ++j)
            Ghat.col(j) = sc.apply(Scaling::Op::WInvT, g.col(j));
        const RMatrix M = Ghat.transpose() * Ghat;
        factor.compute(M);
        return factor.info() == Eigen::Success;
    }

    // Solves G' vz = ax;  G vx - W'W vz = az.
    void solve(const RVector& ax, const RVector& az, RVector& vx, RVector& vz) const {
        const RVector az_hat = scaling->apply(Scaling::Op::WInvT, az);
        const RVector rhs = ax + Ghat.transpose() * az_hat;
        vx = factor.solve(rhs);
        for (int r = 0; r < refinement_steps; ++r) {
            const RVector resid = rhs - Ghat.transpose() * (Ghat * vx);
            vx += factor.solve(resid);
        }
        vz = scaling->apply(Scaling::Op::WInv, Ghat * vx - az_hat);
    }
};

std::string format_message(const char* what, double pres, double dres, double gap) {
    std::ostringstream os;
    os << what << " (pres " << pres << ", dres " << dres << ", gap " << gap << ")";
    return os.str();
}

} // namespace

int cone_length(const std::vector<ConeBlock>& cones) {
    int total = 0;
    for (const ConeBlock& cone : cones)
        total += cone.kind == ConeKind::Psd ? svec_dim(cone.dim) : cone.dim;
    return total;
}

int cone_degree(const std::vector<ConeBlock>& cones) {
    int degree = 0;
    for (const ConeBlock& cone : cones) {
        switch (cone.kind) {
        case ConeKind::NonNeg: degree += cone.dim; break;
        case ConeKind::Soc: degree += 1; break;
        case ConeKind::Psd: degree += cone.dim; break;
        }
    }
    return degree;
}

SolverResult solve(const StandardForm& problem, const SolverSettings& settings) {
    const int n = static_cast<int>(problem.c.size());
    const int m = cone_length(problem.cones);
    if (n < 1 || m < 1)
        throw std::invalid_argument("conic::solve: empty problem");
    if (problem.G.rows() != m || problem.G.cols() != n || problem.h.size() != m)
        throw std::invalid_argument("conic::solve: shape mismatch between c, G, h, cones");

    const std::vector<Block> blocks = layout_blocks(problem.cones);
    const RVector e = cone_identity(blocks, m);
    const int degree = cone_degree(problem.cones);
    const RMatrix& G = problem.G;
    const RVector& c = problem.c;
    const RVector& h = problem.h;
    const double resx0 = std::max(1.0, c.norm());
    const double resz0 = std::max(1.0, h.norm());

    SolverResult result;

    // Initial point: least-squares primal/dual candidates shifted into the
    // interior along the identity element.
    Eigen::LDLT<RMatrix> gram(G.transpose() * G);
    if (gram.info() != Eigen::Success) {
        result.message = "initialization failed: could not factor G'G";
        return result;
    }
    RVector x = gram.solve(G.transpose() * h);
    RVector s = h - G * x;
    {
        const double viol = -min_cone_eigenvalue(blocks, s);
        if (viol >= 0.0)
            s += (1.0 + viol) * e;
    }
    RVector z = -(G * gram.solve(c));
    {
        const double viol = -min_cone_eigenvalue(blocks, z);
        if (viol >= 0.0)
            z += (1.0 + viol) * e;
    }
    double tau = 1.0;
    double kappa = 1.0;

    // Best near-feasible iterate, reported at reduced accuracy on stall.
    struct Best {
        bool valid = false;
        RVector x, s, z;
        double tau = 1.0;
        double pres = 0.0, dres = 0.0, gap = 0.0, relgap = 0.0;
        double merit = std::numeric_limits<double>::infinity();
        int iteration = 0;
    } best;

    KktSystem kkt;
    kkt.refinement_steps = std::max(0, settings.refinement_steps);
    Scaling scaling;

    int iter = 0;
    std::string stall_reason;
    for (;; ++iter) {
        const RVector rx = G.transpose() * z + c * tau;
        const RVector rz = G * x + s - h * tau;
        const double rt = c.dot(x) + h.dot(z) + kappa;
        const double cx = c.dot(x);
        const double hz = h.dot(z);
        const double pcost = cx / tau;
        const double dcost = -hz / tau;
        const double pres = rz.norm() / (tau * resz0);
        const double dres = rx.norm() / (tau * resx0);
        const double absgap = s.dot(z) / (tau * tau);
        const double relgap = absgap / std::max({1.0, std::abs(pcost), std::abs(dcost)});

        if (settings.verbose)
            std::cerr << "ipm " << iter << ": pcost " << pcost << " pres " << pres << " dres "
                      << dres << " gap " << absgap << " tau " << tau << " kappa " << kappa
                      << " smin " << min_cone_eigenvalue(blocks, s) << " zmin "
                      << min_cone_eigenvalue(blocks, z) << "\n";

        if (pres <= settings.feastol && dres <= settings.feastol &&
            (absgap <= settings.abstol || relgap <= settings.reltol)) {
            result.status = SolverStatus::Optimal;
            result.x = x / tau;
            result.s = s / tau;
            result.z = z / tau;
            result.primal_objective = pcost;
            result.primal_residual = pres;
            result.dual_residual = dres;
            result.duality_gap = absgap;
            result.iterations = iter;
            result.message = "optimal";
            return result;
        }

        // Certificates of infeasibility: scale-free residuals of G'z = 0,
        // h'z = -1 (primal) and Gx + s = 0, c'x = -1 (dual unbounded ray).
        if (hz < 0.0) {
            const double pinfres = (G.transpose() * z).norm() / ((-hz) * resx0);
            if (pinfres <= settings.feastol) {
                result.status = SolverStatus::PrimalInfeasible;
                result.z = z / (-hz);
                result.primal_residual = pinfres;
                result.iterations = iter;
                result.message = "primal infeasibility certificate found";
                return result;
            }
        }
        if (cx < 0.0) {
            const double dinfres = (G * x + s).norm() / ((-cx) * resz0);
            if (dinfres <= settings.feastol) {
                result.status = SolverStatus::DualInfeasible;
                result.x = x / (-cx);
                result.s = s / (-cx);
                result.dual_residual = dinfres;
                result.iterations = iter;
                result.message = "dual infeasibility certificate found (objective unbounded)";
                return result;
            }
        }

        if (pres < 10.0 && dres < 10.0) {
            const double merit = std::max({pres, dres, relgap});
            if (merit < best.merit) {
                best.valid = true;
                best.x = x;
                best.s = s;
                best.z = z;
                best.tau = tau;
                best.pres = pres;
                best.dres = dres;
                best.gap = absgap;
                best.relgap = relgap;
                best.merit = merit;
                best.iteration = iter;
            }
        }

        if (iter >= settings.max_iters) {
            stall_reason = "iteration limit reached";
            break;
        }

        std::string scaling_reason;
        if (!compute_scaling(blocks, s, z, scaling, &scaling_reason)) {
            stall_reason = "scaling breakdown: " + scaling_reason;
            break;
        }
        if (!kkt.factorize(G, scaling)) {
            stall_reason = "KKT factorization failed";
            break;
        }

        RVector x1, z1;
        kkt.solve(-c, h, x1, z1);
        const double denom = c.dot(x1) + h.dot(z1) - kappa / tau;
        if (!std::isfinite(denom) || denom >= 0.0) {
            stall_reason = "KKT system lost definiteness";
            break;
        }

        const double mu = (s.dot(z) + tau * kappa) / (degree + 1);

        auto direction = [&](const RVector& bx, const RVector& bz, double bt, const RVector& dc,
                             double dct, RVector& dx, RVector& ds, RVector& dz, double& dt,
                             double& dk) {
            const RVector wdc = scaling.apply(Scaling::Op::Wt, scaling.solve_lambda(dc));
            RVector x2, z2;
            kkt.solve(bx, bz - wdc, x2, z2);
            dt = (bt - dct / tau - c.dot(x2) - h.dot(z2)) / denom;
            dx = x2 + dt * x1;
            dz = z2 + dt * z1;
            ds = wdc - scaling.apply(Scaling::Op::Wt, scaling.apply(Scaling::Op::W, dz));
            dk = (dct - kappa * dt) / tau;
        };

        auto scaled_step = [&](const RVector& ds, const RVector& dz, double dt, double dk) {
            const RVector ds_scaled = scaling.apply(Scaling::Op::WInvT, ds);
            const RVector dz_scaled = scaling.apply(Scaling::Op::W, dz);
            double alpha = std::min(step_to_boundary(blocks, scaling.lambda, ds_scaled),
                                    step_to_boundary(blocks, scaling.lambda, dz_scaled));
            if (dt < 0.0)
                alpha = std::min(alpha, -tau / dt);
            if (dk < 0.0)
                alpha = std::min(alpha, -kappa / dk);
            return alpha;
        };

        // Predictor: pure Newton step toward the boundary.
        RVector dx_a, ds_a, dz_a;
        double dt_a, dk_a;
        direction(-rx, -rz, -rt, -scaling.lambda_sq, -tau * kappa, dx_a, ds_a, dz_a, dt_a,
                  dk_a);
        const double alpha_a = std::min(1.0, scaled_step(ds_a, dz_a, dt_a, dk_a));
        const double gap_now = s.dot(z) + tau * kappa;
        const double gap_aff = (s + alpha_a * ds_a).dot(z + alpha_a * dz_a) +
                               (tau + alpha_a * dt_a) * (kappa + alpha_a * dk_a);
        const double sigma =
            std::clamp(gap_aff / gap_now, 0.0, 1.0) * std::clamp(gap_aff / gap_now, 0.0, 1.0) *
            std::clamp(gap_aff / gap_now, 0.0, 1.0);

        // Corrector: recentered step with the Mehrotra second-order term.
        const RVector eta = jordan_product(blocks, scaling.apply(Scaling::Op::WInvT, ds_a),
                                           scaling.apply(Scaling::Op::W, dz_a));
        const RVector dc = sigma * mu * e - scaling.lambda_sq - eta;
        const double dct = sigma * mu - tau * kappa - dt_a * dk_a;
        const double shrink = 1.0 - sigma;
        RVector dx, ds, dz;
        double dt, dk;
        direction(-shrink * rx, -shrink * rz, -shrink * rt, dc, dct, dx, ds, dz, dt, dk);

        const double alpha =
            std::min(1.0, settings.step_fraction * scaled_step(ds, dz, dt, dk));
        if (!std::isfinite(alpha) || alpha <= 1e-14) {
            stall_reason = "step length collapsed";
            break;
        }

        x += alpha * dx;
        s += alpha * ds;
        z += alpha * dz;
        tau += alpha * dt;
        kappa += alpha * dk;
        if (!x.allFinite() || !s.allFinite() || !z.allFinite() || !std::isfinite(tau) ||
            !std::isfinite(kappa) || tau <= 0.0) {
            stall_reason = "iterate diverged";
            break;
        }
    }

    // Reduced-accuracy acceptance: two decades looser than the target, which
    // still meets the residual contract of downstream consumers.
    const double loose = 100.0 * settings.feastol;
    if (best.valid && best.pres <= loose && best.dres <= loose &&
        (best.gap <= 100.0 * settings.abstol || best.relgap <= 100.0 * settings.reltol)) {
        result.status = SolverStatus::Optimal;
        result.x = best.x / best.tau;
        result.s = best.s / best.tau;
        result.z = best.z / best.tau;
        result.primal_objective = c.dot(best.x) / best.tau;
        result.primal_residual = best.pres;
        result.dual_residual = best.dres;
        result.duality_gap = best.gap;
        result.iterations = iter;
        result.message = format_message("reduced accuracy", best.pres, best.dres, best.gap);
        return result;
    }

    result.status = SolverStatus::NumericalFailure;
    result.x = x / tau;
    result.s = s / tau;
    result.z = z / tau;
    result.primal_objective = c.dot(x) / tau;
    result.iterations = iter;
    if (best.valid) {
        result.primal_residual = best.pres;
        result.dual_residual = best.dres;
        result.duality_gap = best.gap;
        result.message = format_message(stall_reason.c_str(), best.pres, best.dres, best.gap);
    } else {
        result.message = stall_reason.empty() ? "no progress" : stall_reason;
    }
    return result;
}

std::string to_cbf_text(const StandardForm& problem) {
    const int n = static_cast<int>(problem.c.size());
    const std::vector<Block> blocks = layout_blocks(problem.cones);

    std::ostringstream scalar_cones;
    int num_scalar_blocks = 0;
    int num_scalar_rows = 0;
    std::ostringstream psd_orders;
    int num_psd = 0;
    for (const Block& b : blocks) {
        if (b.kind == ConeKind::Psd) {
            psd_orders << b.order << "\n";
            ++num_psd;
        } else {
            scalar_cones << (b.kind == ConeKind::NonNeg ? "L+" : "Q") << " " << b.size << "\n";
            ++num_scalar_blocks;
            num_scalar_rows += b.size;
        }
    }

    std::ostringstream os;
    os.precision(17);
    os << "VER\n3\n\nOBJSENSE\nMIN\n\nVAR\n" << n << " 1\nF " << n << "\n\n";
    if (num_psd > 0)
        os << "PSDCON\n" << num_psd << "\n" << psd_orders.str() << "\n";
    if (num_scalar_rows > 0)
        os << "CON\n" << num_scalar_rows << " " << num_scalar_blocks << "\n"
           << scalar_cones.str() << "\n";

    std::ostringstream obj;
    int obj_nnz = 0;
    for (int j = 0; j < n; ++j)
        if (problem.c[j] != 0.0) {
            obj << j << " " << problem.c[j] << "\n";
            ++obj_nnz;
        }
    os << "OBJACOORD\n" << obj_nnz << "\n" << obj.str() << "\n";

    // Scalar rows: h_i - sum_j G_ij x_j in the cone -> a = -G row, b = h.
    std::ostringstream acoord, bcoord;
    int a_nnz = 0, b_nnz = 0;
    int scalar_row = 0;
    // PSD rows: smat(h_blk - G_blk x) PSD -> H_j = -smat(G column), D = smat(h).
    std::ostringstream hcoord, dcoord;
    int h_nnz = 0, d_nnz = 0;
    int psd_index = 0;
    for (const Block& b : blocks) {
        if (b.kind == ConeKind::Psd) {
            for (int j = 0; j < n; ++j) {
                const RMatrix Hj = -smat_block(problem.G.col(j), b);
                for (int col = 0; col < b.order; ++col)
                    for (int row = col; row < b.order; ++row)
                        if (Hj(row, col) != 0.0) {
                            hcoord << psd_index << " " << j << " " << row << " " << col << " "
                                   << Hj(row, col) << "\n";
                            ++h_nnz;
                        }
            }
            const RMatrix D = smat_block(problem.h, b);
            for (int col = 0; col < b.order; ++col)
                for (int row = col; row < b.order; ++row)
                    if (D(row, col) != 0.0) {
                        dcoord << psd_index << " " << row << " " << col << " " << D(row, col)
                               << "\n";
                        ++d_nnz;
                    }
            ++psd_index;
        } else {
            for (int i = 0; i < b.size; ++i) {
                const int global = b.offset + i;
                for (int j = 0; j < n; ++j)
                    if (problem.G(global, j) != 0.0) {
                        acoord << scalar_row << " " << j << " " << -problem.G(global, j)
                               << "\n";
                        ++a_nnz;
                    }
                if (problem.h[global] != 0.0) {
                    bcoord << scalar_row << " " << problem.h[global] << "\n";
                    ++b_nnz;
                }
                ++scalar_row;
            }
        }
    }
    if (num_scalar_rows > 0) {
        os << "ACOORD\n" << a_nnz << "\n" << acoord.str() << "\n";
        os << "BCOORD\n" << b_nnz << "\n" << bcoord.str() << "\n";
    }
    if (num_psd > 0) {
        os << "HCOORD\n" << h_nnz << "\n" << hcoord.str() << "\n";
        os << "DCOORD\n" << d_nnz << "\n" << dcoord.str() << "\n";
    }
    return os.str();
}

} // namespace isacbeam::conic
