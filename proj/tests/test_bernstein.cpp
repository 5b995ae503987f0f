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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "isacbeam/bernstein.hpp"
#include "isacbeam/model.hpp"

using namespace isacbeam;

namespace {

CMatrix random_hermitian_psd(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix M(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            M(i, j) = Complex(gauss(rng), gauss(rng));
    return (M * M.adjoint()).eval();
}

CVector random_cvector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Complex(gauss(rng), gauss(rng));
    return v;
}

ScenarioConfig two_user_scenario() {
    ScenarioConfig sc;
    sc.geometry = {3, 0.5};
    sc.target.angle_rad = 0.1;
    sc.noise_variance = 0.8;
    sc.power_budget = 2.5;
    std::mt19937_64 rng(11);
    for (int k = 0; k < 2; ++k) {
        UserChannel u;
        u.nominal_channel = random_cvector(3, rng);
        u.error_std = 0.05 * (k + 1);
        u.sinr_target = 0.9 + 0.3 * k;
        u.outage_tolerance = 0.05 + 0.05 * k;
        sc.users.push_back(u);
    }
    return sc;
}

} // namespace

TEST_CASE("interference combination weights the own user by 1/gamma") {
    std::mt19937_64 rng(21);
    std::vector<CMatrix> W{random_hermitian_psd(3, rng), random_hermitian_psd(3, rng),
                           random_hermitian_psd(3, rng)};
    const double gamma = 1.7;
    const CMatrix got = interference_combination(W, gamma, 1);
    const CMatrix want = (1.0 / gamma) * W[1] - W[0] - W[2];
    CHECK((got - want).norm() < 1e-13 * (1.0 + want.norm()));

    std::vector<CMatrix> bad{CMatrix::Zero(3, 3), CMatrix::Zero(2, 2)};
    CHECK_THROWS_AS((void)interference_combination(bad, 1.0, 0), std::invalid_argument);
}

TEST_CASE("bernstein terms match their defining formulas") {
    std::mt19937_64 rng(22);
    const int n = 4;
    // Wbar from a random Hermitian difference, deliberately indefinite.
    const CMatrix Wbar = random_hermitian_psd(n, rng) - random_hermitian_psd(n, rng);
    const CVector h = random_cvector(n, rng);
    const double sigma = 0.12;
    const double noise = 0.9;
    const double p = 0.07;

    const BernsteinTerms t = bernstein_terms(Wbar, h, sigma, noise, p);
    CHECK((t.A - sigma * sigma * Wbar).norm() < 1e-13 * Wbar.norm());
    CHECK((t.b - sigma * (Wbar * h.conjugate())).norm() < 1e-13 * (1.0 + t.b.norm()));
    const Complex quad = h.transpose() * Wbar * h.conjugate();
    CHECK(t.sigma_sq == doctest::Approx(noise - quad.real()).epsilon(1e-12));
    CHECK(t.epsilon == doctest::Approx(-std::log(p)).epsilon(1e-14));

    // Zero channel error wipes out both perturbation terms.
    const BernsteinTerms t0 = bernstein_terms(Wbar, h, 0.0, noise, p);
    CHECK(t0.A.norm() == 0.0);
    CHECK(t0.b.norm() == 0.0);

    CHECK_THROWS_AS((void)bernstein_terms(Wbar, h, sigma, noise, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bernstein_terms(Wbar, h, sigma, noise, 1.0), std::invalid_argument);
}

TEST_CASE("soc vector stacks sqrt(2) b over vec A") {
    std::mt19937_64 rng(23);
    const int n = 3;
    const CMatrix Wbar = random_hermitian_psd(n, rng);
    const CVector h = random_cvector(n, rng);
    const BernsteinTerms t = bernstein_terms(Wbar, h, 0.2, 1.0, 0.1);
    const CVector v = soc_vector(t);
    REQUIRE(v.size() == n + n * n);
    CHECK((v.head(n) - std::sqrt(2.0) * t.b).norm() < 1e-14 * (1.0 + t.b.norm()));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(v[n + j * n + i] - t.A(i, j)) < 1e-14 * (1.0 + std::abs(t.A(i, j))));
    // Norm identity: ||v||^2 = 2||b||^2 + ||A||_F^2.
    CHECK(v.squaredNorm() ==
          doctest::Approx(2.0 * t.b.squaredNorm() + t.A.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("arrow matrix is PSD exactly when mu clears the norm") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 3;
        const CMatrix Wbar = random_hermitian_psd(n, rng) - random_hermitian_psd(n, rng);
        const CVector h = random_cvector(n, rng);
        const double sigma = 0.01 + 0.001 * trial;
        const BernsteinTerms t = bernstein_terms(Wbar, h, sigma, 1.0, 0.1);
        const double norm = soc_vector(t).norm();

        for (const double mu : {norm * 1.01 + 1e-9, norm * 0.99 - 1e-9}) {
            const CMatrix arrow = lmi_arrow_matrix(mu, t);
            REQUIRE(arrow.rows() == 1 + n + n * n);
            CHECK((arrow - arrow.adjoint()).norm() < 1e-12);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(arrow);
            const double lmin = es.eigenvalues()[0];
            const bool psd = lmin >= -1e-8;
            const bool in_soc = mu >= norm;
            CHECK(psd == in_soc);
        }
    }
}

TEST_CASE("assemble_constraints produces 5K+1 ordered records") {
    const ScenarioConfig sc = two_user_scenario();
    const ConicConstraintSet set = assemble_constraints(sc);
    CHECK(set.num_antennas == 3);
    CHECK(set.num_users == 2);
    REQUIRE(set.records.size() == 11);
    const ConstraintFamily want[] = {
        ConstraintFamily::LinearScalar, ConstraintFamily::NonNeg, ConstraintFamily::PsdShift,
        ConstraintFamily::SocOrLmi,     ConstraintFamily::PsdVar,
    };
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 5; ++j)
            CHECK(set.records[5 * k + j].family == want[j]);
    CHECK(set.records.back().family == ConstraintFamily::Power);
    const auto& power = std::get<PowerConstraint>(set.records.back().data);
    CHECK(power.budget == doctest::Approx(sc.power_budget));
}

TEST_CASE("record evaluators reproduce the hand-assembled constraint values") {
    const ScenarioConfig sc = two_user_scenario();
    const ConicConstraintSet set = assemble_constraints(sc);
    std::mt19937_64 rng(31);
    const std::vector<CMatrix> W{random_hermitian_psd(3, rng), random_hermitian_psd(3, rng)};
    const double mu = 0.37;
    const double nu = 0.21;

    for (int k = 0; k < 2; ++k) {
        const UserChannel& u = sc.users[k];
        const CMatrix Wbar = interference_combination(W, u.sinr_target, k);
        const BernsteinTerms t =
            bernstein_terms(Wbar, u.nominal_channel, u.error_std, sc.noise_variance,
                            u.outage_tolerance);

        // Scalar row: Tr(A) - sqrt(2 eps) mu - eps nu - sigma^2 >= 0.
        const auto& lin = std::get<LinearScalarConstraint>(set.records[5 * k + 0].data);
        CHECK(lin.user == k);
        const double want_lin = t.A.trace().real() - std::sqrt(2.0 * t.epsilon) * mu -
                                t.epsilon * nu - t.sigma_sq;
        CHECK(linear_scalar_value(lin, W, mu, nu) == doctest::Approx(want_lin).epsilon(1e-10));

        // Shifted matrix: nu I + A.
        const auto& shift = std::get<PsdShiftConstraint>(set.records[5 * k + 2].data);
        const CMatrix got_shift = psd_shift_value(shift, W, nu);
        const CMatrix want_shift = nu * CMatrix::Identity(3, 3) + t.A;
        CHECK((got_shift - want_shift).norm() < 1e-12 * (1.0 + want_shift.norm()));

        // Cone vector matches the term-level stacking.
        const auto& soc = std::get<SocConstraint>(set.records[5 * k + 3].data);
        const CVector got_soc = soc_value(soc, W);
        const CVector want_soc = soc_vector(t);
        CHECK((got_soc - want_soc).norm() < 1e-12 * (1.0 + want_soc.norm()));
    }
}

TEST_CASE("assemble_constraints validates the scenario first") {
    ScenarioConfig sc = two_user_scenario();
    sc.users[0].sinr_target = -1.0;
    CHECK_THROWS_AS((void)assemble_constraints(sc), std::invalid_argument);
}
