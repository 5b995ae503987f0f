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
#include <vector>

#include "isacbeam/evaluation.hpp"
#include "isacbeam/model.hpp"

using namespace isacbeam;

namespace {

CVector random_cvector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Complex(gauss(rng), gauss(rng));
    return v;
}

// Independent quadrature oracle for the Marcum Q function:
//   Q1(a, b) = integral_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx
// by adaptive Simpson on a truncated interval. The Gaussian envelope makes
// the tail beyond max(a, b) + 40 smaller than 1e-300.
double marcum_integrand(double x, double a) {
    if (x <= 0.0) return 0.0;
    const double expo = std::exp(-(x * x + a * a) / 2.0);
    if (expo == 0.0) return 0.0;  // true value below representable range
    return x * expo * std::cyl_bessel_i(0.0, a * x);
}

double adaptive_simpson(double a0, double lo, double hi, double flo, double fmid, double fhi,
                        double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flm = marcum_integrand(lmid, a0);
    const double frm = marcum_integrand(rmid, a0);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(a0, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
           adaptive_simpson(a0, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

double marcum_q1_oracle(double a, double b) {
    const double hi = std::max(a, b) + 40.0;
    if (b >= hi) return 0.0;
    const double flo = marcum_integrand(b, a);
    const double fhi = marcum_integrand(hi, a);
    const double mid = 0.5 * (b + hi);
    const double fmid = marcum_integrand(mid, a);
    const double whole = (hi - b) / 6.0 * (flo + 4.0 * fmid + fhi);
    return adaptive_simpson(a, b, hi, flo, fmid, fhi, whole, 1e-13, 48);
}

} // namespace

TEST_CASE("matched covariance concentrates N at the probing angle") {
    for (int n : {3, 4, 8}) {
        const UlaGeometry geom{n, 0.5};
        const double theta = 0.25;
        const CVector a0 = steering_vector(geom, theta);
        // Unit-trace covariance aligned with the probing direction.
        const CMatrix W = (a0.conjugate() * a0.transpose() / static_cast<double>(n)).eval();
        const double p = beampattern_power({W}, geom, theta);
        CHECK(std::abs(p - static_cast<double>(n)) <= 1e-9);
    }
}

TEST_CASE("beampattern clamps solver residue at zero") {
    const UlaGeometry geom{3, 0.5};
    const CMatrix W = (-1e-15 * CMatrix::Identity(3, 3)).eval();
    CHECK(beampattern_power({W}, geom, 0.1) == 0.0);
}

TEST_CASE("beampattern curve covers the grid in order") {
    std::mt19937_64 rng(3);
    const CVector w = random_cvector(4, rng);
    const std::vector<CMatrix> W{(w * w.adjoint()).eval()};
    const UlaGeometry geom{4, 0.5};
    const auto curve = beampattern_curve(W, geom, -1.0, 1.0, 21);
    REQUIRE(curve.size() == 21);
    CHECK(curve.front().angle_rad == doctest::Approx(-1.0));
    CHECK(curve.back().angle_rad == doctest::Approx(1.0));
    for (std::size_t i = 0; i + 1 < curve.size(); ++i)
        CHECK(curve[i + 1].angle_rad > curve[i].angle_rad);
    for (const auto& pt : curve)
        CHECK(pt.power == doctest::Approx(beampattern_power(W, geom, pt.angle_rad)));
    // Single-point grid sits at the lower endpoint.
    const auto single = beampattern_curve(W, geom, 0.3, 0.9, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].angle_rad == doctest::Approx(0.3));
}

TEST_CASE("beampattern energy equals the covariance trace") {
    // For half-wavelength spacing the average power over a sine-uniform grid
    // is Tr(sum W): the array correlation integrates to the identity.
    std::mt19937_64 rng(4);
    const int n = 5;
    CMatrix M(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            M(i, j) = Complex(std::normal_distribution<double>()(rng),
                              std::normal_distribution<double>()(rng));
    const CMatrix R = (M * M.adjoint()).eval();
    const UlaGeometry geom{n, 0.5};

    const int grid = 4001;
    double acc = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double u = -1.0 + 2.0 * i / (grid - 1);
        const double wgt = (i == 0 || i == grid - 1) ? 0.5 : 1.0;
        acc += wgt * beampattern_power({R}, geom, std::asin(u));
    }
    acc /= grid - 1;       // trapezoid over u in [-1, 1], then / 2
    acc *= 0.5 * 2.0;
    CHECK(acc == doctest::Approx(R.trace().real()).epsilon(1e-9));
}

TEST_CASE("user SINR matches its defining ratio") {
    std::mt19937_64 rng(5);
    const int n = 4;
    const std::vector<CVector> w{random_cvector(n, rng), random_cvector(n, rng),
                                 random_cvector(n, rng)};
    const CVector h = random_cvector(n, rng);
    const double noise = 0.7;
    for (int k = 0; k < 3; ++k) {
        double interf = noise;
        for (int l = 0; l < 3; ++l)
            if (l != k) interf += std::norm((h.transpose() * w[l])(0, 0));
        const double want = std::norm((h.transpose() * w[k])(0, 0)) / interf;
        CHECK(user_sinr(w, h, noise, k) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)user_sinr(w, h, noise, 3), std::invalid_argument);
}

TEST_CASE("sum rate is the Shannon sum") {
    CHECK(sum_rate({1.0, 3.0}) == doctest::Approx(1.0 + 2.0).epsilon(1e-14));
    CHECK(sum_rate({}) == 0.0);
}

TEST_CASE("marcum q1 boundary anchors") {
    CHECK(marcum_q1(2.5, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double b : {0.1, 0.5, 1.0, 2.0, 4.0})
        CHECK(marcum_q1(0.0, b) ==
              doctest::Approx(std::exp(-b * b / 2.0)).epsilon(1e-12));
    CHECK_THROWS_AS((void)marcum_q1(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)marcum_q1(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("marcum q1 agrees with the quadrature oracle to 1e-8") {
    const double pts[][2] = {{0.5, 0.5}, {0.5, 2.0}, {1.0, 1.0}, {1.0, 3.0}, {2.0, 1.0},
                             {2.0, 4.0}, {3.0, 2.0}, {4.0, 4.0}, {5.0, 3.0}, {6.0, 6.0}};
    for (const auto& p : pts) {
        const double got = marcum_q1(p[0], p[1]);
        const double want = marcum_q1_oracle(p[0], p[1]);
        CHECK(std::abs(got - want) <= 1e-8 * std::max(1e-12, std::abs(want)));
    }
}

TEST_CASE("marcum q1 is monotone in both arguments") {
    double prev = 0.0;
    for (double a = 0.0; a <= 5.0; a += 0.25) {
        const double q = marcum_q1(a, 2.0);
        CHECK(q >= prev - 1e-12);
        prev = q;
    }
    prev = 1.0;
    for (double b = 0.0; b <= 5.0; b += 0.25) {
        const double q = marcum_q1(1.5, b);
        CHECK(q <= prev + 1e-12);
        prev = q;
    }
}

TEST_CASE("zero output SNR collapses detection to the false-alarm rate") {
    for (double pfa : {1e-6, 1e-4, 1e-2, 0.3})
        CHECK(std::abs(detection_probability(0.0, pfa) - pfa) <= 1e-10);
    CHECK_THROWS_AS((void)detection_probability(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)detection_probability(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)detection_probability(-1.0, 0.5), std::invalid_argument);
    // More SNR never hurts detection.
    double prev = 0.0;
    for (double snr = 0.0; snr <= 20.0; snr += 1.0) {
        const double pd = detection_probability(snr, 1e-4);
        CHECK(pd >= prev - 1e-12);
        prev = pd;
    }
}

TEST_CASE("output SNR composes element SNR, array gain, and probe power") {
    CHECK(radar_output_snr(2.0, 3.0, 5, RadarReceiver::CoherentRx) ==
          doctest::Approx(30.0).epsilon(1e-14));
    CHECK(radar_output_snr(2.0, 3.0, 5, RadarReceiver::TransmitOnly) ==
          doctest::Approx(6.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)radar_output_snr(0.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)radar_output_snr(1.0, -1.0, 4), std::invalid_argument);
}

TEST_CASE("outage estimate is seeded and thread-count invariant") {
    std::mt19937_64 rng(6);
    const std::vector<CVector> w{random_cvector(4, rng), random_cvector(4, rng)};
    const CVector h = random_cvector(4, rng);
    // Target at the nominal SINR keeps the outage strictly inside (0,1).
    const double target = user_sinr(w, h, 1.0, 0);
    const OutageEstimate a = estimate_outage(w, h, 0.1, 1.0, target, 0, 20000, 77, 1);
    const OutageEstimate b = estimate_outage(w, h, 0.1, 1.0, target, 0, 20000, 77, 4);
    const OutageEstimate c = estimate_outage(w, h, 0.1, 1.0, target, 0, 20000, 77, 3);
    CHECK(a.probability == b.probability);
    CHECK(a.failures == b.failures);
    CHECK(a.probability == c.probability);
    CHECK(a.trials == 20000);
    CHECK(a.halfwidth ==
          doctest::Approx(1.96 * std::sqrt(a.probability * (1.0 - a.probability) / 20000.0))
              .epsilon(1e-12));
    // A different seed moves the estimate.
    const OutageEstimate d = estimate_outage(w, h, 0.1, 1.0, target, 0, 20000, 78, 1);
    CHECK(d.failures != a.failures);
    CHECK(a.failures > 0);
    CHECK(a.failures < 20000);
}

TEST_CASE("zero channel error makes outage an indicator") {
    std::mt19937_64 rng(7);
    const std::vector<CVector> w{random_cvector(3, rng)};
    const CVector h = random_cvector(3, rng);
    const double sinr = user_sinr(w, h, 1.0, 0);
    const OutageEstimate below = estimate_outage(w, h, 0.0, 1.0, sinr * 0.9, 0, 500, 1, 2);
    CHECK(below.probability == 0.0);
    const OutageEstimate above = estimate_outage(w, h, 0.0, 1.0, sinr * 1.1, 0, 500, 1, 2);
    CHECK(above.probability == 1.0);
}

TEST_CASE("single-user outage matches the noncentral chi-square law") {
    // For K = 1 the received scalar h^T w is complex Gaussian with mean
    // hbar^T w and variance sigma^2 ||w||^2, so the outage has a closed form
    // through the Marcum Q function.
    std::mt19937_64 rng(8);
    const CVector w = random_cvector(4, rng);
    const CVector h = random_cvector(4, rng);
    const double sigma = 0.3;
    const double noise = 1.0;
    const double target = 0.8 * user_sinr({w}, h, noise, 0);

    const double mean_sq = std::norm((h.transpose() * w)(0, 0));
    const double var = sigma * sigma * w.squaredNorm();
    const double truth =
        1.0 - marcum_q1(std::sqrt(2.0 * mean_sq / var),
                        std::sqrt(2.0 * target * noise / var));

    const OutageEstimate mc = estimate_outage({w}, h, sigma, noise, target, 0, 200000, 5, 4);
    CHECK(std::abs(mc.probability - truth) <= 4.0 * std::max(mc.halfwidth, 1e-4));
}

TEST_CASE("full evaluation report is coherent") {
    ScenarioConfig sc;
    sc.geometry = {4, 0.5};
    sc.target.angle_rad = 0.2;
    sc.noise_variance = 1.0;
    sc.power_budget = 1.0;
    std::mt19937_64 rng(9);
    for (int k = 0; k < 2; ++k) {
        UserChannel u;
        u.nominal_channel = random_cvector(4, rng);
        u.error_std = 0.05;
        u.sinr_target = 0.5;
        u.outage_tolerance = 0.1;
        sc.users.push_back(u);
    }
    std::vector<CVector> w{random_cvector(4, rng) * 0.3, random_cvector(4, rng) * 0.3};

    EvaluationOptions opt;
    opt.num_trials = 5000;
    opt.seed = 3;
    opt.num_threads = 2;
    const EvaluationReport rep = evaluate(sc, w, {}, opt);
    REQUIRE(rep.users.size() == 2);

    double rate_sum = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double sinr = user_sinr(w, sc.users[k].nominal_channel, sc.noise_variance, k);
        CHECK(rep.users[k].nominal_sinr == doctest::Approx(sinr).epsilon(1e-12));
        CHECK(rep.users[k].rate == doctest::Approx(std::log2(1.0 + sinr)).epsilon(1e-12));
        CHECK(rep.users[k].outage.trials == 5000);
        rate_sum += rep.users[k].rate;
    }
    CHECK(rep.sum_rate == doctest::Approx(rate_sum).epsilon(1e-12));

    // Probe power falls back to the rank-one outer products.
    std::vector<CMatrix> covs;
    for (const auto& wk : w) covs.push_back((wk * wk.adjoint()).eval());
    CHECK(rep.radar.probe_power ==
          doctest::Approx(beampattern_power(covs, sc.geometry, 0.2)).epsilon(1e-12));
    CHECK(rep.radar.output_snr ==
          doctest::Approx(radar_output_snr(opt.radar_snr_element, rep.radar.probe_power, 4))
              .epsilon(1e-12));
    CHECK(rep.radar.detection_probability ==
          doctest::Approx(detection_probability(rep.radar.output_snr, opt.false_alarm_rate))
              .epsilon(1e-12));
    CHECK(rep.beampattern.empty());

    // Explicit covariances win over the rank-one fallback.
    std::vector<CMatrix> wide{CMatrix::Identity(4, 4) * 0.1, CMatrix::Identity(4, 4) * 0.1};
    const EvaluationReport rep2 = evaluate(sc, w, wide, opt);
    CHECK(rep2.radar.probe_power ==
          doctest::Approx(beampattern_power(wide, sc.geometry, 0.2)).epsilon(1e-12));

    // Skipping the Monte-Carlo stage zeroes the outage fields.
    EvaluationOptions quick = opt;
    quick.num_trials = 0;
    const EvaluationReport rep3 = evaluate(sc, w, {}, quick);
    CHECK(rep3.users[0].outage.trials == 0);

    // Beamformer count must match the user count.
    CHECK_THROWS_AS((void)evaluate(sc, {w[0]}, {}, opt), std::invalid_argument);
}
