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
// Figures of merit for a designed transmit covariance set: delay-and-sum
// beampattern, per-user SINR and rate, Monte-Carlo outage probability under
// the Gaussian CSI error model, and square-law radar detection probability.

#ifndef ISACBEAM_EVALUATION_HPP
#define ISACBEAM_EVALUATION_HPP

#include <cstdint>
#include <vector>

#include "isacbeam/types.hpp"

namespace isacbeam {

// a(theta)^T R conj(a(theta)) for R = sum_k W_k. Tiny negative residue from
// the solver is clamped to 0.
double beampattern_power(const std::vector<CMatrix>& W, const UlaGeometry& geometry,
                         double angle_rad);

struct BeampatternPoint {
    double angle_rad = 0.0;
    double power = 0.0;
};

// Uniform angle grid, endpoints included, grid order preserved.
std::vector<BeampatternPoint> beampattern_curve(const std::vector<CMatrix>& W,
                                                const UlaGeometry& geometry, double angle_min_rad,
                                                double angle_max_rad, int num_points);

// SINR of user k for channel realization h:
//   |h^T w_k|^2 / (sum_{l != k} |h^T w_l|^2 + noise_variance).
double user_sinr(const std::vector<CVector>& w, const CVector& h, double noise_variance, int k);

// sum_k log2(1 + sinr_k).
double sum_rate(const std::vector<double>& sinrs);

// First-order Marcum Q, Q1(a, b), by the Poisson mixture series. Both
// arguments must be nonnegative; relative truncation error below 1e-10.
double marcum_q1(double a, double b);

// Square-law detection probability at false-alarm rate p_fa and
// post-processing SNR snr_out: Q1(sqrt(2 snr_out), sqrt(-2 ln p_fa)).
// Throws std::invalid_argument when p_fa is outside (0,1) or snr_out < 0.
double detection_probability(double snr_out, double p_fa);

enum class RadarReceiver { CoherentRx, TransmitOnly };

// Post-processing SNR from the element-level receive SNR and the probing
// power P(theta0). CoherentRx adds the receive array gain N; TransmitOnly
// uses the transmit beamforming gain alone.
double radar_output_snr(double snr_element, double probe_power, int num_antennas,
                        RadarReceiver receiver = RadarReceiver::CoherentRx);

struct OutageEstimate {
    double probability = 0.0;
    double halfwidth = 0.0;  // 1.96 sqrt(p(1-p)/M), 95% normal interval
    std::int64_t trials = 0;
    std::int64_t failures = 0;
};

// Monte-Carlo outage of user k: fraction of draws h = h_nominal + delta,
// delta ~ CN(0, error_std^2 I), whose SINR falls at or below sinr_target.
// Trials are split into fixed-size chunks with counter-derived generator
// seeds, so the result depends on the seed but not on num_threads.
OutageEstimate estimate_outage(const std::vector<CVector>& w, const CVector& h_nominal,
                               double error_std, double noise_variance, double sinr_target,
                               int k, std::int64_t num_trials, std::uint64_t seed,
                               int num_threads = 1);

struct UserMetrics {
    double nominal_sinr = 0.0;
    double rate = 0.0;  // log2(1 + nominal_sinr)
    OutageEstimate outage;
};

struct RadarMetrics {
    double probe_power = 0.0;  // P(theta0)
    double output_snr = 0.0;
    double detection_probability = 0.0;
};

struct EvaluationOptions {
    std::int64_t num_trials = 10000;  // 0 skips the outage stage entirely
    std::uint64_t seed = 1;
    int num_threads = 1;
    double radar_snr_element = 1.2589254117941673;  // 1 dB
    double false_alarm_rate = 1e-4;
    RadarReceiver receiver = RadarReceiver::CoherentRx;
};

struct EvaluationReport {
    std::vector<UserMetrics> users;
    double sum_rate = 0.0;
    RadarMetrics radar;
    std::vector<BeampatternPoint> beampattern;  // filled only when requested
};

// Scores beamformers w (one per user) against a validated scenario. The
// beampattern and probing power use the given covariances; pass an empty
// vector to fall back to the rank-one outer products of w.
EvaluationReport evaluate(const ScenarioConfig& scenario, const std::vector<CVector>& w,
                          const std::vector<CMatrix>& covariances = {},
                          const EvaluationOptions& options = {});

} // namespace isacbeam

#endif
