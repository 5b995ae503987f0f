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

#include "isacbeam/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "isacbeam/model.hpp"

namespace isacbeam {

namespace {

// Fixed Monte-Carlo chunk size: the trial-to-generator mapping must not
// depend on the thread count.
constexpr std::int64_t kChunkTrials = 4096;

void check_beamformers(const std::vector<CVector>& w, Eigen::Index n, int k) {
    if (w.empty() || k < 0 || k >= static_cast<int>(w.size()))
        throw std::invalid_argument("user index out of range");
    for (const CVector& wl : w)
        if (wl.size() != n)
            throw std::invalid_argument("beamformer length does not match channel length");
}

} // namespace

double beampattern_power(const std::vector<CMatrix>& W, const UlaGeometry& geometry,
                         double angle_rad) {
    const CVector a_conj = steering_vector(geometry, angle_rad).conjugate();
    Complex acc = 0.0;
    for (const CMatrix& Wk : W) {
        if (Wk.rows() != geometry.num_antennas || Wk.cols() != geometry.num_antennas)
            throw std::invalid_argument("covariance order does not match the array size");
        acc += a_conj.dot(Wk * a_conj);
    }
    double power = acc.real();
    if (power < 0.0 && power > -1e-9)
        power = 0.0;
    return power;
}

std::vector<BeampatternPoint> beampattern_curve(const std::vector<CMatrix>& W,
                                                const UlaGeometry& geometry, double angle_min_rad,
                                                double angle_max_rad, int num_points) {
    if (num_points < 1)
        throw std::invalid_argument("num_points: must be >= 1");
    std::vector<BeampatternPoint> samples(num_points);
    const double step =
        num_points > 1 ? (angle_max_rad - angle_min_rad) / (num_points - 1) : 0.0;
    for (int i = 0; i < num_points; ++i) {
        const double angle = angle_min_rad + step * i;
        samples[i] = {angle, beampattern_power(W, geometry, angle)};
    }
    return samples;
}

double user_sinr(const std::vector<CVector>& w, const CVector& h, double noise_variance, int k) {
    check_beamformers(w, h.size(), k);
    const CVector h_conj = h.conjugate();
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) {
        const double power = std::norm(h_conj.dot(w[l]));
        if (static_cast<int>(l) == k)
            signal = power;
        else
            interference += power;
    }
    return signal / (interference + noise_variance);
}

double sum_rate(const std::vector<double>& sinrs) {
    double total = 0.0;
    for (double s : sinrs)
        total += std::log2(1.0 + std::max(0.0, s));
    return total;
}

double marcum_q1(double a, double b) {
    if (a < 0.0 || b < 0.0)
        throw std::invalid_argument("marcum_q1: arguments must be nonnegative");
    const double x = 0.5 * a * a;
    const double y = 0.5 * b * b;
    // Poisson mixture: Q1(a,b) = sum_k Pois(x){k} * Pr(Pois(y) <= k).
    // Terms are formed in log space; the truncated tail is bounded by the
    // remaining Pois(x) mass, which keeps the error under 1e-14.
    double q = 0.0;
    double cum_x = 0.0;
    double cdf_y = 0.0;
    const double log_x = x > 0.0 ? std::log(x) : 0.0;
    const double log_y = y > 0.0 ? std::log(y) : 0.0;
    for (std::int64_t k = 0; k < 1000000; ++k) {
        const double log_fact = std::lgamma(static_cast<double>(k) + 1.0);
        const double px = x > 0.0 ? std::exp(k * log_x - x - log_fact) : (k == 0 ? 1.0 : 0.0);
        const double py = y > 0.0 ? std::exp(k * log_y - y - log_fact) : (k == 0 ? 1.0 : 0.0);
        cdf_y = std::min(1.0, cdf_y + py);
        q += px * cdf_y;
        cum_x += px;
        if (1.0 - cum_x < 1e-14 && static_cast<double>(k) > x)
            break;
    }
    return std::min(1.0, q);
}

double detection_probability(double snr_out, double p_fa) {
    if (!(p_fa > 0.0) || !(p_fa < 1.0))
        throw std::invalid_argument("p_fa: must lie in (0, 1)");
    if (snr_out < 0.0)
        throw std::invalid_argument("snr_out: must be nonnegative");
    return marcum_q1(std::sqrt(2.0 * snr_out), std::sqrt(-2.0 * std::log(p_fa)));
}

double radar_output_snr(double snr_element, double probe_power, int num_antennas,
                        RadarReceiver receiver) {
    if (snr_element <= 0.0)
        throw std::invalid_argument("snr_element: must be positive");
    if (probe_power < 0.0)
        throw std::invalid_argument("probe_power: must be nonnegative");
    const double rx_gain =
        receiver == RadarReceiver::CoherentRx ? static_cast<double>(num_antennas) : 1.0;
    return snr_element * rx_gain * probe_power;
}

OutageEstimate estimate_outage(const std::vector<CVector>& w, const CVector& h_nominal,
                               double error_std, double noise_variance, double sinr_target,
                               int k, std::int64_t num_trials, std::uint64_t seed,
                               int num_threads) {
    check_beamformers(w, h_nominal.size(), k);
    if (num_trials < 1)
        throw std::invalid_argument("num_trials: must be >= 1");
    const int n = static_cast<int>(h_nominal.size());
    const std::int64_t num_chunks = (num_trials + kChunkTrials - 1) / kChunkTrials;

    auto run_chunk = [&](std::int64_t chunk) {
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(chunk)));
        const std::int64_t begin = chunk * kChunkTrials;
        const std::int64_t count = std::min(kChunkTrials, num_trials - begin);
        std::int64_t failures = 0;
        for (std::int64_t t = 0; t < count; ++t) {
            const CVector h = h_nominal + sample_channel_error(n, error_std, rng);
            if (user_sinr(w, h, noise_variance, k) <= sinr_target)
                ++failures;
        }
        return failures;
    };

    std::int64_t failures = 0;
    const int workers = std::max(1, std::min<int>(num_threads, static_cast<int>(num_chunks)));
    if (workers == 1) {
        for (std::int64_t chunk = 0; chunk < num_chunks; ++chunk)
            failures += run_chunk(chunk);
    } else {
        std::atomic<std::int64_t> next{0};
        std::atomic<std::int64_t> total{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                std::int64_t local = 0;
                for (std::int64_t chunk = next.fetch_add(1); chunk < num_chunks;
                     chunk = next.fetch_add(1))
                    local += run_chunk(chunk);
                total.fetch_add(local);
            });
        for (std::thread& worker : pool)
            worker.join();
        failures = total.load();
    }

    OutageEstimate estimate;
    estimate.trials = num_trials;
    estimate.failures = failures;
    estimate.probability = static_cast<double>(failures) / static_cast<double>(num_trials);
    estimate.halfwidth = 1.96 * std::sqrt(estimate.probability * (1.0 - estimate.probability) /
                                          static_cast<double>(num_trials));
    return estimate;
}

EvaluationReport evaluate(const ScenarioConfig& scenario, const std::vector<CVector>& w,
                          const std::vector<CMatrix>& covariances,
                          const EvaluationOptions& options) {
    validate_scenario(scenario);
    if (static_cast<int>(w.size()) != scenario.num_users())
        throw std::invalid_argument("beamformer count does not match the scenario user count");
    for (const CVector& wk : w)
        if (wk.size() != scenario.num_antennas())
            throw std::invalid_argument("beamformer length does not match the array size");

    std::vector<CMatrix> covs = covariances;
    if (covs.empty()) {
        covs.reserve(w.size());
        for (const CVector& wk : w)
            covs.push_back(wk * wk.adjoint());
    } else if (covs.size() != w.size()) {
        throw std::invalid_argument("covariance count does not match the beamformer count");
    }

    EvaluationReport report;
    report.users.resize(scenario.num_users());
    std::vector<double> sinrs(scenario.num_users());
    for (int k = 0; k < scenario.num_users(); ++k) {
        const UserChannel& user = scenario.users[k];
        UserMetrics& metrics = report.users[k];
        metrics.nominal_sinr = user_sinr(w, user.nominal_channel, scenario.noise_variance, k);
        metrics.rate = std::log2(1.0 + metrics.nominal_sinr);
        if (options.num_trials > 0)
            metrics.outage = estimate_outage(
                w, user.nominal_channel, user.error_std, scenario.noise_variance,
                user.sinr_target, k, options.num_trials,
                stream_seed(options.seed, static_cast<std::uint64_t>(k)),
                options.num_threads);
        sinrs[k] = metrics.nominal_sinr;
    }
    report.sum_rate = sum_rate(sinrs);
    report.radar.probe_power =
        beampattern_power(covs, scenario.geometry, scenario.target.angle_rad);
    report.radar.output_snr =
        radar_output_snr(options.radar_snr_element, report.radar.probe_power,
                         scenario.num_antennas(), options.receiver);
    report.radar.detection_probability =
        detection_probability(report.radar.output_snr, options.false_alarm_rate);
    return report;
}

} // namespace isacbeam
