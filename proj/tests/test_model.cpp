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
#include <set>
#include <stdexcept>
#include <string>

#include "isacbeam/model.hpp"

using namespace isacbeam;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

ScenarioConfig valid_scenario() {
    ScenarioConfig sc;
    sc.geometry = {4, 0.5};
    sc.target.angle_rad = 0.2;
    sc.noise_variance = 1.0;
    sc.power_budget = 2.0;
    UserChannel u;
    u.nominal_channel = CVector::Constant(4, Complex(1.0, -0.5));
    u.error_std = 0.1;
    u.sinr_target = 1.5;
    u.outage_tolerance = 0.05;
    sc.users = {u, u};
    return sc;
}

std::string thrown_message(const ScenarioConfig& sc) {
    try {
        validate_scenario(sc);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("validate_scenario accepts a well-formed scenario") {
    CHECK_NOTHROW(validate_scenario(valid_scenario()));
}

TEST_CASE("validate_scenario rejects each broken field with its path") {
    auto sc = valid_scenario();
    sc.geometry.num_antennas = 0;
    CHECK(thrown_message(sc).find("geometry.num_antennas") != std::string::npos);

    sc = valid_scenario();
    sc.geometry.spacing_over_wavelength = 0.0;
    CHECK(thrown_message(sc).find("geometry.spacing_over_wavelength") != std::string::npos);

    sc = valid_scenario();
    sc.target.angle_rad = kPi / 2.0;
    CHECK(thrown_message(sc).find("target.angle_rad") != std::string::npos);

    sc = valid_scenario();
    sc.noise_variance = 0.0;
    CHECK(thrown_message(sc).find("noise_variance") != std::string::npos);

    sc = valid_scenario();
    sc.power_budget = -1.0;
    CHECK(thrown_message(sc).find("power_budget") != std::string::npos);

    sc = valid_scenario();
    sc.users.clear();
    CHECK(thrown_message(sc).find("users") != std::string::npos);

    sc = valid_scenario();
    sc.users[1].nominal_channel = CVector::Zero(3);
    CHECK(thrown_message(sc).find("users[1].nominal_channel") != std::string::npos);

    sc = valid_scenario();
    sc.users[0].error_std = -0.1;
    CHECK(thrown_message(sc).find("users[0].error_std") != std::string::npos);

    sc = valid_scenario();
    sc.users[0].sinr_target = 0.0;
    CHECK(thrown_message(sc).find("users[0].sinr_target") != std::string::npos);

    sc = valid_scenario();
    sc.users[1].outage_tolerance = 1.0;
    CHECK(thrown_message(sc).find("users[1].outage_tolerance") != std::string::npos);

    sc = valid_scenario();
    sc.users[0].nominal_channel[2] = Complex(std::nan(""), 0.0);
    CHECK(thrown_message(sc).find("users[0].nominal_channel") != std::string::npos);
}

TEST_CASE("steering vector phases follow the array geometry") {
    const UlaGeometry geom{5, 0.5};
    const double theta = 0.3;
    const CVector a = steering_vector(geom, theta);
    REQUIRE(a.size() == 5);
    for (int nidx = 0; nidx < 5; ++nidx) {
        const double phase = 2.0 * kPi * 0.5 * static_cast<double>(nidx) * std::sin(theta);
        CHECK(std::abs(a[nidx] - std::polar(1.0, phase)) < 1e-14);
    }
    // ||a||^2 = N for any angle; boresight is the all-ones vector.
    CHECK(a.squaredNorm() == doctest::Approx(5.0).epsilon(1e-14));
    const CVector bore = steering_vector(geom, 0.0);
    CHECK((bore - CVector::Ones(5)).norm() < 1e-15);
}

TEST_CASE("steering vector spacing scales the phase gradient") {
    const double theta = -0.4;
    const CVector half = steering_vector({3, 0.5}, theta);
    const CVector quarter = steering_vector({3, 0.25}, theta);
    // Element 2 at quarter spacing equals element 1 at half spacing.
    CHECK(std::abs(quarter[2] - half[1]) < 1e-14);
}

TEST_CASE("channel sampler is deterministic and has CN(0,1) moments") {
    Rng rng1(42);
    Rng rng2(42);
    const CMatrix draws1 = sample_nominal_channels(2, 4, rng1);
    const CMatrix draws2 = sample_nominal_channels(2, 4, rng2);
    REQUIRE(draws1.rows() == 2);
    REQUIRE(draws1.cols() == 4);
    CHECK((draws1 - draws2).norm() == 0.0);

    // Moment check over many scalar draws.
    Rng rng(7);
    const int trials = 20000;
    double mean_re = 0.0, var = 0.0;
    for (int i = 0; i < trials; ++i) {
        const CVector e = sample_channel_error(3, 1.0, rng);
        for (int j = 0; j < 3; ++j) {
            mean_re += e[j].real();
            var += std::norm(e[j]);
        }
    }
    mean_re /= 3.0 * trials;
    var /= 3.0 * trials;
    CHECK(std::abs(mean_re) < 0.02);
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));

    // Scaled error has variance sigma^2 per complex entry.
    Rng rng3(9);
    double var_scaled = 0.0;
    for (int i = 0; i < trials; ++i)
        var_scaled += std::norm(sample_channel_error(1, 0.25, rng3)[0]);
    var_scaled /= trials;
    CHECK(var_scaled == doctest::Approx(0.0625).epsilon(0.05));
}

TEST_CASE("stream seeds are distinct and stable") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 100; ++s)
        seen.insert(stream_seed(12345, s));
    CHECK(seen.size() == 100);
    CHECK(stream_seed(12345, 7) == stream_seed(12345, 7));
    CHECK(stream_seed(12345, 7) != stream_seed(12346, 7));
}
