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
// Command-line front end. Subcommands: solve, eval, sweep, su-closed-form,
// beampattern. Angles and SNRs cross this boundary in degrees and dB; the
// library works in radians and linear scale throughout. Exit codes: 0 OK,
// 2 parse or input error, 3 infeasible, 4 numerical failure.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "isacbeam/closed_form.hpp"
#include "isacbeam/evaluation.hpp"
#include "isacbeam/model.hpp"
#include "isacbeam/program.hpp"
#include "isacbeam/scenario_io.hpp"
#include "isacbeam/solution_io.hpp"
#include "isacbeam/sweep.hpp"
#include "isacbeam/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

constexpr double kPi = 3.141592653589793238462643383279502884;

double deg_to_rad(double deg) { return deg * kPi / 180.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct GridSpec {
    double min_deg = -90.0;
    double max_deg = 90.0;
    int steps = 361;
};

// "min:max:steps" in degrees; steps is the sample count, endpoints included.
GridSpec parse_grid(const std::string& text) {
    GridSpec grid;
    std::istringstream in(text);
    char sep1 = 0;
    char sep2 = 0;
    std::string rest;
    if (!(in >> grid.min_deg >> sep1 >> grid.max_deg >> sep2 >> grid.steps) || sep1 != ':' ||
        sep2 != ':' || (in >> rest) || grid.steps < 1 || grid.min_deg > grid.max_deg)
        throw isacbeam::ParseError("beampattern grid: expected min:max:steps with min <= max "
                                   "in degrees and steps >= 1, got '" +
                                   text + "'");
    return grid;
}

// Companion file next to `out`: the stem with `suffix` appended. Falls back
// to appending to the full path when that would collide with `out` itself.
std::string sibling_path(const std::string& out, const std::string& suffix) {
    std::filesystem::path path(out);
    path.replace_extension();
    std::string result = path.string() + suffix;
    if (result == out)
        result = out + suffix;
    return result;
}

int status_exit_code(isacbeam::SolveStatus status) {
    switch (status) {
    case isacbeam::SolveStatus::Optimal: return kExitOk;
    case isacbeam::SolveStatus::Infeasible: return kExitInfeasible;
    case isacbeam::SolveStatus::NumericalFailure: return kExitNumerical;
    }
    return kExitNumerical;
}

// Beampattern evaluation prefers the solved covariances; solutions that
// carry only beamformers fall back to their rank-one outer products.
std::vector<isacbeam::CMatrix> pattern_matrices(const isacbeam::DesignResult& solution) {
    if (!solution.covariances.empty())
        return solution.covariances;
    std::vector<isacbeam::CMatrix> W;
    W.reserve(solution.beamformers.size());
    for (const auto& w : solution.beamformers)
        W.push_back(w * w.adjoint());
    return W;
}

struct CommonFlags {
    std::uint64_t seed = 1;
    double tolerance = 1e-8;
    int threads = 1;
    std::string format = "structured";
};

int cmd_solve(const std::string& scenario_path, const std::string& out_path,
              const CommonFlags& common, int max_iters, const std::string& cbf_path,
              bool verbose) {
    const auto scenario = isacbeam::load_scenario(scenario_path);
    if (!cbf_path.empty()) {
        const auto form = isacbeam::lower_to_standard_form(isacbeam::build_program(scenario));
        isacbeam::write_text_file(cbf_path, isacbeam::conic::to_cbf_text(form));
    }
    isacbeam::DesignSettings settings;
    settings.tolerance = common.tolerance;
    settings.max_iters = max_iters;
    settings.verbose = verbose;
    const auto result = isacbeam::solve_design(scenario, settings);
    isacbeam::Provenance provenance;
    provenance.seed = common.seed;
    provenance.tolerance = common.tolerance;
    isacbeam::save_solution(result, provenance, out_path);
    std::cout << isacbeam::solve_status_name(result.status) << " objective " << result.objective
              << " iterations " << result.iterations << " -> " << out_path << "\n";
    return status_exit_code(result.status);
}

int cmd_eval(const std::string& scenario_path, const std::string& solution_path,
             const std::string& out_path, const CommonFlags& common, std::int64_t trials,
             double snr_db, double pfa, const std::string& receiver_name,
             const std::string& grid_text) {
    const auto scenario = isacbeam::load_scenario(scenario_path);
    const auto solution = isacbeam::load_solution(solution_path);
    isacbeam::EvaluationOptions options;
    options.num_trials = trials;
    options.seed = common.seed;
    options.num_threads = common.threads;
    options.radar_snr_element = db_to_linear(snr_db);
    options.false_alarm_rate = pfa;
    options.receiver = receiver_name == "transmit-only" ? isacbeam::RadarReceiver::TransmitOnly
                                                        : isacbeam::RadarReceiver::CoherentRx;
    const auto W = pattern_matrices(solution);
    auto report = isacbeam::evaluate(scenario, solution.beamformers, W, options);
    std::string pattern_path;
    if (!grid_text.empty()) {
        const GridSpec grid = parse_grid(grid_text);
        report.beampattern =
            isacbeam::beampattern_curve(W, scenario.geometry, deg_to_rad(grid.min_deg),
                                        deg_to_rad(grid.max_deg), grid.steps);
        pattern_path = sibling_path(out_path, ".pattern.csv");
        isacbeam::write_text_file(pattern_path,
                                  isacbeam::beampattern_to_csv_text(report.beampattern));
    }
    isacbeam::Provenance provenance;
    provenance.seed = common.seed;
    provenance.tolerance = common.tolerance;
    provenance.num_trials = trials;
    if (common.format == "csv")
        isacbeam::write_text_file(out_path, isacbeam::report_to_csv_text(report));
    else
        isacbeam::write_text_file(out_path, isacbeam::report_to_json_text(report, provenance));
    std::cout << "sum rate " << report.sum_rate << " P(theta0) " << report.radar.probe_power
              << " P_D " << report.radar.detection_probability << " -> " << out_path;
    if (!pattern_path.empty())
        std::cout << " + " << pattern_path;
    std::cout << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path,
              const CommonFlags& common) {
    const auto spec = isacbeam::load_sweep_spec(spec_path);
    isacbeam::DesignSettings settings;
    settings.tolerance = common.tolerance;
    const auto result = isacbeam::run_sweep(spec, settings, common.threads);
    if (common.format == "csv") {
        isacbeam::write_text_file(out_path, isacbeam::sweep_to_csv_text(result));
    } else {
        isacbeam::write_text_file(out_path,
                                  isacbeam::sweep_to_json_text(result, spec, common.tolerance));
        isacbeam::write_text_file(sibling_path(out_path, ".csv"),
                                  isacbeam::sweep_to_csv_text(result));
    }
    int solved = 0;
    bool any_numerical = false;
    for (const auto& row : result.rows) {
        solved += row.status == isacbeam::SolveStatus::Optimal ? 1 : 0;
        any_numerical = any_numerical || row.status == isacbeam::SolveStatus::NumericalFailure;
    }
    std::cout << "solved " << solved << "/" << result.rows.size() << " points -> " << out_path
              << "\n";
    if (solved > 0)
        return kExitOk;
    return any_numerical ? kExitNumerical : kExitInfeasible;
}

int cmd_su_closed_form(const std::string& scenario_path, const std::string& out_path,
                       const CommonFlags& common) {
    const auto scenario = isacbeam::load_scenario(scenario_path);
    if (scenario.num_users() != 1)
        throw std::invalid_argument("su-closed-form: scenario must have exactly one user");
    // The unit-power design covers general budgets: scaling the channel and
    // the error spread by sqrt(P) leaves the outage constraint invariant,
    // and the optimal beamformer scales back by sqrt(P).
    const double scale = std::sqrt(scenario.power_budget);
    isacbeam::SuInputs inputs;
    inputs.h = scale * scenario.users[0].nominal_channel;
    inputs.a0 = isacbeam::steering_vector(scenario.geometry, scenario.target.angle_rad);
    inputs.error_std = scale * scenario.users[0].error_std;
    inputs.noise_variance = scenario.noise_variance;
    inputs.sinr_target = scenario.users[0].sinr_target;
    inputs.outage_tolerance = scenario.users[0].outage_tolerance;
    const auto solution = isacbeam::solve_single_user(inputs);
    const double probe_power =
        scenario.power_budget * std::norm(inputs.a0.conjugate().dot(solution.w));
    isacbeam::Provenance provenance;
    provenance.seed = common.seed;
    provenance.tolerance = common.tolerance;
    isacbeam::write_text_file(
        out_path, isacbeam::su_solution_to_json_text(solution, probe_power, provenance));
    const char* branch = solution.branch == isacbeam::SuBranch::Radar ? "RADAR" : "SUBSPACE";
    std::cout << branch << " P(theta0) " << probe_power << " -> " << out_path << "\n";
    return solution.status == isacbeam::SuStatus::NoRoot ? kExitInfeasible : kExitOk;
}

int cmd_beampattern(const std::string& scenario_path, const std::string& solution_path,
                    const std::string& out_path, const std::string& grid_text) {
    const auto scenario = isacbeam::load_scenario(scenario_path);
    const auto solution = isacbeam::load_solution(solution_path);
    const GridSpec grid = parse_grid(grid_text);
    const auto curve =
        isacbeam::beampattern_curve(pattern_matrices(solution), scenario.geometry,
                                    deg_to_rad(grid.min_deg), deg_to_rad(grid.max_deg),
                                    grid.steps);
    isacbeam::write_text_file(out_path, isacbeam::beampattern_to_csv_text(curve));
    std::cout << curve.size() << " samples -> " << out_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust radar-communication transmit beamformer design"};
    app.set_version_flag("--version", std::string(isacbeam::kToolVersion));
    app.require_subcommand(1);

    CommonFlags common;
    const auto add_common = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--seed", common.seed, "Base seed recorded in output provenance");
        cmd->add_option("--tolerance", common.tolerance, "Solver tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--threads", common.threads, "Worker thread count")
            ->check(CLI::PositiveNumber);
        if (with_format)
            cmd->add_option("--format", common.format, "Output format")
                ->check(CLI::IsMember({"structured", "csv"}));
    };

    std::string scenario_path;
    std::string solution_path;
    std::string out_path;
    int max_iters = 100;
    std::string cbf_path;
    std::int64_t trials = 10000;
    double snr_db = 1.0;
    double pfa = 1e-4;
    std::string receiver_name = "coherent-rx";
    std::string eval_grid;
    std::string pattern_grid = "-90:90:361";

    CLI::App* solve = app.add_subcommand("solve", "Design robust beamformers for a scenario");
    solve->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    solve->add_option("out", out_path, "Solution JSON file to write")->required();
    add_common(solve, false);
    solve->add_option("--max-iters", max_iters, "Interior-point iteration cap")
        ->check(CLI::PositiveNumber);
    solve->add_option("--dump-cbf", cbf_path, "Also write the lowered conic program (CBF v3)");
    bool verbose = false;
    solve->add_flag("--verbose", verbose, "Per-iteration solver trace on stderr");

    CLI::App* eval = app.add_subcommand("eval", "Score a solution against a scenario");
    eval->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    eval->add_option("solution", solution_path, "Solution JSON file")->required();
    eval->add_option("out", out_path, "Report file to write")->required();
    add_common(eval, true);
    eval->add_option("--trials", trials, "Monte-Carlo outage trials per user (0 skips)")
        ->check(CLI::NonNegativeNumber);
    eval->add_option("--snr-db", snr_db, "Element-level radar receive SNR in dB");
    eval->add_option("--pfa", pfa, "Radar false-alarm rate");
    eval->add_option("--receiver", receiver_name, "Radar receive model")
        ->check(CLI::IsMember({"coherent-rx", "transmit-only"}));
    eval->add_option("--beampattern", eval_grid,
                     "Also write a pattern CSV over min:max:steps degrees");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a spec file");
    sweep->add_option("spec", scenario_path, "Sweep spec JSON file")->required();
    sweep->add_option("out", out_path, "Sweep result file to write")->required();
    add_common(sweep, true);

    CLI::App* su = app.add_subcommand("su-closed-form",
                                      "Closed-form single-user design (K = 1 scenarios)");
    su->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    su->add_option("out", out_path, "Solution JSON file to write")->required();
    add_common(su, false);

    CLI::App* pattern = app.add_subcommand("beampattern", "Emit a beampattern CSV");
    pattern->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    pattern->add_option("solution", solution_path, "Solution JSON file")->required();
    pattern->add_option("out", out_path, "CSV file to write")->required();
    pattern->add_option("--grid", pattern_grid, "Angle grid min:max:steps in degrees");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (app.got_subcommand(solve))
            return cmd_solve(scenario_path, out_path, common, max_iters, cbf_path, verbose);
        if (app.got_subcommand(eval))
            return cmd_eval(scenario_path, solution_path, out_path, common, trials, snr_db, pfa,
                            receiver_name, eval_grid);
        if (app.got_subcommand(sweep))
            return cmd_sweep(scenario_path, out_path, common);
        if (app.got_subcommand(su))
            return cmd_su_closed_form(scenario_path, out_path, common);
        if (app.got_subcommand(pattern))
            return cmd_beampattern(scenario_path, solution_path, out_path, pattern_grid);
    } catch (const isacbeam::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitParse;
}
