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

#include "isacbeam/solution_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "json.hpp"

#include "isacbeam/scenario_io.hpp"
#include "isacbeam/version.hpp"

namespace isacbeam {

namespace {

using nlohmann::json;

json complex_to_json(Complex value) {
    return json::array({value.real(), value.imag()});
}

json cvector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(complex_to_json(v[i]));
    return out;
}

json cmatrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex complex_from_json(const json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
        throw ParseError(path + ": expected a [re, im] pair");
    return {value[0].get<double>(), value[1].get<double>()};
}

CVector cvector_from_json(const json& value, const std::string& path) {
    if (!value.is_array())
        throw ParseError(path + ": expected an array");
    CVector v(static_cast<Eigen::Index>(value.size()));
    for (std::size_t i = 0; i < value.size(); ++i)
        v[static_cast<Eigen::Index>(i)] =
            complex_from_json(value[i], path + "[" + std::to_string(i) + "]");
    return v;
}

CMatrix cmatrix_from_json(const json& value, const std::string& path) {
    if (!value.is_array() || value.empty())
        throw ParseError(path + ": expected a nonempty array of rows");
    const std::size_t rows = value.size();
    const std::size_t cols = value[0].is_array() ? value[0].size() : 0;
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = value[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(path + "[" + std::to_string(r) + "]: ragged matrix row");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(
                row[c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

json provenance_to_json(const Provenance& provenance) {
    return {
        {"seed", provenance.seed},
        {"tolerance", provenance.tolerance},
        {"trials", provenance.num_trials},
        {"tool", kToolVersion},
    };
}

std::string csv_number(double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

} // namespace

std::string solve_status_name(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "OPTIMAL";
    case SolveStatus::Infeasible: return "INFEASIBLE";
    case SolveStatus::NumericalFailure: return "NUMERICAL_FAILURE";
    }
    return "NUMERICAL_FAILURE";
}

std::string solution_to_json_text(const DesignResult& result, const Provenance& provenance) {
    json root;
    root["schema"] = kSchemaVersion;
    root["kind"] = "solution";
    root["status"] = solve_status_name(result.status);
    root["objective"] = result.objective;
    json covs = json::array();
    for (const CMatrix& W : result.covariances)
        covs.push_back(cmatrix_to_json(W));
    root["covariances"] = std::move(covs);
    json beams = json::array();
    for (const CVector& w : result.beamformers)
        beams.push_back(cvector_to_json(w));
    root["beamformers"] = std::move(beams);
    root["mu"] = result.mu;
    root["nu"] = result.nu;
    json ratios = json::array();
    json high = json::array();
    for (const RankDiagnostic& diag : result.rank) {
        ratios.push_back(diag.ratio);
        high.push_back(diag.high_rank);
    }
    root["rank_ratios"] = std::move(ratios);
    root["high_rank"] = std::move(high);
    root["solver"] = {
        {"iterations", result.iterations},
        {"primal_residual", result.primal_residual},
        {"dual_residual", result.dual_residual},
        {"duality_gap", result.duality_gap},
        {"message", result.message},
    };
    root["provenance"] = provenance_to_json(provenance);
    return root.dump(2) + "\n";
}

DesignResult solution_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object() || root.value("kind", "") != "solution")
        throw ParseError("kind: expected a solution document");
    if (root.value("schema", -1) != kSchemaVersion)
        throw ParseError("schema: unsupported version");
    DesignResult result;
    const std::string status = root.value("status", "");
    if (status == "OPTIMAL")
        result.status = SolveStatus::Optimal;
    else if (status == "INFEASIBLE")
        result.status = SolveStatus::Infeasible;
    else if (status == "NUMERICAL_FAILURE")
        result.status = SolveStatus::NumericalFailure;
    else
        throw ParseError("status: unknown value '" + status + "'");
    result.objective = root.value("objective", 0.0);
    if (const auto it = root.find("covariances"); it != root.end())
        for (std::size_t k = 0; k < it->size(); ++k)
            result.covariances.push_back(
                cmatrix_from_json((*it)[k], "covariances[" + std::to_string(k) + "]"));
    if (const auto it = root.find("beamformers"); it != root.end())
        for (std::size_t k = 0; k < it->size(); ++k)
            result.beamformers.push_back(
                cvector_from_json((*it)[k], "beamformers[" + std::to_string(k) + "]"));
    result.mu = root.value("mu", std::vector<double>{});
    result.nu = root.value("nu", std::vector<double>{});
    const std::vector<double> ratios = root.value("rank_ratios", std::vector<double>{});
    const std::vector<bool> high = root.value("high_rank", std::vector<bool>{});
    for (std::size_t k = 0; k < ratios.size(); ++k)
        result.rank.push_back({ratios[k], k < high.size() && high[k]});
    if (const auto it = root.find("solver"); it != root.end() && it->is_object()) {
        result.iterations = it->value("iterations", 0);
        result.primal_residual = it->value("primal_residual", 0.0);
        result.dual_residual = it->value("dual_residual", 0.0);
        result.duality_gap = it->value("duality_gap", 0.0);
        result.message = it->value("message", "");
    }
    return result;
}

DesignResult load_solution(const std::string& path) {
    return solution_from_json_text(read_text_file(path));
}

void save_solution(const DesignResult& result, const Provenance& provenance,
                   const std::string& path) {
    write_text_file(path, solution_to_json_text(result, provenance));
}

std::string report_to_json_text(const EvaluationReport& report, const Provenance& provenance) {
    json root;
    root["schema"] = kSchemaVersion;
    root["kind"] = "report";
    json users = json::array();
    for (const UserMetrics& user : report.users)
        users.push_back({
            {"nominal_sinr", user.nominal_sinr},
            {"rate", user.rate},
            {"outage",
             {
                 {"probability", user.outage.probability},
                 {"halfwidth", user.outage.halfwidth},
                 {"trials", user.outage.trials},
                 {"failures", user.outage.failures},
             }},
        });
    root["users"] = std::move(users);
    root["sum_rate"] = report.sum_rate;
    root["radar"] = {
        {"probe_power", report.radar.probe_power},
        {"output_snr", report.radar.output_snr},
        {"detection_probability", report.radar.detection_probability},
    };
    if (!report.beampattern.empty()) {
        json pattern = json::array();
        for (const BeampatternPoint& point : report.beampattern)
            pattern.push_back(json::array(
                {point.angle_rad * 180.0 / std::numbers::pi, point.power}));
        root["beampattern"] = std::move(pattern);
    }
    root["provenance"] = provenance_to_json(provenance);
    return root.dump(2) + "\n";
}

std::string report_to_csv_text(const EvaluationReport& report) {
    std::ostringstream os;
    os << "user,nominal_sinr,rate,outage_probability,outage_halfwidth,probe_power,output_snr,"
          "detection_probability\n";
    for (std::size_t k = 0; k < report.users.size(); ++k) {
        const UserMetrics& user = report.users[k];
        os << k << ',' << csv_number(user.nominal_sinr) << ',' << csv_number(user.rate) << ','
           << csv_number(user.outage.probability) << ',' << csv_number(user.outage.halfwidth)
           << ',' << csv_number(report.radar.probe_power) << ','
           << csv_number(report.radar.output_snr) << ','
           << csv_number(report.radar.detection_probability) << '\n';
    }
    return os.str();
}

std::string su_solution_to_json_text(const SuSolution& solution, double probe_power,
                                     const Provenance& provenance) {
    json root;
    root["schema"] = kSchemaVersion;
    root["kind"] = "su-solution";
    switch (solution.status) {
    case SuStatus::Ok: root["status"] = "OK"; break;
    case SuStatus::Saturated: root["status"] = "SATURATED"; break;
    case SuStatus::NoRoot: root["status"] = "NO_ROOT"; break;
    }
    root["branch"] = solution.branch == SuBranch::Radar ? "RADAR" : "SUBSPACE";
    root["lambda"] = solution.lambda;
    root["alignment"] = solution.alignment;
    root["rho"] = solution.rho;
    root["degenerate"] = solution.degenerate;
    root["w"] = cvector_to_json(solution.w);
    root["probe_power"] = probe_power;
    root["provenance"] = provenance_to_json(provenance);
    return root.dump(2) + "\n";
}

std::string beampattern_to_csv_text(const std::vector<BeampatternPoint>& samples) {
    std::ostringstream os;
    os << "theta_deg,power\n";
    for (const BeampatternPoint& point : samples)
        os << csv_number(point.angle_rad * 180.0 / std::numbers::pi) << ','
           << csv_number(point.power) << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    out << text;
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace isacbeam
