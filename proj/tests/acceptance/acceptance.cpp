// SPDX-License-Identifier: Apache-2.0
//
// coopnet: analytical model and simulator for cooperative small-cell
// vehicular networks
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

// Acceptance runner: one invocation per criterion, one PASS/FAIL line each.
//
//   coopnet_acceptance <id> --cli <coopnet-cli> --work <dir>
//
// ids: 1 2 3 4 5 6 7a 7b 7c 7d 7e 7f 7g 8 9

#include "core/config.hpp"
#include "core/cooperation.hpp"
#include "core/coverage.hpp"
#include "core/experiment.hpp"
#include "core/montecarlo.hpp"
#include "core/validate.hpp"

#include <CLI11.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace coopnet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error("no column " + name);
        return static_cast<std::size_t>(it - header.begin());
    }
    std::vector<double> values(const std::string& name) const {
        const std::size_t c = column(name);
        std::vector<double> out;
        for (const auto& r : rows) out.push_back(r[c]);
        return out;
    }
};

Csv read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    Csv csv;
    std::string line;
    std::getline(in, line);
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) csv.header.push_back(cell);
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        std::vector<double> row;
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Csv run_preset(const std::string& preset, const fs::path& work, const std::string& suffix = "") {
    ExperimentConfig c;
    c.set("out", (work / (preset + suffix)).string());
    apply_preset(c, preset);
    run_experiment(c);
    return read_csv(work / (preset + suffix) / (preset + ".csv"));
}

int run_command(const std::string& cmd) {
    const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

const double kLambda = intensity_for_radius(50.0);
const double kRhos[] = {1.01, 1.5, 2.0, 3.0, 5.0};
const double kPartitionRhos[] = {1.2, 2.0, 3.0};

Outcome criterion1(double lambda = kLambda) {
    double worst = 0.0;
    for (double rho : kRhos) {
        for (int i = 1; i <= 6; ++i) {
            const double expected = std::pow(1.0 - 1.0 / (rho * rho), i - 1);
            worst = std::max(worst, std::abs(coop_prob_member(i, rho, lambda) - expected));
        }
    }
    return {worst <= 1e-6, "max |member - (1 - rho^-2)^(i-1)| = " + fmt(worst) + " (bound 1e-6)"};
}

Outcome criterion2() {
    double worst_law = 0.0;
    std::string sums;
    bool sums_ok = true;
    for (double rho : kPartitionRhos) {
        const double p = 1.0 / (rho * rho);
        double sum = 0.0;
        for (int k = 1; k <= 32; ++k) {
            const double v = coop_prob_exactly(k, rho, kLambda);
            sum += v;
            worst_law = std::max(worst_law, std::abs(v - p * std::pow(1.0 - p, k - 1)));
        }
        const bool ok = std::abs(sum - 1.0) <= 1e-6;
        sums_ok = sums_ok && ok;
        sums += " rho=" + fmt(rho) + ": 1-sum=" + fmt(1.0 - sum) + (ok ? "" : " (outside 1e-6)");
    }
    const bool law_ok = worst_law <= 1e-6;
    return {sums_ok && law_ok, "geometric law max dev " + fmt(worst_law) + ";" + sums};
}

Outcome criterion3() {
    double worst = 0.0;
    for (double scale : {0.01, 1.0, 100.0}) {
        for (double rho : kRhos) {
            for (int i = 1; i <= 6; ++i) {
                worst = std::max(worst, std::abs(coop_prob_member(i, rho, kLambda * scale) -
                                                 coop_prob_member(i, rho, kLambda)));
            }
        }
        for (double rho : kPartitionRhos) {
            for (int k = 1; k <= 32; ++k) {
                worst = std::max(worst, std::abs(coop_prob_exactly(k, rho, kLambda * scale) -
                                                 coop_prob_exactly(k, rho, kLambda)));
            }
        }
    }
    return {worst <= 1e-8, "max change under lambda x {0.01, 1, 100} = " + fmt(worst) + " (bound 1e-8)"};
}

Outcome criterion4() {
    NetworkParams net;
    net.n_t = 1;
    net.n_r = 1;
    const double oracle = 1.0 / (1.0 + std::numbers::pi / 4.0);
    const double analytic = coverage_probability(1, net, DistanceLaw::nearest(1));
    CoverageSimSpec spec;
    spec.k = 1;
    spec.law = DistanceLaw::nearest(1);
    spec.n_trials = 1000000;
    spec.seed = 1;
    const auto sim = simulate_coverage(net, spec);
    const bool ok = std::abs(analytic - oracle) <= 1e-3 && sim.contains(oracle);
    return {ok, "analytic " + fmt(analytic) + " vs " + fmt(oracle) + "; simulated " + fmt(sim.mean) + " 99% CI [" +
                    fmt(sim.ci_low()) + ", " + fmt(sim.ci_high()) + "]"};
}

Outcome criterion5() {
    NetworkParams net;
    bool ok = true;
    std::string detail;
    for (int k : {1, 3}) {
        for (double db : {-5.0, 0.0, 5.0}) {
            net.epsilon = db_to_linear(db);
            CoverageSimSpec spec;
            spec.k = k;
            spec.law = DistanceLaw::default_for(k);
            spec.n_trials = 200000;
            spec.seed = 1;
            const double analytic = coverage_probability(k, net, spec.law);
            const auto sim = simulate_coverage(net, spec);
            const bool in = sim.contains(analytic);
            ok = ok && in;
            detail += " k=" + std::to_string(k) + "/" + fmt(db) + "dB: " + fmt(analytic) + " vs " + fmt(sim.mean) +
                      "+-" + fmt(sim.z() * sim.std_error) + (in ? "" : " OUTSIDE");
        }
    }
    return {ok, detail.substr(1)};
}

Outcome criterion6() {
    double worst = 0.0;
    QuadratureSpec fine;
    fine.relative_tolerance = 1e-12;
    fine.absolute_tolerance = 1e-15;
    const std::pair<int, int> antennas[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {4, 1}, {1, 4}};
    for (const auto& [nt, nr] : antennas) {
        for (int k = 1; nt * nr * k <= 4; ++k) {
            for (double db : {-5.0, 0.0, 5.0}) {
                NetworkParams net;
                net.n_t = nt;
                net.n_r = nr;
                net.epsilon = db_to_linear(db);
                const double d = 50.0;
                const auto st = recurrence_state(d, k, net);
                const double s0 = laplace_evaluation_point(d, net);
                auto laplace = [&](double s) { return laplace_interference(s, d, net, fine); };
                worst = std::max(worst, std::abs(st.x[0] - laplace(s0)));
                double factorial = 1.0;
                for (int n = 1; n < static_cast<int>(st.x.size()); ++n) {
                    factorial *= n;
                    const double fd = std::pow(-s0, n) / factorial * richardson_derivative(laplace, s0, n, 0.2 * s0);
                    worst = std::max(worst, std::abs(st.x[static_cast<std::size_t>(n)] - fd));
                }
            }
        }
    }
    return {worst <= 1e-4, "max |x_n - (-s)^n L^(n)(s)/n!| = " + fmt(worst) + " (bound 1e-4)"};
}

bool nonincreasing(const std::vector<double>& v, double slack = 1e-12) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] + slack) return false;
    return true;
}

bool nondecreasing(const std::vector<double>& v, double slack = 1e-12) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1] - slack) return false;
    return true;
}

bool unimodal(const std::vector<double>& v, double slack = 1e-12) {
    bool falling = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1] - slack) falling = true;
        else if (falling && v[i] > v[i - 1] + slack) return false;
    }
    return true;
}

Outcome criterion7a(const fs::path& work) {
    const Csv csv = run_preset("fig2", work);
    bool in_rho = true;
    bool in_i = true;
    for (int i = 2; i <= 5; ++i) in_rho = in_rho && nondecreasing(csv.values("member_order=" + std::to_string(i)));
    for (const auto& row : csv.rows) {
        if (row[0] <= 1.0) continue;
        for (std::size_t c = 2; c < row.size(); ++c) in_i = in_i && row[c] < row[c - 1];
    }
    return {in_rho && in_i, std::string("increasing in rho: ") + (in_rho ? "yes" : "no") +
                                "; decreasing in i for rho > 1: " + (in_i ? "yes" : "no")};
}

Outcome criterion7b(const fs::path& work) {
    const Csv csv = run_preset("fig3", work);
    const auto p1 = csv.values("k=1");
    bool p1_dec = true;
    for (std::size_t i = 1; i < p1.size(); ++i) p1_dec = p1_dec && p1[i] < p1[i - 1];
    bool uni = true;
    std::string peaks;
    for (int k = 2; k <= 5; ++k) {
        const auto v = csv.values("k=" + std::to_string(k));
        uni = uni && unimodal(v);
        const auto peak = std::max_element(v.begin(), v.end()) - v.begin();
        peaks += " k=" + std::to_string(k) + " peak at rho=" + fmt(csv.rows[static_cast<std::size_t>(peak)][0]);
    }
    return {p1_dec && uni, std::string("P_1 decreasing: ") + (p1_dec ? "yes" : "no") +
                               "; P_k unimodal: " + (uni ? "yes" : "no") + ";" + peaks};
}

Outcome criterion7c(const fs::path& work) {
    const Csv csv = run_preset("fig4", work);
    bool dec = true;
    for (std::size_t c = 1; c < csv.header.size(); ++c) dec = dec && nonincreasing(csv.values(csv.header[c]));
    bool eta_inc = true;
    for (const auto& row : csv.rows) {
        if (row[0] < 0.0) continue;
        for (std::size_t c = 2; c < row.size(); ++c) eta_inc = eta_inc && row[c] > row[c - 1];
    }
    return {dec && eta_inc, std::string("decreasing in epsilon: ") + (dec ? "yes" : "no") +
                                "; increasing in eta at epsilon >= 0 dB: " + (eta_inc ? "yes" : "no")};
}

Outcome criterion7d(const fs::path& work) {
    const Csv csv = run_preset("fig7", work);
    for (const auto& row : csv.rows) {
        if (row[0] != -1.0) continue;
        const double k1 = row[csv.column("k=1")];
        const double k3 = row[csv.column("k=3")];
        return {k3 > k1, "at -1 dB: k=3 " + fmt(k3) + ", k=1 " + fmt(k1)};
    }
    return {false, "no -1 dB row"};
}

Outcome criterion7e(const fs::path& work) {
    const Csv csv = run_preset("fig8", work);
    const Csv se = read_csv(work / "fig8" / "fig8_std_error.csv");
    bool inc = true;
    for (const char* c : {"rho=1", "rho=1.2", "rho=1.5"}) {
        const auto v = csv.values(c);
        for (std::size_t i = 1; i < v.size(); ++i) inc = inc && v[i] > v[i - 1];
    }
    const double z = 2.5758293035489;
    bool coincide = true;
    double worst = 0.0;
    const auto a = csv.values("rho=1");
    const auto b = csv.values("single_cell");
    const auto sa = se.values("rho=1");
    const auto sb = se.values("single_cell");
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double half = z * std::hypot(sa[i], sb[i]);
        worst = std::max(worst, std::abs(a[i] - b[i]) / half);
        coincide = coincide && std::abs(a[i] - b[i]) <= half;
    }
    return {inc && coincide, std::string("increasing in speed: ") + (inc ? "yes" : "no") +
                                 "; rho=1 vs single cell, max |diff|/CI half-width = " + fmt(worst)};
}

Outcome criterion7f(const fs::path& work) {
    const Csv csv = run_preset("fig9", work);
    bool dec = true;
    for (const char* c : {"rho=1", "rho=1.2", "rho=1.5"}) {
        const auto v = csv.values(c);
        for (std::size_t i = 1; i < v.size(); ++i) dec = dec && v[i] < v[i - 1];
    }
    bool inc = true;
    for (const auto& row : csv.rows) inc = inc && row[1] < row[2] && row[2] < row[3];
    return {dec && inc, std::string("decreasing in radius: ") + (dec ? "yes" : "no") +
                            "; increasing in rho: " + (inc ? "yes" : "no")};
}

Outcome criterion7g(const fs::path& work) {
    const Csv csv = run_preset("fig11", work);
    bool interior = true;
    bool band = true;
    std::vector<double> minima;
    std::string detail;
    for (const char* c : {"rho=1", "rho=1.2", "rho=1.5"}) {
        const auto v = csv.values(c);
        const auto at = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
        const bool inside = at > 0 && at + 1 < v.size();
        interior = interior && inside;
        band = band && v[at] >= 5e-5 && v[at] <= 5e-3;
        minima.push_back(v[at]);
        detail += std::string(" ") + c + ": min " + fmt(v[at]) + " at R=" + fmt(csv.rows[at][0]) +
                  (inside ? "" : " (boundary)");
    }
    const bool ordered = minima[1] < minima[0] && minima[2] < minima[1];
    detail += std::string("; interior: ") + (interior ? "yes" : "no") + ", decreasing in rho: " +
              (ordered ? "yes" : "no") + ", within [5e-5, 5e-3]: " + (band ? "yes" : "no");
    return {interior && ordered && band, detail.substr(1)};
}

Outcome criterion8(const std::string& cli, const fs::path& work) {
    // Every preset twice with one worker and once with three. Mobility presets
    // use fewer replications to bound the runtime; the seeding scheme is the same.
    bool ok = true;
    std::string detail;
    for (const std::string& preset : preset_names()) {
        if (preset == "custom") continue;
        std::string extra;
        if (preset == "fig8" || preset == "fig10" || preset == "fig11") extra = " --set replications=8";
        std::vector<std::string> texts;
        for (const char* run : {"w1a", "w1b", "w3"}) {
            const fs::path out = work / "determinism" / (preset + "_" + run);
            fs::remove_all(out);
            const std::string workers = std::string(run) == "w3" ? "3" : "1";
            const int rc = run_command(cli + " figure " + preset + " --seed 7 --workers " + workers + " --out " +
                                       out.string() + extra);
            if (rc != 0) {
                ok = false;
                detail += " " + preset + ": exit " + std::to_string(rc);
                break;
            }
            std::string all;
            for (const auto& entry : fs::directory_iterator(out)) {
                if (entry.path().extension() == ".csv") all += entry.path().filename().string() + slurp(entry.path());
            }
            texts.push_back(all);
        }
        if (texts.size() == 3) {
            const bool same = texts[0] == texts[1] && texts[0] == texts[2] && !texts[0].empty();
            ok = ok && same;
            detail += " " + preset + (same ? ":identical" : ":DIFFERENT");
        }
    }
    return {ok, detail.substr(1)};
}

Outcome criterion9(const std::string& cli) {
    struct Control {
        const char* label;
        const char* args;
        bool expect_failure;
    };
    const Control controls[] = {
        {"defaults", "", false},
        {"recurrence coefficients x1.1", " --set recurrence_scale=1.1", true},
        {"recurrence coefficients x0.9", " --set recurrence_scale=0.9", true},
        {"quadrature rel_tol 0.1", " --set quad_rel_tol=0.1", true},
        {"quadrature rel_tol 1", " --set quad_rel_tol=1", true},
    };
    bool ok = true;
    std::string detail;
    for (const auto& c : controls) {
        const int rc = run_command(cli + " validate" + c.args);
        const bool good = c.expect_failure ? rc == 3 : rc == 0;
        ok = ok && good;
        detail += std::string("; ") + c.label + ": exit " + std::to_string(rc) + (good ? "" : " (unexpected)");
    }
    return {ok, detail.substr(2)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coopnet acceptance criteria"};
    std::string id;
    std::string cli;
    std::string work = "acceptance_work";
    app.add_option("criterion", id, "1..6, 7a..7g, 8 or 9")->required();
    app.add_option("--cli", cli, "Path of the coopnet-cli executable");
    app.add_option("--work", work, "Scratch directory");
    CLI11_PARSE(app, argc, argv);

    const fs::path dir = fs::absolute(work) / ("criterion_" + id);
    fs::create_directories(dir);
    const std::map<std::string, std::function<Outcome()>> table = {
        {"1", [] { return criterion1(); }},
        {"2", criterion2},
        {"3", criterion3},
        {"4", criterion4},
        {"5", criterion5},
        {"6", criterion6},
        {"7a", [&] { return criterion7a(dir); }},
        {"7b", [&] { return criterion7b(dir); }},
        {"7c", [&] { return criterion7c(dir); }},
        {"7d", [&] { return criterion7d(dir); }},
        {"7e", [&] { return criterion7e(dir); }},
        {"7f", [&] { return criterion7f(dir); }},
        {"7g", [&] { return criterion7g(dir); }},
        {"8", [&] { return criterion8(cli, dir); }},
        {"9", [&] { return criterion9(cli); }},
    };
    const auto it = table.find(id);
    if (it == table.end()) {
        std::cerr << "unknown criterion '" << id << "'\n";
        return 2;
    }
    if ((id == "8" || id == "9") && cli.empty()) {
        std::cerr << "criterion " << id << " needs --cli\n";
        return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = it->second();
    } catch (const std::exception& e) {
        outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Stated runtime budgets; figure criteria share one budget.
    const std::map<std::string, double> budget = {{"1", 5.0}, {"2", 5.0}, {"4", 60.0}, {"5", 300.0}, {"6", 10.0}};
    double limit = id.front() == '7' ? 480.0 : 0.0;
    if (const auto b = budget.find(id); b != budget.end()) limit = b->second;
    if (limit > 0.0 && seconds > limit) {
        outcome.passed = false;
        outcome.detail += "; over the " + fmt(limit) + " s budget";
    }
    std::cout << "criterion " << id << ": " << (outcome.passed ? "PASS" : "FAIL") << " - " << outcome.detail
              << " [" << fmt(seconds) << " s]\n";
    return outcome.passed ? 0 : 1;
}
