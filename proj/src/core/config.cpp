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

#include "core/config.hpp"

#include "core/errors.hpp"
#include "core/output.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace coopnet {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        parts.push_back(trim(item));
    }
    return parts;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw UsageError("parameter '" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

long long parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw UsageError("parameter '" + key + "': expected an integer, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw UsageError("parameter '" + key + "': expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "1" || t == "true" || t == "yes" || t == "on") {
        return true;
    }
    if (t == "0" || t == "false" || t == "no" || t == "off") {
        return false;
    }
    throw UsageError("parameter '" + key + "': expected true/false, got '" + text + "'");
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + format_double(v[i]);
    }
    return out;
}

struct Entry {
    const char* name;
    bool numeric;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

#define COOPNET_REAL(NAME, FIELD)                                                              \
    Entry {                                                                                    \
        NAME, true, [](ExperimentConfig& c, const std::string& v) { c.FIELD = parse_double(NAME, v); }, \
            [](const ExperimentConfig& c) { return format_double(c.FIELD); }                   \
    }
#define COOPNET_INT(NAME, FIELD)                                                               \
    Entry {                                                                                    \
        NAME, true,                                                                            \
            [](ExperimentConfig& c, const std::string& v) {                                    \
                c.FIELD = static_cast<decltype(c.FIELD)>(parse_int(NAME, v));                  \
            },                                                                                 \
            [](const ExperimentConfig& c) { return std::to_string(c.FIELD); }                  \
    }

template <typename E>
Entry choice(const char* name, E ExperimentConfig::*field, std::vector<std::pair<const char*, E>> options) {
    return Entry{name, false,
                 [=](ExperimentConfig& c, const std::string& v) {
                     const std::string t = trim(v);
                     std::string names;
                     for (const auto& [label, value] : options) {
                         if (t == label) {
                             c.*field = value;
                             return;
                         }
                         names += (names.empty() ? "" : ", ") + std::string(label);
                     }
                     throw UsageError("parameter '" + std::string(name) + "': expected one of " + names +
                                      ", got '" + v + "'");
                 },
                 [=](const ExperimentConfig& c) {
                     for (const auto& [label, value] : options) {
                         if (c.*field == value) {
                             return std::string(label);
                         }
                     }
                     return std::string("?");
                 }};
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {"preset", false, [](ExperimentConfig& c, const std::string& v) { c.preset = trim(v); },
         [](const ExperimentConfig& c) { return c.preset; }},
        {"lambda_s", true,
         [](ExperimentConfig& c, const std::string& v) {
             const double lambda = parse_double("lambda_s", v);
             if (!(lambda > 0.0)) {
                 throw UsageError("parameter 'lambda_s' must be > 0");
             }
             c.net.lambda_s = lambda;
             c.net.cell_radius = radius_for_intensity(lambda);
         },
         [](const ExperimentConfig& c) { return format_double(c.net.lambda_s); }},
        {"cell_radius", true,
         [](ExperimentConfig& c, const std::string& v) {
             const double r = parse_double("cell_radius", v);
             if (!(r > 0.0)) {
                 throw UsageError("parameter 'cell_radius' must be > 0");
             }
             c.net.cell_radius = r;
             c.net.lambda_s = intensity_for_radius(r);
         },
         [](const ExperimentConfig& c) { return format_double(c.net.nominal_cell_radius()); }},
        COOPNET_REAL("eta", net.eta),
        COOPNET_INT("n_t", net.n_t),
        COOPNET_INT("n_r", net.n_r),
        COOPNET_REAL("epsilon", net.epsilon),
        {"epsilon_db", true,
         [](ExperimentConfig& c, const std::string& v) { c.net.epsilon = db_to_linear(parse_double("epsilon_db", v)); },
         [](const ExperimentConfig& c) { return format_double(linear_to_db(c.net.epsilon)); }},
        COOPNET_REAL("p_s", net.p_s),
        COOPNET_REAL("sigma2", net.sigma2),
        COOPNET_REAL("rho", policy.rho),
        {"k_max", false,
         [](ExperimentConfig& c, const std::string& v) {
             if (trim(v) == "auto") {
                 c.k_max_auto = true;
                 return;
             }
             c.k_max_auto = false;
             c.policy.k_max = static_cast<int>(parse_int("k_max", v));
         },
         [](const ExperimentConfig& c) { return c.k_max_auto ? std::string("auto") : std::to_string(c.policy.k_max); }},
        COOPNET_REAL("tail_tolerance", policy.tail_tolerance),
        COOPNET_REAL("alpha", mob.alpha),
        COOPNET_REAL("mean_speed", mob.mean_speed),
        COOPNET_REAL("mean_direction", mob.mean_direction),
        COOPNET_REAL("speed_sigma", mob.speed_sigma),
        COOPNET_REAL("direction_sigma", mob.direction_sigma),
        COOPNET_REAL("tau", mob.tau),
        COOPNET_REAL("total_time", mob.total_time),
        COOPNET_INT("replications", replications),
        COOPNET_REAL("delta", overhead.delta),
        COOPNET_REAL("chi", overhead.chi),
        COOPNET_REAL("bandwidth", overhead.bandwidth),
        {"log_base", false,
         [](ExperimentConfig& c, const std::string& v) {
             const std::string t = trim(v);
             if (t == "base2" || t == "2") {
                 c.overhead.log_base = LogBase::base2;
             } else if (t == "natural" || t == "e") {
                 c.overhead.log_base = LogBase::natural;
             } else {
                 throw UsageError("parameter 'log_base': expected base2 or natural, got '" + v + "'");
             }
         },
         [](const ExperimentConfig& c) {
             return std::string(c.overhead.log_base == LogBase::base2 ? "base2" : "natural");
         }},
        {"traffic", false,
         [](ExperimentConfig& c, const std::string& v) {
             std::vector<TrafficClass> classes;
             for (const std::string& item : split(v, ',')) {
                 const auto f = split(item, ':');
                 if (f.size() != 3) {
                     throw UsageError("parameter 'traffic': expected rate:arrival:duration[,...], got '" + v + "'");
                 }
                 classes.push_back({parse_double("traffic", f[0]), parse_double("traffic", f[1]),
                                    parse_double("traffic", f[2])});
             }
             if (classes.empty()) {
                 throw UsageError("parameter 'traffic': at least one class is required");
             }
             c.overhead.traffic = classes;
         },
         [](const ExperimentConfig& c) {
             std::string out;
             for (std::size_t i = 0; i < c.overhead.traffic.size(); ++i) {
                 const TrafficClass& t = c.overhead.traffic[i];
                 out += (i ? "," : "") + format_double(t.flow_rate) + ":" + format_double(t.arrival_rate) + ":" +
                        format_double(t.mean_session_duration);
             }
             return out;
         }},
        COOPNET_REAL("quad_rel_tol", coverage.quad.relative_tolerance),
        COOPNET_REAL("quad_abs_tol", coverage.quad.absolute_tolerance),
        COOPNET_INT("quad_max_subdivisions", coverage.quad.max_subdivisions),
        COOPNET_REAL("recurrence_scale", coverage.recurrence_scale),
        choice<DistanceModel>("distance_law", &ExperimentConfig::distance_model,
                              {{"nearest", DistanceModel::nearest}, {"cell_edge", DistanceModel::cell_edge}}),
        COOPNET_REAL("reference_radius", reference_radius),
        COOPNET_INT("k", k),
        COOPNET_INT("member_order", member_order),
        COOPNET_INT("distance_order", distance_order),
        COOPNET_REAL("fixed_distance", fixed_distance),
        choice<GainMode>("gain_mode", &ExperimentConfig::gain_mode,
                         {{"gamma_sum", GainMode::gamma_sum}, {"exact_lambda_max", GainMode::exact_lambda_max}}),
        {"metric", false, [](ExperimentConfig& c, const std::string& v) { c.metric = trim(v); },
         [](const ExperimentConfig& c) { return c.metric; }},
        {"sweep", false, [](ExperimentConfig& c, const std::string& v) { c.sweep = trim(v); },
         [](const ExperimentConfig& c) { return c.sweep; }},
        {"grid", false, [](ExperimentConfig& c, const std::string& v) { c.grid = parse_grid(v); },
         [](const ExperimentConfig& c) { return join_doubles(c.grid); }},
        {"curve", false, [](ExperimentConfig& c, const std::string& v) { c.curve = trim(v); },
         [](const ExperimentConfig& c) { return c.curve; }},
        {"curves", false,
         [](ExperimentConfig& c, const std::string& v) {
             c.curves.clear();
             for (const std::string& item : split(v, ',')) {
                 if (!item.empty()) {
                     c.curves.push_back(parse_double("curves", item));
                 }
             }
         },
         [](const ExperimentConfig& c) { return join_doubles(c.curves); }},
        {"out", false, [](ExperimentConfig& c, const std::string& v) { c.output_dir = trim(v); },
         [](const ExperimentConfig& c) { return c.output_dir; }},
        {"seed", true, [](ExperimentConfig& c, const std::string& v) { c.seed = parse_unsigned("seed", v); },
         [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
        {"trials", true, [](ExperimentConfig& c, const std::string& v) { c.trials = parse_unsigned("trials", v); },
         [](const ExperimentConfig& c) { return std::to_string(c.trials); }},
        {"workers", false,
         [](ExperimentConfig& c, const std::string& v) {
             c.workers = static_cast<unsigned>(parse_unsigned("workers", v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.workers); }},
        {"svg", false, [](ExperimentConfig& c, const std::string& v) { c.svg = parse_bool("svg", v); },
         [](const ExperimentConfig& c) { return std::string(c.svg ? "true" : "false"); }},
    };
    return entries;
}

#undef COOPNET_REAL
#undef COOPNET_INT

const Entry* find_entry(const std::string& key) {
    for (const Entry& e : registry()) {
        if (key == e.name) {
            return &e;
        }
    }
    return nullptr;
}

std::string valid_keys() {
    std::string out;
    for (const Entry& e : registry()) {
        out += (out.empty() ? "" : ", ") + std::string(e.name);
    }
    return out;
}

} // namespace

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    std::vector<double> grid;
    if (t.find(':') != std::string::npos) {
        const auto f = split(t, ':');
        if (f.size() != 3) {
            throw UsageError("grid: expected start:stop:step, got '" + text + "'");
        }
        const double a = parse_double("grid", f[0]);
        const double b = parse_double("grid", f[1]);
        const double step = parse_double("grid", f[2]);
        if (step == 0.0 || (b - a) / step < 0.0) {
            throw UsageError("grid: step must move from start towards stop in '" + text + "'");
        }
        const double span = std::floor((b - a) / step + 1e-9);
        if (span > 1e6) {
            throw UsageError("grid: too many points in '" + text + "'");
        }
        const long n = static_cast<long>(span) + 1;
        for (long i = 0; i < n; ++i) {
            // Rounded to 12 significant digits so that 1:2:0.1 yields 1.2, not 1.2000000000000002.
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", a + static_cast<double>(i) * step);
            grid.push_back(parse_double("grid", buf));
        }
    } else {
        for (const std::string& item : split(t, ',')) {
            grid.push_back(parse_double("grid", item));
        }
    }
    if (grid.empty()) {
        throw UsageError("grid must not be empty");
    }
    const bool up = grid.size() < 2 || grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
            throw UsageError("grid must be strictly monotone: '" + text + "'");
        }
    }
    return grid;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    const Entry* e = find_entry(trim(key));
    if (!e) {
        throw UsageError("unknown parameter '" + key + "'; valid parameters: " + valid_keys());
    }
    e->set(*this, value);
    const std::string name = e->name;
    if (std::find(explicit_keys.begin(), explicit_keys.end(), name) == explicit_keys.end()) {
        explicit_keys.push_back(name);
    }
}

void ExperimentConfig::set_default(const std::string& key, const std::string& value) {
    const Entry* e = find_entry(trim(key));
    if (!e) {
        throw UsageError("unknown parameter '" + key + "'; valid parameters: " + valid_keys());
    }
    if (!is_explicit(e->name)) {
        e->set(*this, value);
    }
}

bool ExperimentConfig::is_explicit(const std::string& key) const {
    // Intensity and radius are two views of one parameter.
    auto has = [&](const std::string& k) {
        return std::find(explicit_keys.begin(), explicit_keys.end(), k) != explicit_keys.end();
    };
    if (key == "lambda_s" || key == "cell_radius") {
        return has("lambda_s") || has("cell_radius");
    }
    if (key == "epsilon" || key == "epsilon_db") {
        return has("epsilon") || has("epsilon_db");
    }
    return has(key);
}

std::string ExperimentConfig::get(const std::string& key) const {
    const Entry* e = find_entry(trim(key));
    if (!e) {
        throw UsageError("unknown parameter '" + key + "'; valid parameters: " + valid_keys());
    }
    return e->get(*this);
}

void ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path);
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(number) + ": expected 'key = value'");
        }
        set(line.substr(0, eq), line.substr(eq + 1));
    }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::effective() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Entry& e : registry()) {
        out.emplace_back(e.name, e.get(*this));
    }
    return out;
}

CoopPolicy ExperimentConfig::effective_policy() const {
    CoopPolicy p = policy;
    if (k_max_auto) {
        p.k_max = std::max(32, CoopPolicy::required_k_max(p.rho, p.tail_tolerance));
    }
    return p;
}

const std::vector<std::string>& ExperimentConfig::keys() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const Entry& e : registry()) {
            v.emplace_back(e.name);
        }
        return v;
    }();
    return names;
}

bool ExperimentConfig::is_numeric_key(const std::string& key) {
    const Entry* e = find_entry(key);
    return e && e->numeric;
}

} // namespace coopnet
