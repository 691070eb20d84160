// Copyright 2026 The qsl-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSL_CLI_HPP
#define QSL_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsl/adversary.hpp"
#include "qsl/bounds.hpp"
#include "qsl/experiment.hpp"
#include "qsl/learning.hpp"
#include "qsl/no_broadcast.hpp"
#include "qsl/oracle.hpp"
#include "qsl/protocol.hpp"
#include "qsl/report.hpp"

namespace qsl::cli {

/// Thrown for unreadable or invalid configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One attack family and the parameter values to sweep it over.
struct GridEntry {
    std::string family;
    std::vector<double> values;
};

struct RunConfig {
    OracleSpec oracle;
    SessionConfig session;
    AttackStrategy attack = AttackStrategy::none();
    std::size_t trials = 1;
    std::optional<std::string> output_path;
    std::vector<GridEntry> grid;
    /// Sweep violation tolerance.
    double tolerance = 0.01;
    /// Monte Carlo mode: "session" or "pac".
    std::string mode = "session";
    /// PAC mode: "noiseless", "noisy" or an explicit count.
    std::string pac_samples = "noiseless";
    double label_noise = 0.0;
};

/// "family" or "family:v1,v2,...".
inline GridEntry parse_grid_entry(const std::string &text) {
    GridEntry g;
    auto colon = text.find(':');
    g.family = text.substr(0, colon);
    if (colon != std::string::npos) {
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(item, &used);
            } catch (const std::logic_error &) {
                used = 0;
            }
            if (used == 0 || used != item.size()) {
                throw ConfigError("grid: bad value '" + item + "' in '" + text + "'");
            }
            g.values.push_back(v);
        }
        if (g.values.empty()) {
            throw ConfigError("grid: no values in '" + text + "'");
        }
    }
    return g;
}

inline std::vector<AttackStrategy> expand_grid(const GridEntry &g) {
    std::vector<AttackStrategy> out;
    if (g.values.empty()) {
        out.push_back(parse_attack(g.family));
    }
    for (double v : g.values) {
        std::ostringstream s;
        s << std::setprecision(17) << g.family << ':' << v;
        out.push_back(parse_attack(s.str()));
    }
    return out;
}

inline RunConfig parse_run_config(const nlohmann::json &j) {
    static const std::vector<std::string> kKnown = {
        "oracle",        "epsilon",        "delta",        "h_size",         "m",
        "gamma",         "delta_margin",   "eta_c",        "target_samples", "channel_shrink",
        "seed",          "continuous_monitoring",          "strict_test_inputs",
        "degree_cap",    "attack",         "trials",       "output_path",    "grid",
        "tolerance",     "mode",           "pac_samples",  "label_noise",
    };
    if (!j.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(kKnown.begin(), kKnown.end(), it.key()) == kKnown.end()) {
            throw ConfigError("config: unknown key '" + it.key() + "'");
        }
    }
    try {
        RunConfig c;
        if (!j.contains("oracle")) {
            throw ConfigError("config: 'oracle' is required");
        }
        c.oracle = parse_oracle_spec(j.at("oracle").get<std::string>());
        SessionConfig &s = c.session;
        s.m = c.oracle.num_labels();
        if (j.contains("m") && j.at("m").get<int>() != s.m) {
            throw ConfigError("config: m differs from the oracle record");
        }
        s.pac.epsilon = j.value("epsilon", 0.1);
        s.pac.delta = j.value("delta", 0.1);
        if (j.contains("h_size")) {
            s.pac.h_size = j.at("h_size").get<std::uint64_t>();
        } else {
            HypothesisClass full(c.oracle.n, j.contains("degree_cap") ? std::optional<int>(j.at("degree_cap").get<int>())
                                                                    : std::nullopt);
            s.pac.h_size = full.size();
        }
        s.gamma = j.value("gamma", std::int64_t{0});
        s.delta_margin = j.value("delta_margin", 0.05);
        if (j.contains("eta_c") && !j.at("eta_c").is_null()) {
            s.eta_c_override = j.at("eta_c").get<double>();
        }
        if (j.contains("target_samples")) {
            const auto &t = j.at("target_samples");
            if (t.is_string()) {
                if (t.get<std::string>() != "auto") {
                    throw ConfigError("config: target_samples must be an integer or \"auto\"");
                }
            } else {
                s.target_samples = t.get<std::int64_t>();
            }
        }
        s.channel_shrink = j.value("channel_shrink", 1.0);
        s.seed = j.value("seed", std::uint64_t{0});
        s.continuous_monitoring = j.value("continuous_monitoring", false);
        s.strict_test_inputs = j.value("strict_test_inputs", false);
        if (j.contains("degree_cap")) {
            s.learner_degree_cap = j.at("degree_cap").get<int>();
        }
        c.attack = parse_attack(j.value("attack", std::string("none")));
        std::int64_t trials = j.value("trials", std::int64_t{1});
        if (trials < 1) {
            throw ConfigError("config: trials must be at least 1");
        }
        c.trials = static_cast<std::size_t>(trials);
        if (j.contains("output_path")) {
            c.output_path = j.at("output_path").get<std::string>();
        }
        if (j.contains("grid")) {
            for (const auto &g : j.at("grid")) {
                c.grid.push_back(parse_grid_entry(g.get<std::string>()));
            }
        }
        c.tolerance = j.value("tolerance", 0.01);
        c.mode = j.value("mode", std::string("session"));
        if (c.mode != "session" && c.mode != "pac") {
            throw ConfigError("config: mode must be \"session\" or \"pac\"");
        }
        if (j.contains("pac_samples")) {
            const auto &p = j.at("pac_samples");
            c.pac_samples = p.is_string() ? p.get<std::string>() : std::to_string(p.get<std::int64_t>());
        }
        c.label_noise = j.value("label_noise", 0.0);
        s.validate();
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

inline RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_run_config(j);
}

/// Command-line overrides shared by the config-driven commands.
struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> out;
    /// Empty selects the command default (csv for sweep, json otherwise).
    std::string format;
    std::vector<std::string> grid;
    std::optional<std::string> trace_path;
};

inline RunConfig resolve(const Overrides &o) {
    if (!o.config_path) {
        throw ConfigError("--config is required");
    }
    RunConfig c = load_run_config(*o.config_path);
    if (o.seed) {
        c.session.seed = *o.seed;
    }
    if (o.trials) {
        if (*o.trials < 1) {
            throw ConfigError("--trials must be at least 1");
        }
        c.trials = *o.trials;
    }
    if (o.out) {
        c.output_path = *o.out;
    }
    if (!o.grid.empty()) {
        c.grid.clear();
        for (const auto &g : o.grid) {
            c.grid.push_back(parse_grid_entry(g));
        }
    }
    if (!o.format.empty() && o.format != "json" && o.format != "csv") {
        throw ConfigError("--format must be csv or json");
    }
    return c;
}

/// Writes to the output path when one is configured, else to `fallback`.
inline void emit(const std::optional<std::string> &path, std::ostream &fallback, const std::string &text) {
    if (!path) {
        fallback << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write output file '" + *path + "'");
    }
    f << text;
}

struct BoundsArgs {
    double epsilon = 0.1;
    double delta = 0.1;
    std::uint64_t h_size = 16;
    int m = 1;
    std::optional<int> m_max;
    std::string format = "table";
};

inline int cmd_bounds(const BoundsArgs &a, std::ostream &out, std::ostream &err) {
    try {
        PacParams p{a.epsilon, a.delta, a.h_size};
        p.validate();
        int last = a.m_max.value_or(a.m);
        auto windows = window_sweep(p, a.m, last);
        std::int64_t noiseless = sample_complexity_noiseless(p);
        if (a.format == "json") {
            auto rows = nlohmann::ordered_json::array();
            for (const auto &w : windows) {
                nlohmann::ordered_json r;
                r["m"] = w.label_count;
                r["m_noiseless"] = noiseless;
                r["m_b"] = w.m_b;
                r["m_c"] = w.m_c;
                r["eta_c"] = w.eta_c;
                r["width"] = w.width();
                r["ratio"] = w.ratio();
                r["xi_eta_c"] = xi(w.eta_c);
                rows.push_back(r);
            }
            out << rows.dump(2) << '\n';
            return 0;
        }
        if (a.format != "table" && a.format != "csv") {
            throw std::invalid_argument("--format must be table, csv or json");
        }
        bool csv = a.format == "csv";
        char line[256];
        if (csv) {
            out << "m,m_noiseless,m_b,m_c,eta_c,width,ratio\n";
        } else {
            std::snprintf(line, sizeof line, "%3s %12s %8s %8s %8s %8s %8s\n", "m", "M_noiseless", "M_b", "M_c",
                          "eta_c", "width", "ratio");
            out << line;
        }
        for (const auto &w : windows) {
            std::snprintf(line, sizeof line, csv ? "%d,%lld,%lld,%lld,%.4f,%lld,%.4f\n" : "%3d %12lld %8lld %8lld %8.4f %8lld %8.4f\n",
                          w.label_count, static_cast<long long>(noiseless), static_cast<long long>(w.m_b),
                          static_cast<long long>(w.m_c), w.eta_c, static_cast<long long>(w.width()), w.ratio());
            out << line;
        }
        return 0;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

inline int cmd_run(const Overrides &o, std::ostream &out, std::ostream &err) {
    try {
        RunConfig c = resolve(o);
        SessionConfig s = c.session;
        s.record_trace = o.trace_path.has_value();
        SessionOutcome outcome = run_session(s, c.oracle, c.attack);
        if (o.trace_path) {
            std::ostringstream trace;
            write_trace_csv(trace, outcome.trace);
            emit(o.trace_path, out, trace.str());
        }
        std::string text;
        if (o.format == "csv") {
            text = "status,rounds,learning_rounds,test_rounds,test_mismatches,eta_estimate,samples,hypothesis\n" +
                   status_name(outcome.status) + ',' + std::to_string(outcome.rounds) + ',' +
                   std::to_string(outcome.learning_rounds) + ',' + std::to_string(outcome.test_rounds) + ',' +
                   std::to_string(outcome.test_mismatches) + ',' + format_rate(outcome.eta_estimate) + ',' +
                   std::to_string(outcome.samples.size()) + ',';
            for (std::size_t i = 0; i < outcome.hypothesis.size(); ++i) {
                text += (i ? ";" : "") + outcome.hypothesis[i].to_string();
            }
            text += '\n';
        } else {
            text = to_json(outcome).dump(2) + '\n';
        }
        emit(c.output_path, out, text);
        return exit_code(outcome.status);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

struct SweepRecord {
    std::string strategy;
    double parameter = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    SessionStatus status = SessionStatus::Completed;
    ContaminationProfile profile;
    bool violation = false;
};

inline std::vector<SweepRecord> session_sweep(const RunConfig &c) {
    if (c.grid.empty()) {
        throw ConfigError("sweep: empty parameter grid");
    }
    std::vector<AttackStrategy> strategies;
    for (const auto &g : c.grid) {
        for (auto &s : expand_grid(g)) {
            strategies.push_back(s);
        }
    }
    std::size_t total = strategies.size() * c.trials;
    return run_indexed<SweepRecord>(total, [&](std::size_t i) {
        const AttackStrategy &attack = strategies[i / c.trials];
        std::size_t trial = i % c.trials;
        SessionConfig s = c.session;
        s.seed = split_seed(c.session.seed, trial);
        SessionOutcome o = run_session(s, c.oracle, attack);
        SweepRecord r;
        r.strategy = attack.name();
        r.parameter = attack.parameter();
        r.trial = trial;
        r.seed = s.seed;
        r.status = o.status;
        r.profile = o.profile();
        // The physical critical value, even when R.1 runs with an override.
        r.violation = broadcast_violation(r.profile, eta_c(c.session.m), c.tolerance);
        return r;
    });
}

inline int cmd_sweep(const Overrides &o, std::ostream &out, std::ostream &err) {
    try {
        RunConfig c = resolve(o);
        auto records = session_sweep(c);
        std::ostringstream text;
        if (o.format == "csv" || o.format.empty()) {
            text << "strategy,parameter,trial,seed,status,eta_a_samples,eta_a_test,eta_e_samples,violation_flag\n";
            for (const auto &r : records) {
                text << r.strategy << ',' << format_rate(r.parameter) << ',' << r.trial << ',' << r.seed << ','
                     << status_name(r.status) << ',' << format_rate(r.profile.eta_a_samples) << ','
                     << format_rate(r.profile.eta_a_test) << ',' << format_rate(r.profile.eta_e_samples) << ','
                     << (r.violation ? 1 : 0) << '\n';
            }
        } else {
            auto rows = nlohmann::ordered_json::array();
            for (const auto &r : records) {
                nlohmann::ordered_json j;
                j["strategy"] = r.strategy;
                j["parameter"] = r.parameter;
                j["trial"] = r.trial;
                j["seed"] = r.seed;
                j["status"] = status_name(r.status);
                j["eta_a_samples"] = r.profile.eta_a_samples;
                j["eta_a_test"] = r.profile.eta_a_test;
                j["eta_e_samples"] = r.profile.eta_e_samples;
                j["eta_e_effective"] = r.profile.eta_e_effective;
                j["violation_flag"] = r.violation;
                rows.push_back(j);
            }
            text << rows.dump(2) << '\n';
        }
        emit(c.output_path, out, text.str());
        return 0;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

inline std::size_t resolve_pac_samples(const RunConfig &c) {
    if (c.pac_samples == "noiseless") {
        return static_cast<std::size_t>(sample_complexity_noiseless(c.session.pac));
    }
    if (c.pac_samples == "noisy") {
        return static_cast<std::size_t>(sample_complexity_noisy(c.session.pac, c.label_noise));
    }
    try {
        std::size_t used = 0;
        long long v = std::stoll(c.pac_samples, &used);
        if (used == c.pac_samples.size() && v >= 0) {
            return static_cast<std::size_t>(v);
        }
    } catch (const std::logic_error &) {
    }
    throw ConfigError("config: pac_samples must be \"noiseless\", \"noisy\" or a non-negative integer");
}

inline nlohmann::ordered_json montecarlo_summary(const RunConfig &c) {
    nlohmann::ordered_json j;
    j["mode"] = c.mode;
    j["trials"] = c.trials;
    j["seed"] = c.session.seed;
    if (c.mode == "pac") {
        std::size_t m_samples = resolve_pac_samples(c);
        auto results = run_indexed<double>(c.trials, [&](std::size_t t) {
            Rng rng = make_rng(c.session.seed, t);
            return pac_experiment(c.session.pac, c.oracle, c.label_noise, m_samples, 1, rng).errors.front();
        });
        std::size_t successes = 0;
        for (double e : results) {
            successes += e <= c.session.pac.epsilon;
        }
        double rate = static_cast<double>(successes) / static_cast<double>(c.trials);
        j["m_samples"] = m_samples;
        j["label_noise"] = c.label_noise;
        j["successes"] = successes;
        j["success_rate"] = rate;
        j["se_success_rate"] = proportion_error(rate, c.trials);
        j["floor"] = 1.0 - c.session.pac.delta;
        j["mean_exact_error"] = mean_and_error(results).mean;
        return j;
    }
    auto outcomes = run_indexed<SessionOutcome>(c.trials, [&](std::size_t t) {
        SessionConfig s = c.session;
        s.seed = split_seed(c.session.seed, t);
        return run_session(s, c.oracle, c.attack);
    });
    std::size_t completed = 0, aborted = 0, quit = 0, successes = 0;
    std::vector<double> etas;
    std::vector<double> contamination;
    for (const auto &o : outcomes) {
        completed += o.status == SessionStatus::Completed;
        aborted += o.status == SessionStatus::AbortedR1;
        quit += o.status == SessionStatus::QuitR2;
        etas.push_back(o.eta_estimate);
        contamination.push_back(o.samples.contamination_rate());
        if (o.status == SessionStatus::Completed &&
            std::all_of(o.exact_errors.begin(), o.exact_errors.end(),
                        [&](double e) { return e <= c.session.pac.epsilon; })) {
            ++successes;
        }
    }
    double n = static_cast<double>(c.trials);
    auto eta = mean_and_error(etas);
    j["attack"] = c.attack.name();
    j["attack_parameter"] = c.attack.parameter();
    j["completed"] = completed;
    j["aborted_r1"] = aborted;
    j["quit_r2"] = quit;
    j["detection_rate"] = static_cast<double>(aborted) / n;
    j["se_detection_rate"] = proportion_error(static_cast<double>(aborted) / n, c.trials);
    j["completion_rate"] = static_cast<double>(completed) / n;
    j["mean_eta_estimate"] = eta.mean;
    j["se_eta_estimate"] = eta.standard_error;
    j["mean_sample_contamination"] = mean_and_error(contamination).mean;
    if (completed) {
        double rate = static_cast<double>(successes) / static_cast<double>(completed);
        j["success_rate"] = rate;
        j["se_success_rate"] = proportion_error(rate, completed);
    } else {
        j["success_rate"] = nullptr;
        j["se_success_rate"] = nullptr;
    }
    return j;
}

inline int cmd_montecarlo(const Overrides &o, std::ostream &out, std::ostream &err) {
    try {
        RunConfig c = resolve(o);
        auto summary = montecarlo_summary(c);
        std::string text;
        if (o.format == "csv") {
            std::ostringstream s;
            bool first = true;
            for (auto it = summary.begin(); it != summary.end(); ++it) {
                s << (first ? "" : ",") << it.key();
                first = false;
            }
            s << '\n';
            first = true;
            for (auto it = summary.begin(); it != summary.end(); ++it) {
                s << (first ? "" : ",") << (it->is_string() ? it->get<std::string>() : it->dump());
                first = false;
            }
            s << '\n';
            text = s.str();
        } else {
            text = summary.dump(2) + '\n';
        }
        emit(c.output_path, out, text);
        return 0;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qsl::cli

#endif
