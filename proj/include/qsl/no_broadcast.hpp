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

#ifndef QSL_NO_BROADCAST_HPP
#define QSL_NO_BROADCAST_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsl/adversary.hpp"
#include "qsl/oracle.hpp"
#include "qsl/round.hpp"

namespace qsl {

struct MeasuredProfile {
    ContaminationProfile rates;
    std::size_t learning_slots = 0;
    std::size_t test_slots = 0;
    std::size_t eve_slots = 0;
};

/// Monte Carlo estimate of a strategy's contamination over `rounds` protocol
/// rounds (no abort rules, noiseless channel, fresh-input bookkeeping off).
inline MeasuredProfile measured_profile(const AttackStrategy &strategy, const OracleSpec &spec, std::size_t rounds,
                                        Rng &rng) {
    if (rounds == 0) {
        throw std::invalid_argument("measured_profile: rounds must be positive");
    }
    std::size_t learning_errors = 0;
    std::size_t test_errors = 0;
    std::size_t eve_errors = 0;
    MeasuredProfile out;
    for (std::size_t r = 0; r < rounds; ++r) {
        RoundPlan plan =
            alice_prepare_round(rng, 0, spec.n, spec.num_labels(), TestInputPolicy::ReuseWhenExhausted);
        RoundOutcome round = execute_round(plan, spec, strategy, 1.0, rng);
        if (plan.kind == RoundKind::Learning) {
            out.learning_slots += plan.labels.size();
            learning_errors += static_cast<std::size_t>(round.contaminated_slots);
            out.eve_slots += static_cast<std::size_t>(std::popcount(round.eve_slots));
            eve_errors += static_cast<std::size_t>(round.eve_wrong_slots);
        } else {
            out.test_slots += plan.labels.size();
            test_errors += static_cast<std::size_t>(round.mismatches);
        }
    }
    auto ratio = [](std::size_t a, std::size_t b, double empty) {
        return b ? static_cast<double>(a) / static_cast<double>(b) : empty;
    };
    out.rates.eta_a_samples = ratio(learning_errors, out.learning_slots, 0.0);
    out.rates.eta_a_test = ratio(test_errors, out.test_slots, 0.0);
    out.rates.eta_e_samples = ratio(eve_errors, out.eve_slots, 0.5);
    double erasures = static_cast<double>(out.learning_slots - out.eve_slots);
    out.rates.eta_e_effective =
        out.learning_slots ? (static_cast<double>(eve_errors) + 0.5 * erasures) / static_cast<double>(out.learning_slots)
                           : 0.5;
    return out;
}

/// True when both learners beat the critical contamination by more than tol
/// over the full sample set, i.e. the strategy would broadcast the samples.
inline bool broadcast_violation(const ContaminationProfile &p, double eta_c, double tol) {
    return p.eta_a_effective() < eta_c - tol && p.eta_e_effective < eta_c - tol;
}

struct SweepRow {
    std::string strategy;
    double parameter = 0.0;
    ContaminationProfile measured;
    std::optional<ContaminationProfile> predicted;
    FidelityBound bound;
    PerStateErrors per_state;
    bool violation = false;
};

/// Intercept families at p = 0.1 ... 1.0, the universal cloner and the CNOT
/// probe, plus the idle strategy and three partial probes.
inline std::vector<AttackStrategy> standard_sweep() {
    std::vector<AttackStrategy> out{AttackStrategy::none()};
    for (int i = 1; i <= 10; ++i) {
        double p = i / 10.0;
        out.push_back(AttackStrategy::intercept_z(p));
        out.push_back(AttackStrategy::intercept_x(p));
        out.push_back(AttackStrategy::intercept_random(p));
    }
    out.push_back(AttackStrategy::universal_clone());
    out.push_back(AttackStrategy::cnot_probe());
    const double pi = std::acos(-1.0);
    for (double theta : {pi / 4.0, pi / 2.0, 3.0 * pi / 4.0}) {
        out.push_back(AttackStrategy::rotation_probe(theta));
    }
    return out;
}

/// Measures every strategy on independent streams split from `seed` and flags
/// any point at which both learners stay below eta_c - tol.
inline std::vector<SweepRow> no_broadcast_sweep(const std::vector<AttackStrategy> &strategies, const OracleSpec &spec,
                                                std::size_t rounds, double eta_c, double tol, std::uint64_t seed) {
    if (strategies.empty()) {
        throw std::invalid_argument("no_broadcast_sweep: empty strategy list");
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        const auto &s = strategies[i];
        Rng rng = make_rng(seed, i);
        SweepRow row;
        row.strategy = s.name();
        row.parameter = s.parameter();
        row.measured = measured_profile(s, spec, rounds, rng).rates;
        if (s.closed_form()) {
            row.predicted = predicted_profile(s);
        }
        row.bound = fidelity_bound(s);
        row.per_state = per_state_errors(s, rounds / 4 + 1, rng);
        row.violation = broadcast_violation(row.measured, eta_c, tol);
        rows.push_back(row);
    }
    return rows;
}

inline std::string format_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "strategy,parameter,eta_a_samples,eta_a_test,eta_e_samples,violation_flag\n";
    for (const auto &r : rows) {
        out << r.strategy << ',' << format_rate(r.parameter) << ',' << format_rate(r.measured.eta_a_samples) << ','
            << format_rate(r.measured.eta_a_test) << ',' << format_rate(r.measured.eta_e_samples) << ','
            << (r.violation ? 1 : 0) << '\n';
    }
}

}  // namespace qsl

#endif
