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

#ifndef QSL_PROTOCOL_HPP
#define QSL_PROTOCOL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/adversary.hpp"
#include "qsl/bounds.hpp"
#include "qsl/learning.hpp"
#include "qsl/oracle.hpp"
#include "qsl/round.hpp"
#include "qsl/samples.hpp"

namespace qsl {

struct SessionConfig {
    PacParams pac;
    /// Label qubits per round; must equal the oracle's label count.
    int m = 1;
    /// R.1 offset: the test fires after M_b - gamma test rounds.
    std::int64_t gamma = 0;
    /// R.1 slack: abort when the mismatch rate reaches eta_c - delta_margin.
    double delta_margin = 0.05;
    /// Overrides eta_c(m) for both the R.1 threshold and M_c.
    std::optional<double> eta_c_override;
    /// Fixed learning target in [M_b, M_c]; nullopt selects the automatic
    /// target (noisy sample complexity at the R.1 estimate).
    std::optional<std::int64_t> target_samples;
    /// Intrinsic depolarizing shrink per transit direction (1 = noiseless).
    double channel_shrink = 1.0;
    std::uint64_t seed = 0;
    /// Re-run the R.1 test after every test round once it has fired.
    bool continuous_monitoring = false;
    /// Fail instead of reusing test inputs once every nonzero input has been
    /// used for learning.
    bool strict_test_inputs = false;
    /// Degree cap of the session learner's class (nullopt: all functions).
    std::optional<int> learner_degree_cap;
    bool record_trace = false;

    double critical() const { return eta_c_override ? *eta_c_override : eta_c(m); }

    SecureWindow window() const {
        return SecureWindow{m, sample_complexity_noisy(pac, 0.0), sample_complexity_noisy(pac, critical()), critical()};
    }

    std::int64_t r1_rounds() const { return window().m_b - gamma; }

    double r1_threshold() const { return critical() - delta_margin; }

    void validate() const {
        pac.validate();
        if (m < 1 || m > kMaxLabels) {
            throw std::invalid_argument("session: label count must lie in [1, 8]");
        }
        double c = critical();
        if (!(c > 0.0 && c < 0.5)) {
            throw std::invalid_argument("session: eta_c must lie in (0, 1/2)");
        }
        if (!(delta_margin >= 0.0)) {
            throw std::invalid_argument("session: delta margin must be non-negative");
        }
        if (!(c - delta_margin > 0.0)) {
            throw std::invalid_argument("session: eta_c - delta margin must be positive");
        }
        if (gamma < 0) {
            throw std::invalid_argument("session: gamma must be non-negative");
        }
        if (!(channel_shrink >= 0.0 && channel_shrink <= 1.0)) {
            throw std::invalid_argument("session: channel shrink must lie in [0, 1]");
        }
        SecureWindow w = window();
        if (w.m_b - gamma < 1) {
            throw std::invalid_argument("session: M_b - gamma must be at least 1");
        }
        if (target_samples && (*target_samples < w.m_b || *target_samples > w.m_c)) {
            throw std::invalid_argument("session: target samples must lie inside [M_b, M_c] = [" +
                                        std::to_string(w.m_b) + ", " + std::to_string(w.m_c) + "]");
        }
    }
};

enum class SessionStatus { Completed, AbortedR1, QuitR2 };

inline std::string status_name(SessionStatus s) {
    switch (s) {
        case SessionStatus::Completed:
            return "Completed";
        case SessionStatus::AbortedR1:
            return "AbortedR1";
        case SessionStatus::QuitR2:
            return "QuitR2";
    }
    return "Unknown";
}

struct RoundRecord {
    std::int64_t index = 0;
    RoundKind kind = RoundKind::Learning;
    ClassicalInput input{1, 0};
    std::vector<StateLabel> sent;
    LabelBits measured = 0;
    bool mismatch = false;
    /// Diagnostic only; Alice never sees it.
    bool ground_truth_contaminated = false;
};

struct SessionOutcome {
    SessionStatus status = SessionStatus::Completed;
    SecureWindow window;
    SampleSet samples;
    /// Eve's learning-round samples, labels decoded against the ideal output.
    SampleSet eve_samples;
    std::int64_t rounds = 0;
    std::int64_t learning_rounds = 0;
    std::int64_t test_rounds = 0;
    /// Per-slot X mismatches over all test rounds.
    std::int64_t test_mismatches = 0;
    double eta_estimate = 0.0;
    bool r1_evaluated = false;
    std::optional<std::int64_t> target_samples;
    std::vector<ReedMullerCoefficients> hypothesis;
    std::vector<double> exact_errors;
    /// Slot-level ground truth for profile estimates.
    std::int64_t sample_slot_errors = 0;
    std::int64_t eve_slot_samples = 0;
    std::int64_t eve_slot_errors = 0;
    std::vector<RoundRecord> trace;

    ContaminationProfile profile() const {
        ContaminationProfile p;
        int m = window.label_count;
        p.eta_a_samples = learning_rounds ? static_cast<double>(sample_slot_errors) / static_cast<double>(learning_rounds * m) : 0.0;
        p.eta_a_test = eta_estimate;
        p.eta_e_samples = eve_slot_samples ? static_cast<double>(eve_slot_errors) / static_cast<double>(eve_slot_samples) : 0.5;
        double slots = static_cast<double>(learning_rounds * m);
        p.eta_e_effective =
            learning_rounds ? (static_cast<double>(eve_slot_errors) + 0.5 * (slots - static_cast<double>(eve_slot_samples))) / slots
                            : 0.5;
        return p;
    }
};

enum class R1Decision { Continue, Abort };
enum class R2Decision { Continue, Quit };

/// Abort iff mismatches / observations >= eta_c - delta.
inline R1Decision r1_check(std::int64_t mismatches, std::int64_t observations, const SessionConfig &config) {
    if (observations <= 0) {
        throw std::invalid_argument("r1_check: zero test-round denominator");
    }
    double rate = static_cast<double>(mismatches) / static_cast<double>(observations);
    return rate >= config.r1_threshold() ? R1Decision::Abort : R1Decision::Continue;
}

inline R2Decision r2_check(std::int64_t learning_rounds, bool completed, std::int64_t m_c) {
    return (!completed && learning_rounds >= m_c) ? R2Decision::Quit : R2Decision::Continue;
}

inline double estimate_eta(std::int64_t mismatches, std::int64_t denominator) {
    if (denominator <= 0) {
        throw std::invalid_argument("estimate_eta: zero denominator");
    }
    return static_cast<double>(mismatches) / static_cast<double>(denominator);
}

/// Runs one Alice/Bob session to a terminal status. Learning counts as
/// completed once R.1 has passed and the learning target is reached; the
/// learner then runs on every collected pair.
inline SessionOutcome run_session(const SessionConfig &config, const OracleSpec &spec, const AttackStrategy &attack) {
    config.validate();
    spec.validate();
    if (spec.num_labels() != config.m) {
        throw std::invalid_argument("session: oracle label count differs from configured m");
    }
    HypothesisClass learner_class(spec.n, config.learner_degree_cap);
    if (learner_class.log2_size() > 16) {
        throw std::invalid_argument("session: learner class too large to enumerate; set a degree cap");
    }

    SessionOutcome out;
    out.window = config.window();
    out.target_samples = config.target_samples;
    const std::int64_t r1_rounds = config.r1_rounds();
    const int m = config.m;
    Rng rng(config.seed);
    InputSet used = 0;
    TestInputPolicy policy =
        config.strict_test_inputs ? TestInputPolicy::FreshOnly : TestInputPolicy::ReuseWhenExhausted;

    while (true) {
        RoundPlan plan = alice_prepare_round(rng, used, spec.n, m, policy);
        RoundOutcome round = execute_round(plan, spec, attack, config.channel_shrink, rng);
        ++out.rounds;
        bool run_r1 = false;
        if (plan.kind == RoundKind::Learning) {
            used |= InputSet{1} << plan.input.value();
            ++out.learning_rounds;
            out.samples.add(SamplePair{plan.input, round.labels}, round.contaminated());
            out.sample_slot_errors += round.contaminated_slots;
            LabelBits all_slots = (LabelBits{1} << m) - 1;
            if (round.eve_slots == all_slots) {
                out.eve_samples.add(SamplePair{plan.input, round.eve_labels}, round.eve_wrong_slots > 0);
            }
            out.eve_slot_samples += std::popcount(round.eve_slots);
            out.eve_slot_errors += round.eve_wrong_slots;
        } else {
            ++out.test_rounds;
            out.test_mismatches += round.mismatches;
            run_r1 = out.test_rounds == r1_rounds || (config.continuous_monitoring && out.r1_evaluated);
        }
        out.eta_estimate = estimate_eta(out.test_mismatches, std::max<std::int64_t>(1, out.test_rounds * m));
        if (config.record_trace) {
            out.trace.push_back(RoundRecord{out.rounds - 1, plan.kind, plan.input, plan.labels, round.measured,
                                            round.mismatches > 0, round.contaminated()});
        }

        if (run_r1) {
            if (r1_check(out.test_mismatches, out.test_rounds * m, config) == R1Decision::Abort) {
                out.r1_evaluated = true;
                out.status = SessionStatus::AbortedR1;
                return out;
            }
            if (!out.r1_evaluated && !config.target_samples) {
                std::int64_t automatic = sample_complexity_noisy(config.pac, out.eta_estimate);
                out.target_samples = std::clamp(automatic, out.window.m_b, out.window.m_c);
            }
            out.r1_evaluated = true;
        }

        bool completed = out.r1_evaluated && out.learning_rounds >= *out.target_samples;
        if (completed) {
            for (int l = 0; l < m; ++l) {
                LearnResult r = erm_learn(out.samples, learner_class, spec, l);
                out.hypothesis.push_back(r.hypothesis);
                out.exact_errors.push_back(*r.exact_error);
            }
            out.status = SessionStatus::Completed;
            return out;
        }
        if (plan.kind == RoundKind::Learning &&
            r2_check(out.learning_rounds, completed, out.window.m_c) == R2Decision::Quit) {
            out.status = SessionStatus::QuitR2;
            return out;
        }
    }
}

}  // namespace qsl

#endif
