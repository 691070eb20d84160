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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "boost/math/distributions/binomial.hpp"
#include "qsl/qsl.hpp"

using namespace qsl;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *title, double time_limit_s, const std::function<Verdict()> &check) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = check();
    } catch (const std::exception &e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > time_limit_s) {
        v.pass = false;
        v.detail += " [over time limit]";
    }
    failures += !v.pass;
    std::printf("%s %2d %s: %s (%.2fs, limit %.0fs)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(),
                elapsed, time_limit_s);
    std::fflush(stdout);
}

std::string fmt(const char *f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

PacParams reference_params() { return PacParams{0.1, 0.1, 16}; }

// One-sided exact binomial test of H0: rate >= floor. Passes unless the
// observed count is significantly low at level alpha.
Verdict binomial_floor(std::size_t successes, std::size_t trials, double floor, double alpha) {
    boost::math::binomial dist(static_cast<double>(trials), floor);
    double p_value = boost::math::cdf(dist, static_cast<double>(successes));
    double rate = static_cast<double>(successes) / static_cast<double>(trials);
    std::ostringstream d;
    d << successes << "/" << trials << " = " << rate << ", P(X <= k | p = " << floor << ") = " << p_value;
    return {p_value >= alpha && rate >= floor, d.str()};
}

QuantumState random_pure(std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    Ket k(2);
    k << Complex(g(gen), g(gen)), Complex(g(gen), g(gen));
    return QuantumState::from_ket(k);
}

}  // namespace

int main() {
    criterion(1, "bounds reproduction", 1, [] {
        cli::BoundsArgs a;
        a.h_size = 16;
        std::ostringstream out, err;
        int code = cli::cmd_bounds(a, out, err);
        SecureWindow w = secure_window(reference_params(), 1);
        std::string text = out.str();
        bool printed = text.find(" 1154 ") != std::string::npos && text.find(" 2596 ") != std::string::npos &&
                       text.find("0.1667") != std::string::npos;
        bool exact = w.m_b == 1154 && w.m_c == 2596 && w.eta_c == 1.0 / 6.0;
        std::ostringstream d;
        d << "M_b=" << w.m_b << " M_c=" << w.m_c << " eta_c=" << w.eta_c;
        return Verdict{code == 0 && printed && exact, d.str()};
    });

    criterion(2, "eta_c table and narrowing", 1, [] {
        const double expected[] = {1.0 / 6.0, 1.0 / 8.0, 1.0 / 10.0, 1.0 / 12.0, 1.0 / 14.0};
        bool ok = true;
        std::ostringstream d;
        double prev_xi = INFINITY;
        for (int m = 1; m <= 5; ++m) {
            double e = eta_c(m);
            double x = xi(e);
            ok = ok && e == expected[m - 1] && x < prev_xi;
            prev_xi = x;
            d << "m=" << m << ":" << e << "/xi=" << x << (m < 5 ? " " : "");
        }
        return Verdict{ok, d.str()};
    });

    criterion(3, "oracle brute-force equivalence n<=3", 30, [] {
        std::size_t checks = 0;
        double worst = 1.0;
        for (int n = 1; n <= 3; ++n) {
            int len = 1 << n;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
                OracleSpec spec{n, {ReedMullerCoefficients(n, mask)}};
                for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(len); ++v) {
                    ClassicalInput x(n, v);
                    int c = reed_muller_eval(spec, 0, x);
                    for (int alpha = 0; alpha < 2; ++alpha) {
                        QuantumState out =
                            oracle_apply(spec, x, make_state(label_from(BasisLabel::Z, alpha)));
                        worst = std::min(worst, fidelity(out, make_state(label_from(BasisLabel::Z, c ^ alpha))));
                        ++checks;
                    }
                    if (v == 0) {
                        continue;
                    }
                    for (StateLabel s : {StateLabel::Plus, StateLabel::Minus}) {
                        worst = std::min(worst, fidelity(oracle_apply(spec, x, make_state(s)), make_state(s)));
                        ++checks;
                    }
                }
            }
        }
        return Verdict{worst >= 1.0 - 1e-10, std::to_string(checks) + " cases, min fidelity " + fmt("%.15f", worst)};
    });

    criterion(4, "cloner exactness", 1, [] {
        std::mt19937_64 gen(20261014);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            QuantumState psi = random_pure(gen);
            auto [a, e] = universal_clone(psi);
            worst = std::max({worst, std::abs(fidelity(psi, a) - 5.0 / 6.0), std::abs(fidelity(psi, e) - 5.0 / 6.0)});
        }
        return Verdict{worst <= 1e-12, "max |F - 5/6| = " + fmt("%.3e", worst)};
    });

    auto pac = [](double eta, std::int64_t expected_m) {
        PacParams p = reference_params();
        std::int64_t m = eta == 0.0 ? sample_complexity_noiseless(p) : sample_complexity_noisy(p, eta);
        if (m != expected_m) {
            return Verdict{false, "sample size " + std::to_string(m)};
        }
        const std::size_t trials = 500;
        // Trials cycle through all 16 concepts on two bits.
        auto ok = run_indexed<int>(trials, [&](std::size_t t) {
            OracleSpec spec{2, {ReedMullerCoefficients(2, t % 16)}};
            Rng rng = make_rng(eta == 0.0 ? 5005 : 6006, t);
            return pac_experiment(p, spec, eta, static_cast<std::size_t>(m), 1, rng).successes == 1 ? 1 : 0;
        });
        std::size_t successes = 0;
        for (int s : ok) {
            successes += static_cast<std::size_t>(s);
        }
        Verdict v = binomial_floor(successes, trials, 1.0 - p.delta, 0.01);
        v.detail = "M=" + std::to_string(m) + ", " + v.detail;
        return v;
    };
    criterion(5, "PAC guarantee (noiseless)", 30, [&] { return pac(0.0, 51); });
    criterion(6, "PAC guarantee (noisy)", 120, [&] { return pac(1.0 / 6.0, 2596); });

    criterion(7, "detection of Z intercept-resend", 60, [] {
        SessionConfig c;
        c.pac = reference_params();
        auto outcomes = run_indexed<SessionOutcome>(200, [&](std::size_t t) {
            SessionConfig s = c;
            s.seed = split_seed(7007, t);
            return run_session(s, make_oracle("0111"), AttackStrategy::intercept_z(1.0));
        });
        std::size_t aborted = 0;
        for (const auto &o : outcomes) {
            aborted += o.status == SessionStatus::AbortedR1;
        }
        std::ostringstream d;
        d << aborted << "/200 aborted, M_b - Gamma = " << c.r1_rounds() << ", Delta = " << c.delta_margin;
        return Verdict{aborted >= 199 && c.r1_rounds() >= 100, d.str()};
    });

    criterion(8, "cloner contamination estimate", 60, [] {
        SessionConfig c;
        c.pac = PacParams{0.07, 0.1, 16};
        bool ok = c.r1_rounds() >= 2000;
        double worst = 0.0;
        std::size_t sessions = 0;
        std::size_t aborted = 0;
        for (double delta : {0.05, 0.04, 0.03}) {
            c.delta_margin = delta;
            auto outcomes = run_indexed<SessionOutcome>(20, [&](std::size_t t) {
                SessionConfig s = c;
                s.seed = split_seed(8008, t);
                return run_session(s, make_oracle("0110"), AttackStrategy::universal_clone());
            });
            for (const auto &o : outcomes) {
                ++sessions;
                aborted += o.status == SessionStatus::AbortedR1;
                ok = ok && o.test_rounds >= 2000;
                worst = std::max(worst, std::abs(o.eta_estimate - 1.0 / 6.0));
            }
        }
        std::ostringstream d;
        d << "M_b - Gamma = " << c.r1_rounds() << ", max |eta_hat - 1/6| = " << worst << ", aborted " << aborted << "/"
          << sessions << " for Delta in {0.05, 0.04, 0.03}";
        return Verdict{ok && worst <= 0.03 && aborted == sessions, d.str()};
    });

    const auto strategies = standard_sweep();
    std::vector<SweepRow> rows;
    criterion(9, "no-broadcast sweep", 300, [&] {
        rows = no_broadcast_sweep(strategies, make_oracle("0111"), 40000, eta_c(1), 0.01, 9009);
        std::size_t violations = 0;
        std::string names;
        for (const auto &r : rows) {
            if (r.violation) {
                ++violations;
                names += " " + r.strategy + ":" + fmt("%.2f", r.parameter);
            }
        }
        return Verdict{violations == 0,
                       std::to_string(rows.size()) + " strategies, " + std::to_string(violations) + " violations" + names};
    });

    criterion(10, "fidelity inequality", 300, [&] {
        if (rows.size() != strategies.size()) {
            return Verdict{false, "sweep unavailable"};
        }
        const double tol = 0.02;
        double alice_margin = INFINITY;
        double eve_margin = INFINITY;
        std::string worst_alice;
        std::string worst_eve;
        for (const auto &r : rows) {
            double a = std::min(r.measured.eta_a_effective(), r.per_state.alice_max()) - r.bound.alice;
            double e = r.per_state.eve_max() - r.bound.eve;
            if (a < alice_margin) {
                alice_margin = a;
                worst_alice = r.strategy + ":" + fmt("%.2f", r.parameter);
            }
            if (e < eve_margin) {
                eve_margin = e;
                worst_eve = r.strategy + ":" + fmt("%.2f", r.parameter);
            }
        }
        std::ostringstream d;
        d << "min Alice margin " << alice_margin << " (" << worst_alice << "), min Eve margin " << eve_margin << " ("
          << worst_eve << ")";
        return Verdict{alice_margin >= -tol && eve_margin >= -tol, d.str()};
    });

    criterion(11, "sweep determinism", 60, [] {
        auto path = std::filesystem::temp_directory_path() / "qsl_acceptance_sweep.json";
        std::ofstream(path) << R"({"oracle": "n=2 m=1 a=0111", "seed": 1111, "trials": 4,
                                  "grid": ["intercept_random:0,0.5,1", "clone", "probe_cnot"]})";
        cli::Overrides o;
        o.config_path = path.string();
        std::ostringstream a, b, err;
        int ca = cli::cmd_sweep(o, a, err);
        int cb = cli::cmd_sweep(o, b, err);
        std::filesystem::remove(path);
        bool same = ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty();
        return Verdict{same, std::to_string(a.str().size()) + " bytes, " + (same ? "identical" : "differ") + err.str()};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
