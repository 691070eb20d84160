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

#ifndef QSL_ADVERSARY_HPP
#define QSL_ADVERSARY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsl/qcore.hpp"
#include "qsl/random.hpp"

namespace qsl {

enum class AttackKind { None, InterceptResendZ, InterceptResendX, InterceptResendRandom, UniversalClone, GeneralProbe };
enum class Direction { AtoB, BtoA };

/// Eve's interposition on the quantum channel. Every variant acts on the
/// returning (B -> A) leg, one label slot at a time; the outgoing leg is
/// passed through untouched.
class AttackStrategy {
   public:
    static AttackStrategy none() { return AttackStrategy(AttackKind::None, 0.0); }
    static AttackStrategy intercept_z(double p) { return AttackStrategy(AttackKind::InterceptResendZ, p); }
    static AttackStrategy intercept_x(double p) { return AttackStrategy(AttackKind::InterceptResendX, p); }
    static AttackStrategy intercept_random(double p) { return AttackStrategy(AttackKind::InterceptResendRandom, p); }
    static AttackStrategy universal_clone() { return AttackStrategy(AttackKind::UniversalClone, 1.0); }

    /// Joint unitary on (transit slot, ancilla_0, ...); ancillas start in |0...0>
    /// and Eve's sample is read from ancilla 0.
    static AttackStrategy general_probe(const Gate &unitary, std::string name, double parameter) {
        int ancillas = unitary.num_qubits() - 1;
        if (ancillas < 1 || ancillas > 2) {
            throw std::invalid_argument("general probe: unitary must act on the transit qubit plus 1 or 2 ancillas");
        }
        AttackStrategy s(AttackKind::GeneralProbe, parameter);
        s.probe_ = unitary;
        s.name_ = std::move(name);
        return s;
    }

    /// Controlled-NOT from the transit qubit onto one ancilla.
    static AttackStrategy cnot_probe() {
        Matrix u = Matrix::Zero(4, 4);
        u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1;
        return general_probe(Gate::custom(u), "probe_cnot", 1.0);
    }

    /// Controlled R_y(theta) onto one ancilla: a weak Z measurement that
    /// interpolates between no attack (0) and the CNOT probe (pi).
    static AttackStrategy rotation_probe(double theta) {
        Matrix u = Matrix::Zero(4, 4);
        double c = std::cos(theta / 2.0);
        double s = std::sin(theta / 2.0);
        u(0, 0) = u(1, 1) = 1;
        u(2, 2) = c;
        u(2, 3) = -s;
        u(3, 2) = s;
        u(3, 3) = c;
        return general_probe(Gate::custom(u), "probe_angle", theta);
    }

    AttackKind kind() const { return kind_; }
    /// Interception probability for the intercept-resend family; the probe
    /// angle (or 1) for probes.
    double parameter() const { return parameter_; }
    const std::optional<Gate> &probe() const { return probe_; }
    int ancilla_qubits() const { return probe_ ? probe_->num_qubits() - 1 : 0; }
    bool closed_form() const { return kind_ != AttackKind::GeneralProbe; }

    std::string name() const {
        switch (kind_) {
            case AttackKind::None:
                return "none";
            case AttackKind::InterceptResendZ:
                return "intercept_z";
            case AttackKind::InterceptResendX:
                return "intercept_x";
            case AttackKind::InterceptResendRandom:
                return "intercept_random";
            case AttackKind::UniversalClone:
                return "clone";
            case AttackKind::GeneralProbe:
                return name_;
        }
        return "unknown";
    }

   private:
    AttackStrategy(AttackKind kind, double parameter) : kind_(kind), parameter_(parameter) {
        if (!(parameter >= 0.0 && parameter <= 1.0) && kind != AttackKind::GeneralProbe) {
            throw std::invalid_argument("interception probability must lie in [0, 1]");
        }
    }

    AttackKind kind_;
    double parameter_;
    std::optional<Gate> probe_;
    std::string name_;
};

/// Parses "none", "clone", "probe_cnot", "probe_angle:THETA" and
/// "intercept_{z,x,random}:P" (P defaults to 1).
inline AttackStrategy parse_attack(const std::string &text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::optional<double> value;
    if (colon != std::string::npos) {
        std::size_t used = 0;
        std::string rest = text.substr(colon + 1);
        try {
            value = std::stod(rest, &used);
        } catch (const std::logic_error &) {
            used = 0;
        }
        if (used == 0 || used != rest.size()) {
            throw std::invalid_argument("attack: bad parameter in '" + text + "'");
        }
    }
    if (kind == "none" && !value) {
        return AttackStrategy::none();
    }
    if (kind == "clone" && !value) {
        return AttackStrategy::universal_clone();
    }
    if (kind == "probe_cnot" && !value) {
        return AttackStrategy::cnot_probe();
    }
    if (kind == "probe_angle" && value) {
        return AttackStrategy::rotation_probe(*value);
    }
    if (kind == "intercept_z") {
        return AttackStrategy::intercept_z(value.value_or(1.0));
    }
    if (kind == "intercept_x") {
        return AttackStrategy::intercept_x(value.value_or(1.0));
    }
    if (kind == "intercept_random") {
        return AttackStrategy::intercept_random(value.value_or(1.0));
    }
    throw std::invalid_argument("attack: unknown strategy '" + text + "'");
}

/// Session-local record of what Eve retained in the current round.
struct EveMemory {
    /// Eve's single-qubit copy per label slot; nullopt marks an erasure.
    std::vector<std::optional<QuantumState>> copies;
    /// Full retained probe register per slot (GeneralProbe only).
    std::vector<std::optional<QuantumState>> ancillas;

    void begin_round(int slots) {
        copies.assign(static_cast<std::size_t>(slots), std::nullopt);
        ancillas.assign(static_cast<std::size_t>(slots), std::nullopt);
    }
};

namespace detail {

inline QuantumState probe_slot(const QuantumState &transit, int slot, const Gate &unitary, EveMemory &memory) {
    int m = transit.num_qubits();
    int ancillas = unitary.num_qubits() - 1;
    if (m + ancillas > kMaxQubits) {
        throw std::invalid_argument("general probe: register exceeds 8 qubits");
    }
    std::vector<QuantumState> parts{transit};
    for (int a = 0; a < ancillas; ++a) {
        parts.push_back(make_state(StateLabel::Zero));
    }
    QuantumState joint = tensor(std::span<const QuantumState>(parts));
    std::vector<int> targets{slot};
    std::vector<int> eve_qubits;
    for (int a = 0; a < ancillas; ++a) {
        targets.push_back(m + a);
        eve_qubits.push_back(m + a);
    }
    joint = apply_gate(joint, unitary, std::span<const int>(targets));
    std::vector<int> keep(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q) {
        keep[static_cast<std::size_t>(q)] = q;
    }
    memory.ancillas[static_cast<std::size_t>(slot)] = partial_trace(joint, eve_qubits);
    memory.copies[static_cast<std::size_t>(slot)] = reduced_qubit(joint, m);
    return partial_trace(joint, keep);
}

}  // namespace detail

/// Applies the strategy to the transit register travelling in `direction`.
/// `memory` must have been reset with begin_round for this round.
inline QuantumState eve_interpose(const AttackStrategy &strategy, Direction direction, const QuantumState &transit,
                                  EveMemory &memory, Rng &rng) {
    int m = transit.num_qubits();
    if (memory.copies.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument("eve_interpose: memory not prepared for this register");
    }
    if (direction == Direction::AtoB || strategy.kind() == AttackKind::None) {
        return transit;
    }
    QuantumState state = transit;
    for (int slot = 0; slot < m; ++slot) {
        switch (strategy.kind()) {
            case AttackKind::None:
                break;
            case AttackKind::InterceptResendZ:
            case AttackKind::InterceptResendX:
            case AttackKind::InterceptResendRandom: {
                if (!bernoulli(rng, strategy.parameter())) {
                    break;
                }
                BasisLabel basis = BasisLabel::Z;
                if (strategy.kind() == AttackKind::InterceptResendX) {
                    basis = BasisLabel::X;
                } else if (strategy.kind() == AttackKind::InterceptResendRandom) {
                    basis = uniform_index(rng, 2) ? BasisLabel::X : BasisLabel::Z;
                }
                auto result = measure(state, basis, slot, rng);
                state = result.post_state;
                memory.copies[static_cast<std::size_t>(slot)] = make_state(label_from(basis, result.outcome));
                break;
            }
            case AttackKind::UniversalClone: {
                auto [alice_clone, eve_clone] = universal_clone(m == 1 ? state : reduced_qubit(state, slot));
                state = m == 1 ? alice_clone : depolarize_qubit(state, slot, 2.0 / 3.0);
                memory.copies[static_cast<std::size_t>(slot)] = eve_clone;
                break;
            }
            case AttackKind::GeneralProbe:
                state = detail::probe_slot(state, slot, *strategy.probe(), memory);
                break;
        }
    }
    return state;
}

/// Per-slot contamination rates of one strategy.
struct ContaminationProfile {
    /// Learning samples Alice records with the wrong label.
    double eta_a_samples = 0.0;
    /// Test rounds where Alice's X measurement disagrees with what she sent.
    double eta_a_test = 0.0;
    /// Wrong labels among the samples Eve actually holds (1/2 if none).
    double eta_e_samples = 0.5;
    /// Eve's error over every learning slot, erasures scored at the guessing
    /// rate 1/2.
    double eta_e_effective = 0.5;

    double eta_a_effective() const { return std::max(eta_a_samples, eta_a_test); }
};

/// Closed-form rates. Throws for GeneralProbe (use a measured profile).
inline ContaminationProfile predicted_profile(const AttackStrategy &strategy) {
    double p = strategy.parameter();
    switch (strategy.kind()) {
        case AttackKind::None:
            return {0.0, 0.0, 0.5, 0.5};
        case AttackKind::InterceptResendZ:
            return {0.0, p / 2.0, p > 0.0 ? 0.0 : 0.5, (1.0 - p) / 2.0};
        case AttackKind::InterceptResendX:
            return {p / 2.0, 0.0, 0.5, 0.5};
        case AttackKind::InterceptResendRandom:
            return {p / 4.0, p / 4.0, p > 0.0 ? 0.25 : 0.5, 0.5 - p / 4.0};
        case AttackKind::UniversalClone:
            return {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
        case AttackKind::GeneralProbe:
            break;
    }
    throw std::invalid_argument("predicted_profile: no closed form for general probes");
}

/// Ensemble-averaged single-slot states after the attack on the returning leg.
struct DeliveredStates {
    QuantumState alice;
    /// Eve's copy conditioned on her holding one; I/2 when she never does.
    QuantumState eve;
};

namespace detail {

inline QuantumState dephase(const QuantumState &rho, BasisLabel basis) {
    Matrix out = Matrix::Zero(2, 2);
    for (int bit = 0; bit < 2; ++bit) {
        Matrix p = projector(basis, bit);
        out += p * rho.matrix() * p;
    }
    return QuantumState::unchecked(out);
}

}  // namespace detail

/// Channel-level (density operator) description of the attack on one qubit,
/// computed without sampling.
inline DeliveredStates delivered_states(const AttackStrategy &strategy, const QuantumState &ideal) {
    if (ideal.num_qubits() != 1) {
        throw std::invalid_argument("delivered_states: single-qubit state required");
    }
    double p = strategy.parameter();
    QuantumState mixed = QuantumState::maximally_mixed(1);
    switch (strategy.kind()) {
        case AttackKind::None:
            return {ideal, mixed};
        case AttackKind::InterceptResendZ:
        case AttackKind::InterceptResendX:
        case AttackKind::InterceptResendRandom: {
            Matrix measured;
            if (strategy.kind() == AttackKind::InterceptResendRandom) {
                measured = 0.5 * (detail::dephase(ideal, BasisLabel::Z).matrix() +
                                  detail::dephase(ideal, BasisLabel::X).matrix());
            } else {
                BasisLabel b = strategy.kind() == AttackKind::InterceptResendZ ? BasisLabel::Z : BasisLabel::X;
                measured = detail::dephase(ideal, b).matrix();
            }
            QuantumState alice = QuantumState::unchecked((1.0 - p) * ideal.matrix() + p * measured);
            return {alice, p > 0.0 ? QuantumState::unchecked(measured) : mixed};
        }
        case AttackKind::UniversalClone: {
            auto [a, e] = universal_clone(ideal);
            return {a, e};
        }
        case AttackKind::GeneralProbe: {
            EveMemory memory;
            memory.begin_round(1);
            QuantumState alice = detail::probe_slot(ideal, 0, *strategy.probe(), memory);
            return {alice, *memory.copies[0]};
        }
    }
    throw std::logic_error("delivered_states: unhandled strategy");
}

/// The four ideal oracle output states |0>, |1>, |+>, |->.
inline std::array<StateLabel, 4> protocol_states() {
    return {StateLabel::Zero, StateLabel::One, StateLabel::Plus, StateLabel::Minus};
}

/// 1 - min_s F(rho_s, delivered state), for Alice and for Eve.
struct FidelityBound {
    double alice = 0.0;
    double eve = 0.0;
};

inline FidelityBound fidelity_bound(const AttackStrategy &strategy) {
    double min_alice = 1.0;
    double min_eve = 1.0;
    for (StateLabel s : protocol_states()) {
        QuantumState ideal = make_state(s);
        DeliveredStates d = delivered_states(strategy, ideal);
        min_alice = std::min(min_alice, fidelity(ideal, d.alice));
        min_eve = std::min(min_eve, fidelity(ideal, d.eve));
    }
    return {1.0 - min_alice, 1.0 - min_eve};
}

/// Monte Carlo error rates when each learner measures its state in the
/// eigenbasis of the ideal state it should hold, per protocol state.
struct PerStateErrors {
    std::array<double, 4> alice{};
    std::array<double, 4> eve{};

    double alice_max() const { return *std::max_element(alice.begin(), alice.end()); }
    double eve_max() const { return *std::max_element(eve.begin(), eve.end()); }
};

inline PerStateErrors per_state_errors(const AttackStrategy &strategy, std::size_t rounds, Rng &rng) {
    if (rounds == 0) {
        throw std::invalid_argument("per_state_errors: rounds must be positive");
    }
    PerStateErrors out;
    auto states = protocol_states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        QuantumState ideal = make_state(states[i]);
        BasisLabel basis = basis_of(states[i]);
        int expected = bit_of(states[i]);
        std::size_t alice_wrong = 0;
        std::size_t eve_wrong = 0;
        for (std::size_t r = 0; r < rounds; ++r) {
            EveMemory memory;
            memory.begin_round(1);
            QuantumState forwarded = eve_interpose(strategy, Direction::BtoA, ideal, memory, rng);
            alice_wrong += measure(forwarded, basis, 0, rng).outcome != expected;
            // Without a copy Eve can only guess.
            int eve_bit = memory.copies[0] ? measure(*memory.copies[0], basis, 0, rng).outcome
                                           : static_cast<int>(uniform_index(rng, 2));
            eve_wrong += eve_bit != expected;
        }
        out.alice[i] = static_cast<double>(alice_wrong) / static_cast<double>(rounds);
        out.eve[i] = static_cast<double>(eve_wrong) / static_cast<double>(rounds);
    }
    return out;
}

}  // namespace qsl

#endif
