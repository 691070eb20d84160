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

#ifndef QSL_ROUND_HPP
#define QSL_ROUND_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsl/adversary.hpp"
#include "qsl/oracle.hpp"
#include "qsl/qcore.hpp"
#include "qsl/random.hpp"

namespace qsl {

enum class RoundKind { Learning, Test };

/// Bit x set iff input value x is in the set (n <= 6 fits in 64 bits).
using InputSet = std::uint64_t;

enum class TestInputPolicy {
    /// Test inputs must avoid 0^n and every learning input used so far.
    FreshOnly,
    /// As FreshOnly while a fresh input exists; afterwards any r != 0^n.
    ReuseWhenExhausted,
};

struct RoundPlan {
    RoundKind kind;
    ClassicalInput input;
    /// One prepared state per label slot (Z eigenstates for learning rounds,
    /// X eigenstates for test rounds).
    std::vector<StateLabel> labels;
    bool fresh_input = true;
};

class InputSpaceExhausted : public std::runtime_error {
   public:
    InputSpaceExhausted() : std::runtime_error("no fresh nonzero test input remains") {}
};

namespace detail {

inline InputSet fresh_test_inputs(InputSet used, int n) {
    InputSet all = n == 6 ? ~InputSet{0} : ((InputSet{1} << (1u << n)) - 1);
    return all & ~used & ~InputSet{1};
}

inline std::uint32_t nth_set_bit(InputSet set, std::uint64_t index) {
    for (std::uint64_t i = 0; i < index; ++i) {
        set &= set - 1;
    }
    return static_cast<std::uint32_t>(std::countr_zero(set));
}

}  // namespace detail

/// Alice's round choice: learning or test with probability 1/2, equiprobable
/// states within the kind, learning inputs uniform over {0,1}^n, test inputs
/// uniform over the nonzero inputs not yet used for learning.
inline RoundPlan alice_prepare_round(Rng &rng, InputSet used_inputs, int n, int m = 1,
                                     TestInputPolicy policy = TestInputPolicy::FreshOnly) {
    if (n < 1 || n > kMaxInputBits) {
        throw std::invalid_argument("alice_prepare_round: width must lie in [1, 6]");
    }
    if (m < 1 || m > kMaxLabels) {
        throw std::invalid_argument("alice_prepare_round: label count must lie in [1, 8]");
    }
    InputSet fresh = detail::fresh_test_inputs(used_inputs, n);
    if (fresh == 0 && policy == TestInputPolicy::FreshOnly) {
        throw InputSpaceExhausted();
    }
    RoundKind kind = uniform_index(rng, 2) ? RoundKind::Test : RoundKind::Learning;
    BasisLabel basis = kind == RoundKind::Learning ? BasisLabel::Z : BasisLabel::X;
    std::vector<StateLabel> labels;
    for (int l = 0; l < m; ++l) {
        labels.push_back(label_from(basis, static_cast<int>(uniform_index(rng, 2))));
    }
    std::uint64_t space = std::uint64_t{1} << n;
    if (kind == RoundKind::Learning) {
        return RoundPlan{kind, ClassicalInput(n, static_cast<std::uint32_t>(uniform_index(rng, space))), labels, true};
    }
    bool is_fresh = fresh != 0;
    InputSet pool = is_fresh ? fresh : detail::fresh_test_inputs(0, n);
    std::uint32_t r = detail::nth_set_bit(pool, uniform_index(rng, static_cast<std::uint64_t>(std::popcount(pool))));
    return RoundPlan{kind, ClassicalInput(n, r), labels, is_fresh};
}

/// Everything one round produced, including simulator-only ground truth.
struct RoundOutcome {
    RoundPlan plan;
    /// Alice's raw measurement outcomes, bit l for slot l.
    LabelBits measured = 0;
    /// Learning rounds: Alice's recorded labels (outcome xor sent bit).
    LabelBits labels = 0;
    /// Test rounds: slots whose X outcome differs from the sent state.
    int mismatches = 0;
    /// Learning rounds: slots whose label differs from the concept.
    int contaminated_slots = 0;
    /// Slots where Eve retained a copy this round.
    LabelBits eve_slots = 0;
    /// Eve's labels decoded against the ideal output state (learning rounds).
    LabelBits eve_labels = 0;
    int eve_wrong_slots = 0;

    bool contaminated() const { return contaminated_slots > 0; }
};

namespace detail {

inline QuantumState channel_noise(QuantumState state, double shrink) {
    if (shrink == 1.0) {
        return state;
    }
    for (int q = 0; q < state.num_qubits(); ++q) {
        state = depolarize_qubit(state, q, shrink);
    }
    return state;
}

}  // namespace detail

/// Runs one lockstep round: A -> B transit (adversary, channel noise), Bob's
/// oracle, B -> A transit (adversary, channel noise), Alice's measurement.
inline RoundOutcome execute_round(const RoundPlan &plan, const OracleSpec &spec, const AttackStrategy &attack,
                                  double channel_shrink, Rng &rng) {
    int m = spec.num_labels();
    if (static_cast<int>(plan.labels.size()) != m) {
        throw std::invalid_argument("execute_round: plan label count differs from oracle label count");
    }
    std::vector<QuantumState> prepared;
    for (StateLabel l : plan.labels) {
        prepared.push_back(make_state(l));
    }
    QuantumState transit = tensor(std::span<const QuantumState>(prepared));
    EveMemory memory;
    memory.begin_round(m);
    transit = eve_interpose(attack, Direction::AtoB, transit, memory, rng);
    transit = detail::channel_noise(transit, channel_shrink);
    transit = oracle_apply(spec, plan.input, transit);
    transit = eve_interpose(attack, Direction::BtoA, transit, memory, rng);
    transit = detail::channel_noise(transit, channel_shrink);

    RoundOutcome out{plan};
    BasisLabel basis = plan.kind == RoundKind::Learning ? BasisLabel::Z : BasisLabel::X;
    LabelBits truth = oracle_labels(spec, plan.input);
    for (int l = 0; l < m; ++l) {
        auto result = measure(transit, basis, l, rng);
        transit = result.post_state;
        int sent = bit_of(plan.labels[static_cast<std::size_t>(l)]);
        out.measured |= static_cast<LabelBits>(result.outcome) << l;
        if (plan.kind == RoundKind::Learning) {
            int label = result.outcome ^ sent;
            out.labels |= static_cast<LabelBits>(label) << l;
            out.contaminated_slots += label != static_cast<int>((truth >> l) & 1);
        } else {
            out.mismatches += result.outcome != sent;
        }
    }
    for (int l = 0; l < m; ++l) {
        const auto &copy = memory.copies[static_cast<std::size_t>(l)];
        if (!copy) {
            continue;
        }
        out.eve_slots |= LabelBits{1} << l;
        if (plan.kind == RoundKind::Learning) {
            int sent = bit_of(plan.labels[static_cast<std::size_t>(l)]);
            int label = measure(*copy, BasisLabel::Z, 0, rng).outcome ^ sent;
            out.eve_labels |= static_cast<LabelBits>(label) << l;
            out.eve_wrong_slots += label != static_cast<int>((truth >> l) & 1);
        }
    }
    return out;
}

}  // namespace qsl

#endif
