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

#include "qsl/qcore.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace qsl;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

void expect_matrix_near(const Matrix &a, const Matrix &b, double tol = 1e-12) {
    ASSERT_EQ(a.rows(), b.rows());
    ASSERT_EQ(a.cols(), b.cols());
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), tol) << "got\n" << a << "\nexpected\n" << b;
}

void expect_valid(const QuantumState &s) {
    EXPECT_NEAR(s.matrix().trace().real(), 1.0, 1e-10);
    EXPECT_NEAR(s.matrix().trace().imag(), 0.0, 1e-10);
    EXPECT_TRUE(is_valid_state(s.matrix()));
}

QuantumState random_pure(Rng &rng, int qubits = 1) {
    std::normal_distribution<double> g;
    Ket k(Eigen::Index{1} << qubits);
    for (Eigen::Index i = 0; i < k.size(); ++i) {
        k(i) = Complex(g(rng), g(rng));
    }
    return QuantumState::from_ket(k);
}

QuantumState random_mixed(Rng &rng, int qubits = 1) {
    std::normal_distribution<double> g;
    Eigen::Index d = Eigen::Index{1} << qubits;
    Matrix a(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            a(r, c) = Complex(g(rng), g(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    return QuantumState(rho / rho.trace().real());
}

}  // namespace

TEST(qcore, make_state_matrices) {
    expect_matrix_near(make_state(StateLabel::Zero).matrix(), diag2(1, 0));
    expect_matrix_near(make_state(StateLabel::One).matrix(), diag2(0, 1));
    Matrix plus = Matrix::Constant(2, 2, 0.5);
    expect_matrix_near(make_state(StateLabel::Plus).matrix(), plus);
    Matrix minus(2, 2);
    minus << 0.5, -0.5, -0.5, 0.5;
    expect_matrix_near(make_state(StateLabel::Minus).matrix(), minus);
}

TEST(qcore, state_validation_rejects_bad_matrices) {
    EXPECT_THROW(QuantumState(diag2(0.5, 0.6)), std::invalid_argument);
    EXPECT_THROW(QuantumState(diag2(1.2, -0.2)), std::invalid_argument);
    Matrix nonherm = diag2(0.5, 0.5);
    nonherm(0, 1) = 0.3;
    EXPECT_THROW(QuantumState{nonherm}, std::invalid_argument);
    EXPECT_THROW(QuantumState(Matrix::Identity(3, 3) / 3.0), std::invalid_argument);
    EXPECT_THROW(QuantumState::maximally_mixed(9), std::invalid_argument);
}

TEST(qcore, apply_gate_examples) {
    // i sigma_y |0> = -|1>; the sign disappears in density form.
    expect_matrix_near(apply_gate(make_state(StateLabel::Zero), Gate::i_sigma_y(), 0).matrix(), diag2(0, 1));
    expect_matrix_near(apply_gate(make_state(StateLabel::Plus), Gate::pauli_z(), 0).matrix(),
                       make_state(StateLabel::Minus).matrix());
    Rng rng(3);
    QuantumState rho = random_mixed(rng);
    expect_matrix_near(apply_gate(rho, Gate::identity(), 0).matrix(), rho.matrix());
}

TEST(qcore, apply_gate_errors) {
    EXPECT_THROW(apply_gate(make_state(StateLabel::Zero), Gate::pauli_x(), 1), std::out_of_range);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = 1;
    EXPECT_THROW(Gate::custom(bad), std::invalid_argument);
}

TEST(qcore, apply_gate_on_second_qubit_of_register) {
    QuantumState s = tensor({make_state(StateLabel::Zero), make_state(StateLabel::Zero)});
    QuantumState flipped = apply_gate(s, Gate::pauli_x(), 1);
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 1;  // |01>
    expect_matrix_near(flipped.matrix(), expected);
}

TEST(qcore, i_sigma_y_twice_is_identity_on_density) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        QuantumState rho = random_mixed(rng);
        QuantumState twice = apply_gate(apply_gate(rho, Gate::i_sigma_y(), 0), Gate::i_sigma_y(), 0);
        expect_matrix_near(twice.matrix(), rho.matrix());
    }
}

TEST(qcore, gates_preserve_trace_and_hermiticity) {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        QuantumState rho = random_mixed(rng, 3);
        for (const Gate &g : {Gate::pauli_x(), Gate::pauli_y(), Gate::pauli_z(), Gate::i_sigma_y()}) {
            QuantumState out = apply_gate(rho, g, static_cast<int>(i % 3));
            expect_valid(out);
            EXPECT_LT((out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(qcore, measure_deterministic_and_post_state) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        auto r = measure(make_state(StateLabel::Zero), BasisLabel::Z, 0, rng);
        EXPECT_EQ(r.outcome, 0);
        expect_matrix_near(r.post_state.matrix(), diag2(1, 0));
    }
    auto r = measure(make_state(StateLabel::Minus), BasisLabel::X, 0, rng);
    EXPECT_EQ(r.outcome, 1);
}

TEST(qcore, measure_plus_in_z_frequency) {
    Rng rng(2024);
    int zeros = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        zeros += measure(make_state(StateLabel::Plus), BasisLabel::Z, 0, rng).outcome == 0;
    }
    EXPECT_NEAR(static_cast<double>(zeros) / trials, 0.5, 0.01);
}

TEST(qcore, measure_depolarized_plus_probability) {
    // (1 + s)/2 at s = 2/3.
    QuantumState s = depolarize(make_state(StateLabel::Plus), 2.0 / 3.0);
    EXPECT_NEAR(outcome_probability(s, BasisLabel::X, 0, 0), 5.0 / 6.0, 1e-12);
    EXPECT_NEAR(outcome_probability(s, BasisLabel::X, 0, 0) + outcome_probability(s, BasisLabel::X, 0, 1), 1.0,
                1e-12);
}

TEST(qcore, measure_partial_collapses_register) {
    // (|00> + |11>)/sqrt2: measuring qubit 0 fixes qubit 1.
    Ket bell = Ket::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        auto r = measure(QuantumState::from_ket(bell), BasisLabel::Z, 0, rng);
        QuantumState second = reduced_qubit(r.post_state, 1);
        EXPECT_NEAR(outcome_probability(second, BasisLabel::Z, 0, r.outcome), 1.0, 1e-12);
    }
}

TEST(qcore, fidelity_examples) {
    Rng rng(7);
    QuantumState rho = random_mixed(rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
    EXPECT_NEAR(fidelity(make_state(StateLabel::Zero), make_state(StateLabel::Plus)), 0.5, 1e-12);
    EXPECT_NEAR(fidelity(make_state(StateLabel::Minus), QuantumState::maximally_mixed(1)), 0.5, 1e-12);
    EXPECT_THROW(fidelity(make_state(StateLabel::Zero), QuantumState::maximally_mixed(2)), std::invalid_argument);
}

TEST(qcore, fidelity_matches_qubit_closed_form) {
    // Independent route for qubits: F = tr(rho sigma) + 2 sqrt(det rho det sigma).
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        QuantumState a = random_mixed(rng);
        QuantumState b = random_mixed(rng);
        double closed = (a.matrix() * b.matrix()).trace().real() +
                        2.0 * std::sqrt(a.matrix().determinant().real() * b.matrix().determinant().real());
        EXPECT_NEAR(fidelity(a, b), closed, 1e-9);
    }
}

TEST(qcore, fidelity_symmetric) {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        int q = 1 + i % 3;
        QuantumState a = (i % 2) ? random_mixed(rng, q) : random_pure(rng, q);
        QuantumState b = random_mixed(rng, q);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-10);
        EXPECT_NEAR(fidelity(a, a), 1.0, 1e-10);
    }
}

TEST(qcore, depolarize_examples) {
    Rng rng(19);
    QuantumState rho = random_mixed(rng);
    expect_matrix_near(depolarize(rho, 1.0).matrix(), rho.matrix());
    expect_matrix_near(depolarize(rho, 0.0).matrix(), diag2(0.5, 0.5));
    expect_matrix_near(depolarize(make_state(StateLabel::Zero), 2.0 / 3.0).matrix(), diag2(5.0 / 6.0, 1.0 / 6.0));
    EXPECT_THROW(depolarize(rho, 1.5), std::invalid_argument);
    EXPECT_THROW(depolarize(rho, -0.1), std::invalid_argument);
    EXPECT_THROW(depolarize(QuantumState::maximally_mixed(2), 0.5), std::invalid_argument);
}

TEST(qcore, depolarize_qubit_matches_single_qubit_map_on_products) {
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        QuantumState a = random_mixed(rng);
        QuantumState b = random_mixed(rng);
        QuantumState joint = tensor({a, b});
        QuantumState local = depolarize_qubit(joint, 1, 0.4);
        expect_matrix_near(local.matrix(), tensor({a, depolarize(b, 0.4)}).matrix());
    }
}

TEST(qcore, universal_clone_examples) {
    auto [a, e] = universal_clone(make_state(StateLabel::Zero));
    expect_matrix_near(a.matrix(), diag2(5.0 / 6.0, 1.0 / 6.0));
    expect_matrix_near(e.matrix(), diag2(5.0 / 6.0, 1.0 / 6.0));
    auto [ma, me] = universal_clone(QuantumState::maximally_mixed(1));
    expect_matrix_near(ma.matrix(), diag2(0.5, 0.5));
    expect_matrix_near(me.matrix(), diag2(0.5, 0.5));
    EXPECT_THROW(universal_clone(QuantumState::maximally_mixed(2)), std::invalid_argument);
}

TEST(qcore, universal_clone_fidelity_five_sixths) {
    Rng rng(29);
    for (int i = 0; i < 100; ++i) {
        QuantumState psi = random_pure(rng);
        auto [a, e] = universal_clone(psi);
        EXPECT_NEAR(fidelity(psi, a), 5.0 / 6.0, 1e-12);
        EXPECT_NEAR(fidelity(psi, e), 5.0 / 6.0, 1e-12);
    }
}

TEST(qcore, tensor_examples) {
    Matrix e00 = Matrix::Zero(4, 4);
    e00(0, 0) = 1;
    expect_matrix_near(tensor({make_state(StateLabel::Zero), make_state(StateLabel::Zero)}).matrix(), e00);
    expect_matrix_near(tensor({make_state(StateLabel::Plus)}).matrix(), make_state(StateLabel::Plus).matrix());
    QuantumState t = tensor({make_state(StateLabel::Zero), make_state(StateLabel::Plus)});
    EXPECT_NEAR(fidelity(t, t), 1.0, 1e-12);
    std::vector<QuantumState> nine(9, make_state(StateLabel::Zero));
    EXPECT_THROW(tensor(std::span<const QuantumState>(nine)), std::invalid_argument);
}

TEST(qcore, partial_trace_inverts_tensor) {
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        QuantumState a = random_mixed(rng);
        QuantumState b = random_mixed(rng, 2);
        QuantumState joint = tensor({a, b});
        expect_matrix_near(reduced_qubit(joint, 0).matrix(), a.matrix());
        int keep[] = {1, 2};
        expect_matrix_near(partial_trace(joint, keep).matrix(), b.matrix());
        expect_valid(partial_trace(joint, keep));
    }
}

TEST(qcore, same_state_ignores_global_phase) {
    Ket k(2);
    k << Complex(0, 1) / std::sqrt(2.0), Complex(0, 1) / std::sqrt(2.0);
    EXPECT_TRUE(same_state(QuantumState::from_ket(k), make_state(StateLabel::Plus)));
    EXPECT_FALSE(same_state(make_state(StateLabel::Minus), make_state(StateLabel::Plus)));
}
