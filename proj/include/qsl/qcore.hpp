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

#ifndef QSL_QCORE_HPP
#define QSL_QCORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsl/random.hpp"

namespace qsl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 8;
/// Structural tolerance for hermiticity, trace and positivity checks.
inline constexpr double kStateTolerance = 1e-10;
/// Two states are considered equal when their fidelity is at least 1 - this.
inline constexpr double kEqualityTolerance = 1e-12;

enum class StateLabel { Zero, One, Plus, Minus };
enum class BasisLabel { Z, X };

inline BasisLabel basis_of(StateLabel label) {
    return (label == StateLabel::Zero || label == StateLabel::One) ? BasisLabel::Z : BasisLabel::X;
}

/// Eigenvalue index of the label inside its basis: 0 for |0>,|+>; 1 for |1>,|->.
inline int bit_of(StateLabel label) {
    return (label == StateLabel::One || label == StateLabel::Minus) ? 1 : 0;
}

inline StateLabel label_from(BasisLabel basis, int bit) {
    if (basis == BasisLabel::Z) {
        return bit ? StateLabel::One : StateLabel::Zero;
    }
    return bit ? StateLabel::Minus : StateLabel::Plus;
}

inline char label_char(StateLabel label) {
    switch (label) {
        case StateLabel::Zero:
            return '0';
        case StateLabel::One:
            return '1';
        case StateLabel::Plus:
            return '+';
        case StateLabel::Minus:
            return '-';
    }
    return '?';
}

namespace detail {

inline int qubits_for_dimension(Eigen::Index dim) {
    int q = 0;
    while ((Eigen::Index{1} << q) < dim) {
        ++q;
    }
    if ((Eigen::Index{1} << q) != dim) {
        throw std::invalid_argument("matrix dimension is not a power of two");
    }
    return q;
}

inline double hermiticity_error(const Matrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Density operator on 1..8 qubits. Qubit 0 is the most significant tensor
/// factor (leftmost in a Kronecker product).
class QuantumState {
   public:
    /// Validates hermiticity, unit trace and positivity.
    explicit QuantumState(Matrix matrix) : matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
            throw std::invalid_argument("density matrix must be square with dimension >= 2");
        }
        num_qubits_ = detail::qubits_for_dimension(matrix_.rows());
        if (num_qubits_ > kMaxQubits) {
            throw std::invalid_argument("at most 8 qubits are supported");
        }
        if (detail::hermiticity_error(matrix_) > kStateTolerance) {
            throw std::invalid_argument("density matrix is not Hermitian");
        }
        if (std::abs(matrix_.trace() - Complex(1.0)) > kStateTolerance) {
            throw std::invalid_argument("density matrix trace differs from 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -kStateTolerance) {
            throw std::invalid_argument("density matrix has a negative eigenvalue");
        }
    }

    static QuantumState from_ket(const Ket &ket) {
        double norm = ket.norm();
        if (norm == 0.0) {
            throw std::invalid_argument("zero ket");
        }
        Ket unit = ket / norm;
        return unchecked(unit * unit.adjoint());
    }

    /// Skips validation; for results of trace-preserving maps on valid states.
    static QuantumState unchecked(Matrix matrix) {
        QuantumState s;
        s.num_qubits_ = detail::qubits_for_dimension(matrix.rows());
        s.matrix_ = std::move(matrix);
        return s;
    }

    static QuantumState maximally_mixed(int num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("qubit count out of range");
        }
        Eigen::Index dim = Eigen::Index{1} << num_qubits;
        return unchecked(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    const Matrix &matrix() const { return matrix_; }
    Complex operator()(Eigen::Index row, Eigen::Index col) const { return matrix_(row, col); }

    double purity() const { return (matrix_ * matrix_).trace().real(); }

   private:
    QuantumState() = default;

    int num_qubits_ = 1;
    Matrix matrix_;
};

enum class GateLabel { Identity, PauliX, PauliY, PauliZ, ISigmaY, Custom };

/// Unitary acting on one qubit, or on `num_qubits()` consecutive qubits for
/// custom joint gates.
class Gate {
   public:
    static Gate identity() { return Gate(GateLabel::Identity, Matrix::Identity(2, 2)); }
    static Gate pauli_x() {
        Matrix m(2, 2);
        m << 0, 1, 1, 0;
        return Gate(GateLabel::PauliX, m);
    }
    static Gate pauli_y() {
        Matrix m(2, 2);
        m << 0, Complex(0, -1), Complex(0, 1), 0;
        return Gate(GateLabel::PauliY, m);
    }
    static Gate pauli_z() {
        Matrix m(2, 2);
        m << 1, 0, 0, -1;
        return Gate(GateLabel::PauliZ, m);
    }
    /// i*sigma_y = [[0, 1], [-1, 0]].
    static Gate i_sigma_y() {
        Matrix m(2, 2);
        m << 0, 1, -1, 0;
        return Gate(GateLabel::ISigmaY, m);
    }
    static Gate custom(Matrix matrix) {
        if (matrix.rows() != matrix.cols() || matrix.rows() < 2) {
            throw std::invalid_argument("gate matrix must be square with dimension >= 2");
        }
        detail::qubits_for_dimension(matrix.rows());
        Matrix check = matrix.adjoint() * matrix - Matrix::Identity(matrix.rows(), matrix.cols());
        if (check.cwiseAbs().maxCoeff() > kStateTolerance) {
            throw std::invalid_argument("gate matrix is not unitary");
        }
        return Gate(GateLabel::Custom, std::move(matrix));
    }

    GateLabel label() const { return label_; }
    const Matrix &matrix() const { return matrix_; }
    int num_qubits() const { return detail::qubits_for_dimension(matrix_.rows()); }

   private:
    Gate(GateLabel label, Matrix matrix) : label_(label), matrix_(std::move(matrix)) {}

    GateLabel label_;
    Matrix matrix_;
};

inline QuantumState make_state(StateLabel label) {
    const double h = 1.0 / std::sqrt(2.0);
    Ket ket(2);
    switch (label) {
        case StateLabel::Zero:
            ket << 1, 0;
            break;
        case StateLabel::One:
            ket << 0, 1;
            break;
        case StateLabel::Plus:
            ket << h, h;
            break;
        case StateLabel::Minus:
            ket << h, -h;
            break;
    }
    return QuantumState::from_ket(ket);
}

namespace detail {

inline void check_targets(int num_qubits, std::span<const int> targets) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= num_qubits) {
            throw std::out_of_range("qubit index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("repeated qubit index");
            }
        }
    }
}

/// Bit position (in a basis index) of qubit q in an n-qubit register.
inline int bit_position(int num_qubits, int qubit) { return num_qubits - 1 - qubit; }

/// Gathers the bits of `index` at `targets` into a gate-local index.
inline Eigen::Index gather(Eigen::Index index, int num_qubits, std::span<const int> targets) {
    Eigen::Index local = 0;
    for (int t : targets) {
        local = (local << 1) | ((index >> bit_position(num_qubits, t)) & 1);
    }
    return local;
}

/// Embeds `op` acting on `targets` into the full register (identity elsewhere).
inline Matrix embed(const Matrix &op, int num_qubits, std::span<const int> targets) {
    Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Eigen::Index target_mask = 0;
    for (int t : targets) {
        target_mask |= Eigen::Index{1} << bit_position(num_qubits, t);
    }
    Matrix full = Matrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            if ((r & ~target_mask) != (c & ~target_mask)) {
                continue;
            }
            full(r, c) = op(gather(r, num_qubits, targets), gather(c, num_qubits, targets));
        }
    }
    return full;
}

inline Matrix conjugate(const Matrix &u, const Matrix &rho) { return u * rho * u.adjoint(); }

inline Matrix projector(BasisLabel basis, int bit) {
    return make_state(label_from(basis, bit)).matrix();
}

}  // namespace detail

/// rho -> U rho U^dagger with U acting on `targets` (gate-local qubit order).
inline QuantumState apply_gate(const QuantumState &state, const Gate &gate, std::span<const int> targets) {
    if (static_cast<int>(targets.size()) != gate.num_qubits()) {
        throw std::invalid_argument("gate arity does not match target count");
    }
    detail::check_targets(state.num_qubits(), targets);
    if (state.num_qubits() == gate.num_qubits() && std::is_sorted(targets.begin(), targets.end())) {
        return QuantumState::unchecked(detail::conjugate(gate.matrix(), state.matrix()));
    }
    Matrix full = detail::embed(gate.matrix(), state.num_qubits(), targets);
    return QuantumState::unchecked(detail::conjugate(full, state.matrix()));
}

/// Applies the gate to qubits target, target+1, ... (as many as the gate spans).
inline QuantumState apply_gate(const QuantumState &state, const Gate &gate, int target) {
    std::vector<int> targets;
    for (int i = 0; i < gate.num_qubits(); ++i) {
        targets.push_back(target + i);
    }
    return apply_gate(state, gate, std::span<const int>(targets));
}

/// Born probability of `outcome` when measuring qubit `target` in `basis`.
inline double outcome_probability(const QuantumState &state, BasisLabel basis, int target, int outcome) {
    int t[] = {target};
    detail::check_targets(state.num_qubits(), t);
    Matrix p = detail::embed(detail::projector(basis, outcome), state.num_qubits(), t);
    return std::clamp((p * state.matrix()).trace().real(), 0.0, 1.0);
}

struct MeasureResult {
    int outcome;
    QuantumState post_state;
};

/// Projective measurement of one qubit. Outcome 0 is |0> (Z) or |+> (X).
inline MeasureResult measure(const QuantumState &state, BasisLabel basis, int target, Rng &rng) {
    int t[] = {target};
    detail::check_targets(state.num_qubits(), t);
    Matrix p0 = detail::embed(detail::projector(basis, 0), state.num_qubits(), t);
    double prob0 = std::clamp((p0 * state.matrix()).trace().real(), 0.0, 1.0);
    int outcome = uniform01(rng) < prob0 ? 0 : 1;
    Matrix p = outcome == 0 ? p0 : detail::embed(detail::projector(basis, 1), state.num_qubits(), t);
    double prob = outcome == 0 ? prob0 : 1.0 - prob0;
    Matrix post = p * state.matrix() * p / prob;
    return {outcome, QuantumState::unchecked(0.5 * (post + post.adjoint()))};
}

/// Jozsa fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const QuantumState &rho, const QuantumState &sigma) {
    if (rho.dimension() != sigma.dimension()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    double overlap = (rho.matrix() * sigma.matrix()).trace().real();
    // For a pure argument the fidelity is exactly tr(rho sigma); taking the
    // square-root route there would amplify rounding in the null space.
    if (rho.purity() > 1.0 - kEqualityTolerance || sigma.purity() > 1.0 - kEqualityTolerance) {
        return std::clamp(overlap, 0.0, 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> rs(rho.matrix());
    Eigen::VectorXd root = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Matrix sqrt_rho = rs.eigenvectors() * root.asDiagonal() * rs.eigenvectors().adjoint();
    Matrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Matrix> is(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    double s = is.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(s * s, 0.0, 1.0);
}

inline bool same_state(const QuantumState &a, const QuantumState &b) {
    return a.dimension() == b.dimension() && fidelity(a, b) >= 1.0 - kEqualityTolerance;
}

/// Single-qubit depolarizing map rho -> s*rho + (1-s)*I/2.
inline QuantumState depolarize(const QuantumState &state, double shrink) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument("depolarize: single-qubit state required");
    }
    if (!(shrink >= 0.0 && shrink <= 1.0)) {
        throw std::invalid_argument("depolarize: shrink must lie in [0, 1]");
    }
    return QuantumState::unchecked(shrink * state.matrix() + (1.0 - shrink) * 0.5 * Matrix::Identity(2, 2));
}

/// Local depolarizing map on one qubit of a register. Equivalent to replacing
/// that qubit by I/2 with probability 1-s (a Pauli twirl).
inline QuantumState depolarize_qubit(const QuantumState &state, int target, double shrink) {
    if (!(shrink >= 0.0 && shrink <= 1.0)) {
        throw std::invalid_argument("depolarize: shrink must lie in [0, 1]");
    }
    if (shrink == 1.0) {
        return state;
    }
    int t[] = {target};
    detail::check_targets(state.num_qubits(), t);
    Matrix twirl = state.matrix();
    for (const Gate &p : {Gate::pauli_x(), Gate::pauli_y(), Gate::pauli_z()}) {
        twirl += apply_gate(state, p, std::span<const int>(t)).matrix();
    }
    return QuantumState::unchecked(shrink * state.matrix() + (1.0 - shrink) * 0.25 * twirl);
}

/// Optimal symmetric universal 1->2 qubit cloner, reduced to its two clones.
/// Each clone is the input shrunk by 2/3 towards I/2 (clone fidelity 5/6).
inline std::pair<QuantumState, QuantumState> universal_clone(const QuantumState &state) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument("universal_clone: single-qubit state required");
    }
    QuantumState clone = depolarize(state, 2.0 / 3.0);
    return {clone, clone};
}

inline QuantumState tensor(std::span<const QuantumState> states) {
    if (states.empty()) {
        throw std::invalid_argument("tensor: empty sequence");
    }
    int total = 0;
    for (const auto &s : states) {
        total += s.num_qubits();
    }
    if (total > kMaxQubits) {
        throw std::invalid_argument("tensor: more than 8 qubits");
    }
    Matrix acc = states[0].matrix();
    for (std::size_t i = 1; i < states.size(); ++i) {
        const Matrix &b = states[i].matrix();
        Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
        for (Eigen::Index r = 0; r < acc.rows(); ++r) {
            for (Eigen::Index c = 0; c < acc.cols(); ++c) {
                next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = acc(r, c) * b;
            }
        }
        acc = std::move(next);
    }
    return QuantumState::unchecked(std::move(acc));
}

inline QuantumState tensor(std::initializer_list<QuantumState> states) {
    std::vector<QuantumState> v(states);
    return tensor(std::span<const QuantumState>(v));
}

/// Reduced state on `keep` (in the given order), tracing out all other qubits.
inline QuantumState partial_trace(const QuantumState &state, std::span<const int> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: nothing kept");
    }
    detail::check_targets(state.num_qubits(), keep);
    int n = state.num_qubits();
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    Eigen::Index kept_dim = Eigen::Index{1} << keep.size();
    Eigen::Index traced_dim = Eigen::Index{1} << traced.size();
    auto compose = [&](Eigen::Index kept_index, Eigen::Index traced_index) {
        Eigen::Index full = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            Eigen::Index bit = (kept_index >> (keep.size() - 1 - i)) & 1;
            full |= bit << detail::bit_position(n, keep[i]);
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
            Eigen::Index bit = (traced_index >> (traced.size() - 1 - i)) & 1;
            full |= bit << detail::bit_position(n, traced[i]);
        }
        return full;
    };
    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (Eigen::Index r = 0; r < kept_dim; ++r) {
        for (Eigen::Index c = 0; c < kept_dim; ++c) {
            Complex sum = 0;
            for (Eigen::Index t = 0; t < traced_dim; ++t) {
                sum += state.matrix()(compose(r, t), compose(c, t));
            }
            out(r, c) = sum;
        }
    }
    return QuantumState::unchecked(std::move(out));
}

inline QuantumState reduced_qubit(const QuantumState &state, int qubit) {
    int keep[] = {qubit};
    return partial_trace(state, keep);
}

/// True when `m` satisfies the density-operator invariants.
inline bool is_valid_state(const Matrix &m) {
    try {
        QuantumState s(m);
        return true;
    } catch (const std::invalid_argument &) {
        return false;
    }
}

}  // namespace qsl

#endif
