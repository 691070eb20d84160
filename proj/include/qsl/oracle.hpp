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

#ifndef QSL_ORACLE_HPP
#define QSL_ORACLE_HPP

#include <bit>
#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/qcore.hpp"

namespace qsl {

inline constexpr int kMaxInputBits = 6;
inline constexpr int kMaxLabels = 8;

/// Label vector of a multi-label sample; bit l holds label l.
using LabelBits = std::uint32_t;

/// Classical n-bit input x_1 ... x_n. Bit j of `value()` holds x_{j+1}, so a
/// monomial index k (bit j set = x_{j+1} participates) is satisfied exactly
/// when k is a submask of the value.
class ClassicalInput {
   public:
    ClassicalInput(int width, std::uint32_t value) : width_(width), value_(value) {
        if (width < 1 || width > kMaxInputBits) {
            throw std::invalid_argument("input width must lie in [1, 6]");
        }
        if (value >> width) {
            throw std::invalid_argument("input value exceeds width");
        }
    }

    /// Parses "x_1 x_2 ... x_n" written as a bitstring, e.g. "10".
    static ClassicalInput from_string(std::string_view bits) {
        std::uint32_t value = 0;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            if (bits[j] != '0' && bits[j] != '1') {
                throw std::invalid_argument("input bitstring must contain only 0 and 1");
            }
            value |= static_cast<std::uint32_t>(bits[j] - '0') << j;
        }
        return ClassicalInput(static_cast<int>(bits.size()), value);
    }

    int width() const { return width_; }
    std::uint32_t value() const { return value_; }
    int bit(int j) const { return (value_ >> j) & 1; }
    int hamming_weight() const { return std::popcount(value_); }
    bool is_zero() const { return value_ == 0; }

    std::string to_string() const {
        std::string s;
        for (int j = 0; j < width_; ++j) {
            s.push_back(bit(j) ? '1' : '0');
        }
        return s;
    }

    friend bool operator==(const ClassicalInput &, const ClassicalInput &) = default;

   private:
    int width_;
    std::uint32_t value_;
};

/// Reed-Muller (algebraic normal form) coefficients a_0 ... a_{2^n - 1} of a
/// Boolean function on n <= 6 bits, packed with a_k at bit k.
class ReedMullerCoefficients {
   public:
    ReedMullerCoefficients(int n, std::uint64_t mask) : n_(n), mask_(mask) {
        if (n < 1 || n > kMaxInputBits) {
            throw std::invalid_argument("input width must lie in [1, 6]");
        }
        if (n < kMaxInputBits && (mask >> (std::uint64_t{1} << n))) {
            throw std::invalid_argument("coefficient mask exceeds 2^n entries");
        }
    }

    /// Parses coefficients written in ascending-k order, e.g. "0111".
    static ReedMullerCoefficients from_string(std::string_view bits) {
        int n = 0;
        while (n <= kMaxInputBits && (std::size_t{1} << n) < bits.size()) {
            ++n;
        }
        if (n < 1 || n > kMaxInputBits || (std::size_t{1} << n) != bits.size()) {
            throw std::invalid_argument("coefficient string length must be 2^n with 1 <= n <= 6");
        }
        std::uint64_t mask = 0;
        for (std::size_t k = 0; k < bits.size(); ++k) {
            if (bits[k] != '0' && bits[k] != '1') {
                throw std::invalid_argument("coefficient string must contain only 0 and 1");
            }
            mask |= static_cast<std::uint64_t>(bits[k] - '0') << k;
        }
        return ReedMullerCoefficients(n, mask);
    }

    int n() const { return n_; }
    std::uint64_t mask() const { return mask_; }
    std::size_t size() const { return std::size_t{1} << n_; }
    int coefficient(std::size_t k) const { return static_cast<int>((mask_ >> k) & 1); }

    std::string to_string() const {
        std::string s;
        for (std::size_t k = 0; k < size(); ++k) {
            s.push_back(coefficient(k) ? '1' : '0');
        }
        return s;
    }

    friend bool operator==(const ReedMullerCoefficients &, const ReedMullerCoefficients &) = default;

   private:
    int n_;
    std::uint64_t mask_;
};

/// Lexicographic order on the ascending-k bitstrings (a_0 compared first).
inline bool lexicographically_less(const ReedMullerCoefficients &a, const ReedMullerCoefficients &b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a.coefficient(k) != b.coefficient(k)) {
            return a.coefficient(k) < b.coefficient(k);
        }
    }
    return false;
}

/// Hidden concept: one coefficient vector per label qubit.
struct OracleSpec {
    int n = 1;
    std::vector<ReedMullerCoefficients> labels;

    int num_labels() const { return static_cast<int>(labels.size()); }

    void validate() const {
        if (n < 1 || n > kMaxInputBits) {
            throw std::invalid_argument("oracle: n must lie in [1, 6]");
        }
        if (labels.empty() || labels.size() > kMaxLabels) {
            throw std::invalid_argument("oracle: label count must lie in [1, 8]");
        }
        for (const auto &a : labels) {
            if (a.n() != n) {
                throw std::invalid_argument("oracle: coefficient vector length differs from 2^n");
            }
        }
    }
};

inline OracleSpec make_oracle(std::string_view coefficients) {
    auto a = ReedMullerCoefficients::from_string(coefficients);
    return OracleSpec{a.n(), {a}};
}

/// Parses the text record "n=2 m=1 a=0111". Several label vectors are
/// separated by commas: "n=1 m=2 a=01,10".
inline OracleSpec parse_oracle_spec(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    int n = -1;
    int m = -1;
    std::string coeffs;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("oracle record: expected key=value, got '" + token + "'");
        }
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key == "n" || key == "m") {
            int parsed = -1;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
            if (ec != std::errc() || ptr != value.data() + value.size()) {
                throw std::invalid_argument("oracle record: bad integer for '" + key + "'");
            }
            (key == "n" ? n : m) = parsed;
        } else if (key == "a") {
            coeffs = value;
        } else {
            throw std::invalid_argument("oracle record: unknown key '" + key + "'");
        }
    }
    if (n < 0 || m < 0 || coeffs.empty()) {
        throw std::invalid_argument("oracle record: n, m and a are required");
    }
    OracleSpec spec;
    spec.n = n;
    std::size_t start = 0;
    while (true) {
        auto comma = coeffs.find(',', start);
        spec.labels.push_back(ReedMullerCoefficients::from_string(
            std::string_view(coeffs).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (static_cast<int>(spec.labels.size()) != m) {
        throw std::invalid_argument("oracle record: m does not match the number of coefficient vectors");
    }
    spec.validate();
    return spec;
}

inline std::string format_oracle_spec(const OracleSpec &spec) {
    std::string out = "n=" + std::to_string(spec.n) + " m=" + std::to_string(spec.num_labels()) + " a=";
    for (std::size_t i = 0; i < spec.labels.size(); ++i) {
        if (i) {
            out.push_back(',');
        }
        out += spec.labels[i].to_string();
    }
    return out;
}

inline bool monomial_satisfied(std::uint32_t k, const ClassicalInput &x) {
    if (k >> x.width()) {
        throw std::out_of_range("monomial index exceeds 2^n");
    }
    return (k & x.value()) == k;
}

/// Bit k set iff monomial k is satisfied by x (the submasks of x).
inline std::uint64_t satisfied_monomials(const ClassicalInput &x) {
    std::uint64_t out = 0;
    std::uint32_t v = x.value();
    for (std::uint32_t k = v;; k = (k - 1) & v) {
        out |= std::uint64_t{1} << k;
        if (k == 0) {
            break;
        }
    }
    return out;
}

inline int anf_eval(const ReedMullerCoefficients &a, const ClassicalInput &x) {
    return std::popcount(a.mask() & satisfied_monomials(x)) & 1;
}

inline int reed_muller_eval(const OracleSpec &spec, int label_index, const ClassicalInput &x) {
    if (label_index < 0 || label_index >= spec.num_labels()) {
        throw std::out_of_range("label index out of range");
    }
    if (x.width() != spec.n) {
        throw std::invalid_argument("input width differs from oracle width");
    }
    return anf_eval(spec.labels[label_index], x);
}

inline LabelBits oracle_labels(const OracleSpec &spec, const ClassicalInput &x) {
    LabelBits out = 0;
    for (int l = 0; l < spec.num_labels(); ++l) {
        out |= static_cast<LabelBits>(reed_muller_eval(spec, l, x)) << l;
    }
    return out;
}

/// Truth table of one coefficient vector: bit x holds h(x).
inline std::uint64_t truth_table_mask(const ReedMullerCoefficients &a) {
    std::uint64_t table = 0;
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << a.n()); ++x) {
        table |= static_cast<std::uint64_t>(anf_eval(a, ClassicalInput(a.n(), x))) << x;
    }
    return table;
}

/// Label vectors for all 2^n inputs, indexed by ClassicalInput::value().
inline std::vector<LabelBits> oracle_truth_table(const OracleSpec &spec) {
    std::vector<LabelBits> table;
    table.reserve(std::size_t{1} << spec.n);
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << spec.n); ++x) {
        table.push_back(oracle_labels(spec, ClassicalInput(spec.n, x)));
    }
    return table;
}

/// Hybrid oracle circuit. Label slot l is qubit l of the transit register;
/// for each satisfied monomial k (ascending) the gate sigma_z (a_k = 0) or
/// i*sigma_y (a_k = 1) hits that qubit.
inline QuantumState oracle_apply(const OracleSpec &spec, const ClassicalInput &x, const QuantumState &transit) {
    if (transit.num_qubits() != spec.num_labels()) {
        throw std::invalid_argument("oracle: transit qubit count differs from label count");
    }
    if (x.width() != spec.n) {
        throw std::invalid_argument("oracle: input width mismatch");
    }
    static const Gate kZ = Gate::pauli_z();
    static const Gate kFlip = Gate::i_sigma_y();
    std::uint64_t fired = satisfied_monomials(x);
    QuantumState state = transit;
    for (int l = 0; l < spec.num_labels(); ++l) {
        for (std::uint32_t k = 0; k < spec.labels[l].size(); ++k) {
            if ((fired >> k) & 1) {
                state = apply_gate(state, spec.labels[l].coefficient(k) ? kFlip : kZ, l);
            }
        }
    }
    return state;
}

}  // namespace qsl

#endif
