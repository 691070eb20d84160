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

#ifndef QSL_BOUNDS_HPP
#define QSL_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qsl {

/// Accuracy, confidence and model complexity |H| of a PAC learning task.
struct PacParams {
    double epsilon = 0.1;
    double delta = 0.1;
    std::uint64_t h_size = 2;

    void validate() const {
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw std::invalid_argument("epsilon must lie strictly inside (0, 1)");
        }
        if (!(delta > 0.0 && delta < 1.0)) {
            throw std::invalid_argument("delta must lie strictly inside (0, 1)");
        }
        if (h_size < 2) {
            throw std::invalid_argument("hypothesis class size must be at least 2");
        }
    }
};

/// Sample-count window [m_b, m_c] inside which a completed learning run is
/// certified secure, with the critical contamination that sets m_c.
struct SecureWindow {
    int label_count = 1;
    std::int64_t m_b = 1;
    std::int64_t m_c = 1;
    double eta_c = 0.0;

    std::int64_t width() const { return m_c - m_b; }
    double ratio() const { return static_cast<double>(m_c) / static_cast<double>(m_b); }
};

/// Noise amplification 1 / (1 - 2 eta)^2 of the classification-noise bound.
inline double xi(double eta) {
    if (!(eta >= 0.0 && eta < 0.5)) {
        throw std::invalid_argument("xi: eta must lie in [0, 1/2)");
    }
    double d = 1.0 - 2.0 * eta;
    return 1.0 / (d * d);
}

/// ceil((1/eps) ln(|H|/delta)).
inline std::int64_t sample_complexity_noiseless(const PacParams &p) {
    p.validate();
    return static_cast<std::int64_t>(
        std::ceil(std::log(static_cast<double>(p.h_size) / p.delta) / p.epsilon));
}

/// Unrounded (2 xi(eta) / eps^2) ln(2|H|/delta).
inline double sample_complexity_noisy_real(const PacParams &p, double eta) {
    p.validate();
    return 2.0 * xi(eta) / (p.epsilon * p.epsilon) * std::log(2.0 * static_cast<double>(p.h_size) / p.delta);
}

inline std::int64_t sample_complexity_noisy(const PacParams &p, double eta) {
    return static_cast<std::int64_t>(std::ceil(sample_complexity_noisy_real(p, eta)));
}

/// Critical contamination 1/(2m + 4) for an m-qubit transit system
/// (1/6 for a single qubit, i.e. one minus the 5/6 universal-cloner fidelity).
inline double eta_c(int m) {
    if (m < 1) {
        throw std::invalid_argument("eta_c: label count must be at least 1");
    }
    return 1.0 / (2.0 * m + 4.0);
}

/// Both endpoints come from the noisy family, at eta = 0 and eta = eta_c.
inline SecureWindow secure_window(const PacParams &p, int m) {
    double critical = eta_c(m);
    return SecureWindow{m, sample_complexity_noisy(p, 0.0), sample_complexity_noisy(p, critical), critical};
}

/// Windows for m = first..last (inclusive), ascending in m.
inline std::vector<SecureWindow> window_sweep(const PacParams &p, int first, int last) {
    if (first < 1 || last < first) {
        throw std::invalid_argument("window_sweep: empty or invalid label range");
    }
    std::vector<SecureWindow> out;
    for (int m = first; m <= last; ++m) {
        out.push_back(secure_window(p, m));
    }
    return out;
}

}  // namespace qsl

#endif
