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

#ifndef QSL_LEARNING_HPP
#define QSL_LEARNING_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/oracle.hpp"
#include "qsl/random.hpp"
#include "qsl/samples.hpp"

namespace qsl {

/// Largest class erm_learn will enumerate.
inline constexpr std::uint64_t kMaxEnumeratedClass = std::uint64_t{1} << 16;

/// All Reed-Muller coefficient vectors on n bits whose monomials have degree
/// at most `degree_cap` (no cap: every Boolean function, |H| = 2^(2^n)).
class HypothesisClass {
   public:
    explicit HypothesisClass(int n, std::optional<int> degree_cap = std::nullopt) : n_(n), degree_cap_(degree_cap) {
        if (n < 1 || n > kMaxInputBits) {
            throw std::invalid_argument("hypothesis class: n must lie in [1, 6]");
        }
        if (degree_cap && *degree_cap < 0) {
            throw std::invalid_argument("hypothesis class: negative degree cap");
        }
        for (std::uint32_t k = 0; k < (std::uint32_t{1} << n); ++k) {
            if (!degree_cap || std::popcount(k) <= *degree_cap) {
                monomials_.push_back(k);
            }
        }
    }

    /// The degree-capped class on n bits with exactly `h_size` members.
    static HypothesisClass with_size(int n, std::uint64_t h_size) {
        for (int cap = 0; cap <= n; ++cap) {
            HypothesisClass c(n, cap == n ? std::nullopt : std::optional<int>(cap));
            if (c.log2_size() < 64 && c.size() == h_size) {
                return c;
            }
        }
        throw std::invalid_argument("no degree-capped hypothesis class on n bits has the requested size");
    }

    int n() const { return n_; }
    std::optional<int> degree_cap() const { return degree_cap_; }
    const std::vector<std::uint32_t> &monomials() const { return monomials_; }
    int log2_size() const { return static_cast<int>(monomials_.size()); }

    std::uint64_t size() const {
        if (log2_size() >= 64) {
            throw std::overflow_error("hypothesis class size exceeds 2^63");
        }
        return std::uint64_t{1} << log2_size();
    }

    /// Member `index` in lexicographic order of the ascending-k bitstrings.
    ReedMullerCoefficients member(std::uint64_t index) const {
        std::uint64_t mask = 0;
        int free = log2_size();
        for (int j = 0; j < free; ++j) {
            if ((index >> (free - 1 - j)) & 1) {
                mask |= std::uint64_t{1} << monomials_[j];
            }
        }
        return ReedMullerCoefficients(n_, mask);
    }

    bool contains(const ReedMullerCoefficients &a) const {
        if (a.n() != n_) {
            return false;
        }
        std::uint64_t allowed = 0;
        for (auto k : monomials_) {
            allowed |= std::uint64_t{1} << k;
        }
        return (a.mask() & ~allowed) == 0;
    }

   private:
    int n_;
    std::optional<int> degree_cap_;
    std::vector<std::uint32_t> monomials_;
};

struct LearnResult {
    ReedMullerCoefficients hypothesis;
    std::size_t disagreements = 0;
    double empirical_error = 0.0;
    std::optional<double> exact_error;
};

/// Truth table via the binary Moebius transform (bit x holds h(x)).
inline std::uint64_t anf_to_truth_table(std::uint64_t anf, int n) {
    static constexpr std::array<std::uint64_t, 6> kLow = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
        0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
    };
    std::uint64_t t = anf;
    for (int i = 0; i < n; ++i) {
        t ^= (t & kLow[i]) << (1u << i);
    }
    return t;
}

namespace detail {

struct LabelCounts {
    std::array<std::size_t, 64> ones{};
    std::array<std::size_t, 64> zeros{};
};

inline LabelCounts count_labels(const SampleSet &samples, int n, int label_index) {
    LabelCounts counts;
    for (const auto &pair : samples.pairs()) {
        if (pair.input.width() != n) {
            throw std::invalid_argument("sample width differs from hypothesis class width");
        }
        if ((pair.labels >> label_index) & 1) {
            ++counts.ones[pair.input.value()];
        } else {
            ++counts.zeros[pair.input.value()];
        }
    }
    return counts;
}

inline std::size_t disagreements(std::uint64_t table, const LabelCounts &counts, int n) {
    std::size_t d = 0;
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
        d += ((table >> x) & 1) ? counts.zeros[x] : counts.ones[x];
    }
    return d;
}

}  // namespace detail

/// Exhaustive empirical-risk minimization over `cls` on label `label_index`.
/// Ties go to the lexicographically smallest coefficient vector.
inline LearnResult erm_learn(const SampleSet &samples, const HypothesisClass &cls, int label_index = 0) {
    if (samples.empty()) {
        throw std::invalid_argument("erm_learn: empty sample set");
    }
    if (cls.log2_size() > 16) {
        throw std::invalid_argument("erm_learn: hypothesis class too large to enumerate (max 2^16)");
    }
    auto counts = detail::count_labels(samples, cls.n(), label_index);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::uint64_t best_index = 0;
    for (std::uint64_t i = 0; i < cls.size(); ++i) {
        std::size_t d = detail::disagreements(anf_to_truth_table(cls.member(i).mask(), cls.n()), counts, cls.n());
        if (d < best) {
            best = d;
            best_index = i;
        }
    }
    return LearnResult{cls.member(best_index), best,
                       static_cast<double>(best) / static_cast<double>(samples.size()), std::nullopt};
}

/// Fraction of the 2^n inputs on which h and the concept's label disagree.
inline double generalization_error(const ReedMullerCoefficients &h, const OracleSpec &spec, int label_index = 0) {
    if (h.n() != spec.n) {
        throw std::invalid_argument("generalization_error: width mismatch");
    }
    if (label_index < 0 || label_index >= spec.num_labels()) {
        throw std::out_of_range("generalization_error: label index out of range");
    }
    std::uint64_t diff = anf_to_truth_table(h.mask(), h.n()) ^ anf_to_truth_table(spec.labels[label_index].mask(), spec.n);
    return static_cast<double>(std::popcount(diff)) / static_cast<double>(std::uint64_t{1} << spec.n);
}

inline LearnResult erm_learn(const SampleSet &samples, const HypothesisClass &cls, const OracleSpec &spec,
                             int label_index) {
    LearnResult r = erm_learn(samples, cls, label_index);
    r.exact_error = generalization_error(r.hypothesis, spec, label_index);
    return r;
}

/// `count` uniform inputs labelled by the concept, each label flipped
/// independently with probability `eta`.
inline SampleSet noisy_samples(const OracleSpec &spec, double eta, std::size_t count, Rng &rng) {
    SampleSet out;
    for (std::size_t i = 0; i < count; ++i) {
        ClassicalInput x(spec.n, static_cast<std::uint32_t>(uniform_index(rng, std::uint64_t{1} << spec.n)));
        LabelBits truth = oracle_labels(spec, x);
        LabelBits noise = 0;
        for (int l = 0; l < spec.num_labels(); ++l) {
            noise |= static_cast<LabelBits>(bernoulli(rng, eta)) << l;
        }
        out.add(SamplePair{x, truth ^ noise}, noise != 0);
    }
    return out;
}

struct PacExperiment {
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::vector<double> errors;

    double success_rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

/// Repeats ERM on fresh noisy samples; a trial succeeds when the exact error
/// is at most epsilon. With zero samples the learner outputs the tie-break
/// member (index 0).
inline PacExperiment pac_experiment(const PacParams &p, const OracleSpec &spec, double eta, std::size_t m_samples,
                                   std::size_t trials, Rng &rng, int label_index = 0) {
    p.validate();
    if (!(eta >= 0.0 && eta <= 0.5)) {
        throw std::invalid_argument("pac experiment: eta must lie in [0, 1/2]");
    }
    HypothesisClass cls = HypothesisClass::with_size(spec.n, p.h_size);
    std::uint64_t base = rng();
    PacExperiment out;
    out.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng trial_rng = make_rng(base, t);
        SampleSet samples = noisy_samples(spec, eta, m_samples, trial_rng);
        ReedMullerCoefficients h = samples.empty() ? cls.member(0) : erm_learn(samples, cls, label_index).hypothesis;
        double err = generalization_error(h, spec, label_index);
        out.errors.push_back(err);
        if (err <= p.epsilon) {
            ++out.successes;
        }
    }
    return out;
}

inline double pac_success_rate(const PacParams &p, const OracleSpec &spec, double eta, std::size_t m_samples,
                               std::size_t trials, Rng &rng) {
    return pac_experiment(p, spec, eta, m_samples, trials, rng).success_rate();
}

/// One-vs-all reduction. Sample labels hold class indices in [0, num_classes);
/// hypothesis i separates class i from the rest.
inline std::vector<ReedMullerCoefficients> ova_learn(const SampleSet &samples, int num_classes,
                                                     const HypothesisClass &cls) {
    if (num_classes < 2) {
        throw std::invalid_argument("ova_learn: need at least two classes");
    }
    std::vector<ReedMullerCoefficients> out;
    for (int i = 0; i < num_classes; ++i) {
        SampleSet binary;
        for (const auto &pair : samples.pairs()) {
            if (pair.labels >= static_cast<LabelBits>(num_classes)) {
                throw std::invalid_argument("ova_learn: class index out of range");
            }
            binary.add(SamplePair{pair.input, pair.labels == static_cast<LabelBits>(i) ? 1u : 0u}, false);
        }
        out.push_back(erm_learn(binary, cls).hypothesis);
    }
    return out;
}

/// argmax_i h_i(x); ties go to the smallest index.
inline int ova_predict(const std::vector<ReedMullerCoefficients> &hypotheses, const ClassicalInput &x) {
    if (hypotheses.empty()) {
        throw std::invalid_argument("ova_predict: no hypotheses");
    }
    int best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        if (hypotheses[i].n() != x.width()) {
            throw std::invalid_argument("ova_predict: width mismatch");
        }
        int score = anf_eval(hypotheses[i], x);
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(i);
        }
    }
    return best;
}

}  // namespace qsl

#endif
