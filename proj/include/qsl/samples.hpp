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

#ifndef QSL_SAMPLES_HPP
#define QSL_SAMPLES_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qsl/oracle.hpp"

namespace qsl {

struct SamplePair {
    ClassicalInput input;
    LabelBits labels;
};

/// Labelled samples held by one learner. `contaminated_count` is simulator
/// ground truth (pairs whose labels differ from the concept) and is never
/// visible to the learner itself.
class SampleSet {
   public:
    void add(SamplePair pair, bool contaminated) {
        pairs_.push_back(pair);
        contaminated_count_ += contaminated ? 1 : 0;
    }

    const std::vector<SamplePair> &pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    std::size_t contaminated_count() const { return contaminated_count_; }

    /// 1 - |uncontaminated| / |all|; 0 for an empty set.
    double contamination_rate() const {
        return pairs_.empty() ? 0.0 : static_cast<double>(contaminated_count_) / static_cast<double>(pairs_.size());
    }

    /// First `count` pairs with the contamination recomputed against `spec`.
    SampleSet prefix(std::size_t count, const OracleSpec &spec) const {
        if (count > pairs_.size()) {
            throw std::out_of_range("SampleSet::prefix: not enough pairs");
        }
        SampleSet out;
        for (std::size_t i = 0; i < count; ++i) {
            out.add(pairs_[i], pairs_[i].labels != oracle_labels(spec, pairs_[i].input));
        }
        return out;
    }

   private:
    std::vector<SamplePair> pairs_;
    std::size_t contaminated_count_ = 0;
};

}  // namespace qsl

#endif
