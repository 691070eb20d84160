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

#ifndef QSL_REPORT_HPP
#define QSL_REPORT_HPP

#include <ostream>
#include <string>

#include "json.hpp"
#include "qsl/learning.hpp"
#include "qsl/no_broadcast.hpp"
#include "qsl/protocol.hpp"

namespace qsl {

inline int exit_code(SessionStatus status) {
    switch (status) {
        case SessionStatus::Completed:
            return 0;
        case SessionStatus::AbortedR1:
            return 2;
        case SessionStatus::QuitR2:
            return 3;
    }
    return 1;
}

inline nlohmann::ordered_json to_json(const LearnResult &r) {
    nlohmann::ordered_json j;
    j["hypothesis"] = r.hypothesis.to_string();
    j["disagreements"] = r.disagreements;
    j["empirical_error"] = r.empirical_error;
    j["exact_error"] = r.exact_error ? nlohmann::ordered_json(*r.exact_error) : nlohmann::ordered_json(nullptr);
    return j;
}

inline nlohmann::ordered_json to_json(const SessionOutcome &o) {
    nlohmann::ordered_json j;
    j["status"] = status_name(o.status);
    j["exit_code"] = exit_code(o.status);
    j["m_b"] = o.window.m_b;
    j["m_c"] = o.window.m_c;
    j["eta_c"] = o.window.eta_c;
    j["rounds"] = o.rounds;
    j["learning_rounds"] = o.learning_rounds;
    j["test_rounds"] = o.test_rounds;
    j["test_mismatches"] = o.test_mismatches;
    j["eta_estimate"] = o.eta_estimate;
    j["r1_evaluated"] = o.r1_evaluated;
    j["target_samples"] = o.target_samples ? nlohmann::ordered_json(*o.target_samples) : nlohmann::ordered_json(nullptr);
    j["samples"] = o.samples.size();
    j["contaminated_samples"] = o.samples.contaminated_count();
    j["eve_samples"] = o.eve_samples.size();
    j["eve_contaminated_samples"] = o.eve_samples.contaminated_count();
    auto hyps = nlohmann::ordered_json::array();
    for (const auto &h : o.hypothesis) {
        hyps.push_back(h.to_string());
    }
    j["hypothesis"] = hyps;
    j["exact_errors"] = o.exact_errors;
    return j;
}

inline std::string labels_string(const std::vector<StateLabel> &labels) {
    std::string s;
    for (auto l : labels) {
        s.push_back(label_char(l));
    }
    return s;
}

inline std::string bits_string(LabelBits bits, std::size_t count) {
    std::string s;
    for (std::size_t l = 0; l < count; ++l) {
        s.push_back(((bits >> l) & 1) ? '1' : '0');
    }
    return s;
}

inline void write_trace_csv(std::ostream &out, const std::vector<RoundRecord> &trace) {
    out << "round_index,kind,input_bits,sent_label,measured_bits,mismatch_flag\n";
    for (const auto &r : trace) {
        out << r.index << ',' << (r.kind == RoundKind::Learning ? "learning" : "test") << ',' << r.input.to_string()
            << ',' << labels_string(r.sent) << ',' << bits_string(r.measured, r.sent.size()) << ','
            << (r.mismatch ? 1 : 0) << '\n';
    }
}

}  // namespace qsl

#endif
