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

#ifndef QSL_EXPERIMENT_HPP
#define QSL_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qsl {

/// Worker count: QSL_SIM_THREADS when set and positive, else the hardware
/// concurrency (at least 1).
inline unsigned worker_threads() {
    if (const char *env = std::getenv("QSL_SIM_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) on up to worker_threads() threads.
/// Results are stored by index, so the output never depends on scheduling.
template <typename Result, typename Fn>
std::vector<Result> run_indexed(std::size_t count, Fn &&fn) {
    std::vector<Result> results(count);
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_threads(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            results[i] = fn(i);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    results[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

struct MeanAndError {
    double mean = 0.0;
    double standard_error = 0.0;
};

inline MeanAndError mean_and_error(const std::vector<double> &values) {
    MeanAndError out;
    if (values.empty()) {
        return out;
    }
    double n = static_cast<double>(values.size());
    for (double v : values) {
        out.mean += v;
    }
    out.mean /= n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - out.mean) * (v - out.mean);
        }
        out.standard_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

/// Standard error of a proportion.
inline double proportion_error(double p, std::size_t n) {
    return n ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

}  // namespace qsl

#endif
