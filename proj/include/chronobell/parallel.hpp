// Copyright 2026 The Chronobell Authors
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

#ifndef CHRONOBELL_PARALLEL_HPP
#define CHRONOBELL_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace chronobell::detail {

/// Splits [0, n) into `workers` contiguous chunks and calls
/// fn(chunk_index, begin, end) for each, one thread per chunk. Callers reduce
/// per-chunk results in chunk order, so output never depends on scheduling.
/// If several chunks throw, the exception of the lowest chunk is rethrown.
template <class Fn>
void for_each_chunk(std::uint64_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1u, workers);
    if (n < workers) {
        workers = static_cast<unsigned>(std::max<std::uint64_t>(1, n));
    }
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](unsigned w) {
        std::uint64_t begin = n * w / workers;
        std::uint64_t end = n * (w + 1) / workers;
        try {
            fn(w, begin, end);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(run, w);
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

/// Number of chunks `for_each_chunk` will actually use.
inline unsigned chunk_count(std::uint64_t n, unsigned workers) {
    workers = std::max(1u, workers);
    return n < workers ? static_cast<unsigned>(std::max<std::uint64_t>(1, n)) : workers;
}

}  // namespace chronobell::detail

#endif
