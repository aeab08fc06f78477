// Copyright 2026 The wisenetmd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace wisenetmd {

/// Splits [0, rows) into contiguous bands and runs `fn(begin, end)` on each,
/// one band per thread. Callers must only write data owned by their band.
template <typename Fn>
void parallel_rows(int threads, int rows, Fn&& fn) {
    threads = std::clamp(threads, 1, std::max(rows, 1));
    if(threads == 1) {
        fn(0, rows);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    workers.reserve(static_cast<std::size_t>(threads) - 1);
    const int chunk = (rows + threads - 1) / threads;
    for(int t = 1; t < threads; ++t) {
        const int begin = std::min(rows, t * chunk);
        const int end = std::min(rows, begin + chunk);
        workers.emplace_back([&, t, begin, end] {
            try {
                fn(begin, end);
            } catch(...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    try {
        fn(0, std::min(rows, chunk));
    } catch(...) {
        errors[0] = std::current_exception();
    }
    for(auto& w : workers)
        w.join();
    for(auto& e : errors)
        if(e)
            std::rethrow_exception(e);
}

} // namespace wisenetmd
