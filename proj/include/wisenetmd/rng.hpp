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

#include <cstdint>

namespace wisenetmd {

/// Decision slots of the counter-based generator. Each stochastic choice in the
/// pipeline draws from its own slot so that adding a draw never perturbs another.
enum class RngSlot : std::uint32_t {
    init_neighbor = 1,
    update_self_fire,
    update_self_slot,
    update_neighbor_fire,
    update_neighbor_pick,
    update_neighbor_slot,
    dyn_slot,
    synth_noise_a,
    synth_noise_b,
    synth_flip,
    synth_band_init,
};

/// Stateless counter-based generator: every draw is a hash of
/// (seed, frame, pixel, slot, lane). Results do not depend on evaluation order,
/// so per-pixel stages can run on any number of threads.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed = 0) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t bits(std::uint64_t frame, std::uint64_t pixel, RngSlot slot, std::uint32_t lane = 0) const noexcept {
        std::uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc909ULL);
        h = mix(h ^ frame);
        h = mix(h ^ pixel);
        h = mix(h ^ ((static_cast<std::uint64_t>(slot) << 32) | lane));
        return h;
    }

    /// Uniform integer in [0, n); n must be > 0.
    std::uint32_t uniform(std::uint32_t n, std::uint64_t frame, std::uint64_t pixel, RngSlot slot,
                          std::uint32_t lane = 0) const noexcept {
        const std::uint64_t hi = bits(frame, pixel, slot, lane) >> 32;
        return static_cast<std::uint32_t>((hi * n) >> 32);
    }

    /// Uniform real in [0, 1) with 53 bits of resolution.
    double uniform01(std::uint64_t frame, std::uint64_t pixel, RngSlot slot, std::uint32_t lane = 0) const noexcept {
        return static_cast<double>(bits(frame, pixel, slot, lane) >> 11) * 0x1.0p-53;
    }

private:
    // splitmix64 finalizer
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
};

} // namespace wisenetmd
