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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "wisenetmd/background_model.hpp"
#include "wisenetmd/image.hpp"

namespace wisenetmd {

struct ThresholdParams {
    double r0_color = 30.0;
    double r0_lbsp = 3.0;
    int min_matches = 2;
};

void validate(const ThresholdParams& params);

struct DistanceThresholds {
    double color; // per channel, intensity units
    double lbsp;  // per channel, bits
};

/// Color threshold scales linearly with R, the LBSP threshold exponentially.
inline DistanceThresholds thresholds_at(double r, const ThresholdParams& params) {
    return {params.r0_color * r, std::exp2(r) + params.r0_lbsp};
}

/// Sum over channels of absolute differences.
inline int l1_color(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) noexcept {
    int sum = 0;
    for(std::size_t c = 0; c < a.size(); ++c)
        sum += a[c] > b[c] ? a[c] - b[c] : b[c] - a[c];
    return sum;
}

/// Normalized joint distance in [0, 1]: mean of L1/(255*ch) and hamming/(16*ch).
inline double normalized_distance(int l1, int ham, int channels) noexcept {
    return (static_cast<double>(l1) / (255.0 * channels) + static_cast<double>(ham) / (16.0 * channels)) / 2.0;
}

/// Raw segmentation: a pixel is foreground when fewer than `min_matches`
/// samples satisfy both  L1 < ch * r_color  and  hamming < ch * r_lbsp.
BinaryMask classify(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model, const StateMap& r_map,
                    const ThresholdParams& params = {}, int threads = 1);

/// Minimum over all samples of the normalized joint distance at `px`.
double min_distance(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model, std::size_t px);

struct Classification {
    BinaryMask mask;
    StateMap min_distance;
};

/// classify() and min_distance() for every pixel in one pass over the samples.
Classification classify_with_distance(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model,
                                      const StateMap& r_map, const ThresholdParams& params = {}, int threads = 1);

} // namespace wisenetmd
