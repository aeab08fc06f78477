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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

#include "wisenetmd/image.hpp"

namespace wisenetmd {

/// Local binary similarity pattern over a 5x5 window.
///
/// Bit p of a code is set when the neighbor at kLbspOffsets[p] lies within
/// `t_r * center` of the center intensity (same channel). Neighbors outside the
/// frame are read from the nearest edge pixel.
struct LbspParams {
    double t_r = 0.3;
};

struct Offset {
    int dx;
    int dy;
};

inline constexpr int kLbspBits = 16;

inline constexpr std::array<Offset, kLbspBits> kLbspOffsets = {{
    {-2, -2}, {0, -2}, {2, -2},
    {-1, -1}, {0, -1}, {1, -1},
    {-2, 0}, {-1, 0}, {1, 0}, {2, 0},
    {-1, 1}, {0, 1}, {1, 1},
    {-2, 2}, {0, 2}, {2, 2},
}};

void validate(const LbspParams& params);

/// Per-intensity integer similarity bound: |i_p - i_x| <= t_r * i_x holds for
/// integer differences exactly when |i_p - i_x| <= floor(t_r * i_x).
std::array<int, 256> lbsp_threshold_table(const LbspParams& params);

LbspMap compute_lbsp(const Frame& frame, const LbspParams& params = {}, int threads = 1);

// Branch-free bit count. std::popcount lowers to a libgcc call on targets
// built without POPCNT, which dominated the classifier profile.
inline int popcount64(std::uint64_t x) noexcept {
    x -= (x >> 1) & 0x5555555555555555ULL;
    x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL);
    x = (x + (x >> 4)) & 0x0f0f0f0f0f0f0f0fULL;
    return static_cast<int>((x * 0x0101010101010101ULL) >> 56);
}

inline int hamming(std::uint16_t a, std::uint16_t b) noexcept {
    return popcount64(static_cast<std::uint64_t>(a ^ b));
}

/// Sum of per-channel hamming distances at pixel `px`.
int hamming_px(const LbspMap& a, const LbspMap& b, std::size_t px);

} // namespace wisenetmd
