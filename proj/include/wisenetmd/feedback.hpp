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

#include <cstddef>

#include "wisenetmd/dynamic_recheck.hpp"
#include "wisenetmd/image.hpp"

namespace wisenetmd {

struct FeedbackParams {
    double alpha_short = 0.04;
    double alpha_long = 0.01;
    double v_decr = 0.1;
    double v_floor = 0.1;
    double d_eps = 1e-3;
    double t_min = 2.0;
    double t_max = 256.0;
    double dist_gate = 0.45;
    double feed_gate = 0.4;
};

void validate(const FeedbackParams& params);

/// Per-pixel controllers.
///   d_min_*  smoothed minimal model distance (two learning rates)
///   v        blink accumulator, >= v_floor
///   r        distance-threshold scale, >= 1
///   t_rate   model update period, in [t_min, t_max]
struct FeedbackState {
    FeedbackParams params;
    StateMap d_min_short;
    StateMap d_min_long;
    StateMap v;
    StateMap r;
    StateMap t_rate;

    FeedbackState() = default;
    FeedbackState(int width, int height, FeedbackParams p = {});

    /// max(d_min_short, d_min_long)
    double d_min(std::size_t px) const noexcept { return std::max(d_min_short[px], d_min_long[px]); }
};

void update_dmin(FeedbackState& state, double d, std::size_t px);

inline constexpr double kWeightStatic = 1.0;
inline constexpr double kWeightDynamicNoise = 1.5;
inline constexpr double kWeightDynamicOther = 0.8;

/// Blink weight: 1.0 outside the dynamic region; inside it 1.5 when the
/// false-positive gates hold, else 0.8.
double weight(bool dynamic_region, double dist_last, double s_feed, const FeedbackParams& params = {});

void update_v(FeedbackState& state, bool blinked, double w, std::size_t px);
void update_r(FeedbackState& state, std::size_t px);
void update_t(FeedbackState& state, bool foreground, std::size_t px);

/// Inputs of one feedback step for a whole frame.
struct FeedbackInputs {
    const StateMap& min_distance;  // d per pixel for the current frame
    const BinaryMask& mask;        // current (re-checked) mask
    const BinaryMask& prev_mask;   // previous (re-checked) mask
    const BinaryMask& dr;          // dynamic region flags
    const TemporalState& temporal; // dist_last / s_feed
};

/// Runs update_dmin, weight, update_v, update_r and update_t on every pixel.
void update_feedback(FeedbackState& state, const FeedbackInputs& in, int threads = 1);

/// True when every map respects its range.
bool ranges_ok(const FeedbackState& state);

} // namespace wisenetmd
