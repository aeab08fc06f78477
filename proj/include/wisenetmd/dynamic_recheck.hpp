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
#include <cstdint>
#include <vector>

#include "wisenetmd/image.hpp"
#include "wisenetmd/rng.hpp"

namespace wisenetmd {

// Dynamic-background handling.
//
// A pixel whose label flips often ("blinks") is flagged as a dynamic region
// (DR). Colors observed when such a flip looks like background noise rather
// than a passing object are stored as false-positive samples, and foreground
// detections inside DR that match one of those colors are erased.

struct BlinkParams {
    double blink_threshold = 0.025;
    int warmup_frames = 100;
};

struct BlinkState {
    BlinkParams params;
    Image<std::uint32_t> tb; // cumulative blink count
    StateMap br;             // blink rate tb / t
    BinaryMask dr;           // 255 inside the dynamic region

    BlinkState() = default;
    BlinkState(int width, int height, BlinkParams p = {});
};

/// Counts blinks between consecutive masks of frame t and t-1 (t >= 2) and
/// refreshes the blink rate and the dynamic-region flag.
void update_blink(BlinkState& state, const BinaryMask& s_cur, const BinaryMask& s_prev, int t, int threads = 1);

struct TemporalParams {
    double alpha_feed = 0.04;
    double dist_gate = 0.45;
    double feed_gate = 0.4;
};

struct TemporalState {
    TemporalParams params;
    StateMap dist_last; // normalized distance to the previous frame
    StateMap s_feed;    // EMA of the previous mask in [0, 1]

    TemporalState() = default;
    TemporalState(int width, int height, TemporalParams p = {});
};

/// Refreshes dist_last from (frame, prev_frame, lbsp, prev_lbsp) and feeds the
/// previous mask into s_feed.
void update_temporal(TemporalState& state, const Frame& frame, const Frame& prev_frame, const LbspMap& lbsp,
                     const LbspMap& prev_lbsp, const BinaryMask& s_prev, int threads = 1);

/// Fires on a blink that is a strong inter-frame change (dist_last > dist_gate)
/// away from a recent object trajectory (s_feed < feed_gate).
bool fp_collect_predicate(std::size_t px, const BinaryMask& s_cur, const BinaryMask& s_prev, const TemporalState& state);

/// Whole-frame predicate evaluation; 255 where a sample should be collected.
BinaryMask fp_collect_mask(const BinaryMask& s_cur, const BinaryMask& s_prev, const TemporalState& state,
                           int threads = 1);

inline constexpr int kDefaultDynamicSamples = 30;
inline constexpr int kMaxDynamicSamples = 32;

/// Color-only samples of suspected false positives. `filled` keeps one bit per
/// slot that has ever been written.
class DynamicBgModel {
public:
    DynamicBgModel() = default;
    DynamicBgModel(int width, int height, int channels, int m_samples = kDefaultDynamicSamples,
                   double dyn_color_threshold = 30.0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    int m_samples() const noexcept { return m_samples_; }
    double dyn_color_threshold() const noexcept { return threshold_; }

    int fill_count(std::size_t px) const;
    bool slot_filled(std::size_t px, int slot) const;
    std::span<const std::uint8_t> slot_color(std::size_t px, int slot) const;
    void write_slot(std::size_t px, int slot, std::span<const std::uint8_t> color);

    /// Smallest L1 color distance to any filled slot, or -1 when none is filled.
    int nearest_distance(std::size_t px, std::span<const std::uint8_t> color) const;

    bool operator==(const DynamicBgModel&) const = default;

private:
    std::size_t at(std::size_t px, int slot) const noexcept {
        return (px * static_cast<std::size_t>(m_samples_) + slot) * channels_;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    int m_samples_ = kDefaultDynamicSamples;
    double threshold_ = 30.0;
    std::vector<std::uint8_t> colors_;
    std::vector<std::uint32_t> filled_;
};

/// Stores the current color in one uniformly random slot wherever `predicate`
/// is 255.
void collect_fp(DynamicBgModel& model, const Frame& frame, const BinaryMask& predicate, const CounterRng& rng,
                std::uint64_t frame_index, int threads = 1);

/// Erases foreground pixels inside the dynamic region whose color lies closer
/// than the dynamic color threshold to a collected sample. Never adds
/// foreground.
BinaryMask recheck(const BinaryMask& mask, const BlinkState& blink, const DynamicBgModel& model, const Frame& frame,
                   int threads = 1);

} // namespace wisenetmd
