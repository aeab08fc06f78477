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
#include <filesystem>
#include <optional>

#include "wisenetmd/background_model.hpp"
#include "wisenetmd/config.hpp"
#include "wisenetmd/dynamic_recheck.hpp"
#include "wisenetmd/feedback.hpp"
#include "wisenetmd/image.hpp"
#include "wisenetmd/rng.hpp"

namespace wisenetmd {

namespace fs = std::filesystem;

struct FrameResult {
    BinaryMask raw;       // classifier output
    BinaryMask rechecked; // after the dynamic-region eraser
    BinaryMask final;     // after post-processing
    double ms = 0.0;      // pipeline time for this frame, no I/O
};

/// Stateful per-sequence detector. Frames must be fed in order.
class Pipeline {
public:
    explicit Pipeline(PipelineConfig config, int threads = 1);

    FrameResult process(const Frame& frame);

    /// Writes the R, T, v, D_min, S_feed, BR and DR maps of the last processed
    /// frame as 8-bit PGMs. Each file name carries its normalization range.
    void dump_state(const fs::path& out_dir) const;

    const PipelineConfig& config() const noexcept { return config_; }
    int threads() const noexcept { return threads_; }
    /// 1-based index of the last processed frame, 0 before the first.
    int frame_index() const noexcept { return frame_index_; }
    bool initialized() const noexcept { return frame_index_ > 0; }

    const BackgroundModel& model() const noexcept { return model_; }
    const DynamicBgModel& dynamic_model() const noexcept { return dyn_model_; }
    const BlinkState& blink() const noexcept { return blink_; }
    const TemporalState& temporal() const noexcept { return temporal_; }
    const FeedbackState& feedback() const noexcept { return feedback_; }

private:
    void initialize(const Frame& frame, const LbspMap& lbsp);

    PipelineConfig config_;
    int threads_;
    CounterRng rng_;
    int frame_index_ = 0;

    BackgroundModel model_;
    DynamicBgModel dyn_model_;
    BlinkState blink_;
    TemporalState temporal_;
    FeedbackState feedback_;

    Frame prev_frame_;
    LbspMap prev_lbsp_;
    BinaryMask prev_raw_;
    BinaryMask prev_rechecked_;
};

/// Range [lo, hi] mapped onto 0..255 with saturation.
Frame normalize_map(const StateMap& map, double lo, double hi);

} // namespace wisenetmd
