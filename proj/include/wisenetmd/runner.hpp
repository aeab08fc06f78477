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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wisenetmd/config.hpp"
#include "wisenetmd/evaluation.hpp"
#include "wisenetmd/frame_io.hpp"
#include "wisenetmd/pipeline.hpp"

namespace wisenetmd {

struct RunOptions {
    PipelineConfig config;
    int threads = 1;
    int dump_state_every = 0; // 0 disables periodic state dumps
    bool write_masks = true;
};

struct TimingStats {
    std::size_t frames = 0;
    double mean_ms = 0.0;
    double median_ms = 0.0;
    double p95_ms = 0.0;
    double fps_pipeline = 0.0; // from pipeline time only
    double fps_with_io = 0.0;  // wall clock including decode and mask writes
};

TimingStats timing_stats(std::vector<double> frame_ms, double wall_seconds);

/// Everything here except `timing` is a pure function of (seed, config, input).
struct RunSummary {
    std::size_t frames = 0;
    int width = 0;
    int height = 0;
    int channels = 0;
    std::uint64_t raw_foreground = 0;
    std::uint64_t rechecked_foreground = 0;
    std::uint64_t final_foreground = 0;
    std::uint64_t eraser_violations = 0; // re-checked foreground outside raw foreground
    TimingStats timing;
};

/// Deterministic key=value text; timing is kept out so reruns diff cleanly.
std::string summary_text(const RunSummary& summary, const PipelineConfig& config);
std::string timing_text(const TimingStats& timing, int threads);

using FrameSource = std::function<std::optional<Frame>()>;
using FrameObserver = std::function<void(int frame_index, const Frame&, const FrameResult&)>;

/// Drives a pipeline over `source`, decoding the next frame while the current
/// one is processed. With `out_dir`, masks and summary files are written there.
RunSummary run_frames(const FrameSource& source, const RunOptions& options, const std::optional<fs::path>& out_dir,
                      const FrameObserver& observer = {});

/// Creates `dir` if needed and checks a file can be written into it.
void ensure_writable_dir(const fs::path& dir);

RunSummary run_sequence(const fs::path& input_dir, const RunOptions& options, const fs::path& out_dir);

struct SequenceEntry {
    std::string category;
    std::string sequence;
    fs::path root;
};

/// Accepts a sequence directory (has input/), a category directory (children
/// are sequences) or a dataset directory (children are categories).
std::vector<SequenceEntry> discover_cdnet(const fs::path& root);

struct EvaluationResult {
    MetricsRow row;
    RunSummary summary;
};

/// Runs the pipeline over `spec` and scores the final masks against its gt.
EvaluationResult evaluate_sequence(const SequenceSpec& spec, const std::string& category,
                                   const std::string& sequence, const RunOptions& options,
                                   const std::optional<fs::path>& out_dir);

} // namespace wisenetmd
