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
#include <string>
#include <vector>

#include "wisenetmd/classifier.hpp"
#include "wisenetmd/dynamic_recheck.hpp"
#include "wisenetmd/feedback.hpp"
#include "wisenetmd/lbsp.hpp"
#include "wisenetmd/postprocess.hpp"

namespace wisenetmd {

/// Every tunable of the pipeline. Field names double as config-file keys.
struct PipelineConfig {
    int n_samples = 50;
    int m_dyn_samples = 30;
    double t_r = 0.3;
    double r0_color = 30.0;
    double r0_lbsp = 3.0;
    int min_matches = 2;
    double blink_threshold = 0.025;
    double dyn_color_threshold = 30.0;
    int warmup_frames = 100;
    double dist_gate = 0.45;
    double feed_gate = 0.4;
    double alpha_short = 0.04;
    double alpha_long = 0.01;
    double v_decr = 0.1;
    double v_floor = 0.1;
    double d_eps = 1e-3;
    double t_min = 2.0;
    double t_max = 256.0;
    bool post_enabled = true;
    int open_radius = 1;
    int close_radius = 1;
    int median_size = 9;
    bool recheck_enabled = true;
    bool neighbor_diffusion = true;
    std::uint64_t seed = 0;

    LbspParams lbsp() const { return {t_r}; }
    ThresholdParams thresholds() const { return {r0_color, r0_lbsp, min_matches}; }
    BlinkParams blink() const { return {blink_threshold, warmup_frames}; }
    // the trajectory accumulator shares the short-term learning rate
    TemporalParams temporal() const { return {alpha_short, dist_gate, feed_gate}; }
    FeedbackParams feedback() const {
        return {alpha_short, alpha_long, v_decr, v_floor, d_eps, t_min, t_max, dist_gate, feed_gate};
    }
    PostParams post() const { return {post_enabled, open_radius, close_radius, median_size}; }

    bool operator==(const PipelineConfig&) const = default;
};

/// Throws ErrorKind::config when a value is outside its allowed range.
void validate(const PipelineConfig& config);

/// Sets one key from its textual value. Unknown keys and unparsable values
/// throw ErrorKind::config.
void set_config_value(PipelineConfig& config, const std::string& key, const std::string& value);

/// Applies "key=value".
void apply_override(PipelineConfig& config, const std::string& assignment);

/// Parses a flat "key = value" file body; '#' starts a comment.
void parse_config_text(PipelineConfig& config, const std::string& text);
void load_config_file(PipelineConfig& config, const std::filesystem::path& path);

std::vector<std::string> config_keys();

/// Canonical "key = value" dump, one line per key in declaration order.
std::string to_text(const PipelineConfig& config);

} // namespace wisenetmd
