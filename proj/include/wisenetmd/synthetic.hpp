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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wisenetmd/frame_io.hpp"
#include "wisenetmd/image.hpp"
#include "wisenetmd/rng.hpp"

namespace wisenetmd {

enum class SyntheticKind { static_noise, moving_box, dynamic_band };

SyntheticKind parse_synthetic_kind(const std::string& name);
std::string to_string(SyntheticKind kind);

inline constexpr int kBoxOutside = std::numeric_limits<int>::min();     // just left of the frame
inline constexpr int kBoxCentered = std::numeric_limits<int>::min() + 1; // vertically centered

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::static_noise;
    int width = 320;
    int height = 240;
    int channels = 3;
    int frames = 100;
    double noise_sigma = 2.0;
    std::uint64_t seed = 1;
    std::uint8_t base_color = 128;

    // moving_box. Positions wrap on a track one box size longer than the
    // frame, so the box may be partly or fully out of view.
    int box_width = 40;
    int box_height = 40;
    int box_x0 = kBoxOutside;
    int box_y0 = kBoxCentered;
    int velocity_x = 2;
    int velocity_y = 0;
    std::uint8_t box_color = 200;

    // dynamic_band
    int band_top = -1; // -1: vertically centered
    int band_rows = 60;
    std::uint8_t band_color_a = 40;
    std::uint8_t band_color_b = 230;
    double flip_probability = 0.3;
};

void validate(const SyntheticSpec& spec);

/// Frame-by-frame generator. Ground truth is exact: 255 on box pixels for
/// moving_box and 0 everywhere otherwise.
class SyntheticSource {
public:
    explicit SyntheticSource(SyntheticSpec spec);

    const SyntheticSpec& spec() const noexcept { return spec_; }
    int frames_emitted() const noexcept { return emitted_; }

    struct Item {
        Frame frame;
        GtFrame gt;
    };
    std::optional<Item> next();

    /// Left/top edge of the box at 0-based frame k, in [-box size, frame size).
    int box_left(int k) const noexcept;
    int box_top(int k) const noexcept;
    bool in_box(int k, int x, int y) const noexcept;
    int band_top() const noexcept;
    bool in_band(int y) const noexcept { return y >= band_top() && y < band_top() + spec_.band_rows; }

private:
    std::uint8_t noisy(int value, std::uint64_t frame, std::size_t channel_index) const;

    SyntheticSpec spec_;
    CounterRng rng_;
    int emitted_ = 0;
    std::vector<std::uint8_t> band_state_; // 0 -> color a, 1 -> color b
};

struct SyntheticSequence {
    std::vector<Frame> frames;
    std::vector<GtFrame> gt;
};

SyntheticSequence generate(const SyntheticSpec& spec);

/// Writes <root>/input/in%06d.ppm (or .pgm), <root>/groundtruth/gt%06d.pgm and
/// <root>/temporalROI.txt covering every frame.
void write_synthetic(const SyntheticSpec& spec, const fs::path& root);

} // namespace wisenetmd
