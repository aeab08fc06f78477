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
#include <span>
#include <vector>

#include "wisenetmd/image.hpp"
#include "wisenetmd/rng.hpp"

namespace wisenetmd {

inline constexpr int kDefaultBackgroundSamples = 50;

/// Sample-consensus background model: for every pixel, a fixed number of
/// (color, LBSP) samples. Samples of one pixel are stored contiguously so the
/// classifier walks them linearly.
class BackgroundModel {
public:
    BackgroundModel() = default;
    BackgroundModel(int width, int height, int channels, int n_samples = kDefaultBackgroundSamples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    int n_samples() const noexcept { return n_samples_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

    struct SampleView {
        std::span<const std::uint8_t> color;
        std::span<const std::uint16_t> lbsp;
    };

    /// Bounds-checked read of sample `n` at pixel `px`.
    SampleView sample_at(std::size_t px, int n) const;

    /// Overwrites sample `n` at `px`.
    void set_sample(std::size_t px, int n, std::span<const std::uint8_t> color, std::span<const std::uint16_t> lbsp);

    // Unchecked contiguous storage of all samples of a pixel:
    // colors: n_samples * channels bytes, codes: n_samples * channels words.
    const std::uint8_t* colors_of(std::size_t px) const noexcept {
        return colors_.data() + px * static_cast<std::size_t>(n_samples_) * channels_;
    }
    const std::uint16_t* codes_of(std::size_t px) const noexcept {
        return codes_.data() + px * static_cast<std::size_t>(n_samples_) * channels_;
    }

    bool operator==(const BackgroundModel&) const = default;

private:
    friend void copy_into_sample(BackgroundModel&, std::size_t, int, const Frame&, const LbspMap&, std::size_t);

    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    int n_samples_ = kDefaultBackgroundSamples;
    std::vector<std::uint8_t> colors_;
    std::vector<std::uint16_t> codes_;
};

/// Copies the (color, LBSP) pair of `src_px` in the current frame into sample
/// `n` of pixel `dst_px`.
void copy_into_sample(BackgroundModel& model, std::size_t dst_px, int n, const Frame& frame, const LbspMap& lbsp,
                      std::size_t src_px);

/// Fills every sample of every pixel with the pair of a uniformly random pixel
/// in its clamped 3x3 neighborhood.
BackgroundModel init_model(const Frame& first_frame, const LbspMap& first_lbsp, const CounterRng& rng,
                           int n_samples = kDefaultBackgroundSamples);

struct UpdateParams {
    bool neighbor_diffusion = true;
};

/// Stochastic conservative update. Every background pixel (mask == 0) replaces
/// one random sample of its own with probability 1/T(x) and, independently with
/// the same probability, one random sample of a random in-frame 8-neighbor.
/// Writes are applied in ascending pixel order, so colliding neighbor writes
/// resolve to the highest source pixel index.
void maybe_update(BackgroundModel& model, const Frame& frame, const LbspMap& lbsp, const BinaryMask& mask,
                  const StateMap& t_map, const CounterRng& rng, std::uint64_t frame_index,
                  const UpdateParams& params = {});

/// The integer period used for a continuous T value.
inline std::uint32_t update_period(double t) noexcept {
    const double rounded = t < 1.0 ? 1.0 : t + 0.5;
    return static_cast<std::uint32_t>(rounded);
}

} // namespace wisenetmd
