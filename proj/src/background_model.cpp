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

#include "wisenetmd/background_model.hpp"

#include <algorithm>
#include <array>

namespace wisenetmd {

BackgroundModel::BackgroundModel(int width, int height, int channels, int n_samples)
    : width_(width), height_(height), channels_(channels), n_samples_(n_samples) {
    if(width < 0 || height < 0 || channels < 1 || n_samples < 1)
        throw Error(ErrorKind::invalid_argument, "invalid background model geometry");
    const std::size_t n = pixel_count() * static_cast<std::size_t>(n_samples) * channels;
    colors_.assign(n, 0);
    codes_.assign(n, 0);
}

BackgroundModel::SampleView BackgroundModel::sample_at(std::size_t px, int n) const {
    if(px >= pixel_count())
        throw Error(ErrorKind::index, "sample_at: pixel index out of range");
    if(n < 0 || n >= n_samples_)
        throw Error(ErrorKind::index, "sample_at: sample index " + std::to_string(n) + " out of range [0, " +
                                          std::to_string(n_samples_) + ")");
    const std::size_t at = (px * n_samples_ + n) * channels_;
    return {{colors_.data() + at, static_cast<std::size_t>(channels_)}, {codes_.data() + at, static_cast<std::size_t>(channels_)}};
}

void BackgroundModel::set_sample(std::size_t px, int n, std::span<const std::uint8_t> color,
                                 std::span<const std::uint16_t> lbsp) {
    (void)sample_at(px, n);
    if(color.size() != static_cast<std::size_t>(channels_) || lbsp.size() != static_cast<std::size_t>(channels_))
        throw Error(ErrorKind::geometry, "set_sample: channel count mismatch");
    const std::size_t at = (px * n_samples_ + n) * channels_;
    std::copy(color.begin(), color.end(), colors_.begin() + static_cast<std::ptrdiff_t>(at));
    std::copy(lbsp.begin(), lbsp.end(), codes_.begin() + static_cast<std::ptrdiff_t>(at));
}

void copy_into_sample(BackgroundModel& model, std::size_t dst_px, int n, const Frame& frame, const LbspMap& lbsp,
                      std::size_t src_px) {
    const std::size_t ch = static_cast<std::size_t>(model.channels_);
    const std::size_t at = (dst_px * model.n_samples_ + n) * ch;
    const std::size_t src = src_px * ch;
    for(std::size_t c = 0; c < ch; ++c) {
        model.colors_[at + c] = frame[src + c];
        model.codes_[at + c] = lbsp[src + c];
    }
}

BackgroundModel init_model(const Frame& first_frame, const LbspMap& first_lbsp, const CounterRng& rng, int n_samples) {
    require_same_layout(first_frame, first_lbsp, "init_model");
    const int w = first_frame.width();
    const int h = first_frame.height();
    BackgroundModel model(w, h, first_frame.channels(), n_samples);
    for(int y = 0; y < h; ++y) {
        for(int x = 0; x < w; ++x) {
            const std::size_t px = static_cast<std::size_t>(y) * w + x;
            for(int n = 0; n < n_samples; ++n) {
                const std::uint32_t pick = rng.uniform(9, 0, px, RngSlot::init_neighbor, static_cast<std::uint32_t>(n));
                const int sx = std::clamp(x + static_cast<int>(pick % 3) - 1, 0, w - 1);
                const int sy = std::clamp(y + static_cast<int>(pick / 3) - 1, 0, h - 1);
                copy_into_sample(model, px, n, first_frame, first_lbsp, static_cast<std::size_t>(sy) * w + sx);
            }
        }
    }
    return model;
}

void maybe_update(BackgroundModel& model, const Frame& frame, const LbspMap& lbsp, const BinaryMask& mask,
                  const StateMap& t_map, const CounterRng& rng, std::uint64_t frame_index, const UpdateParams& params) {
    require_same_layout(frame, lbsp, "maybe_update");
    require_same_geometry(frame, mask, "maybe_update");
    require_same_geometry(frame, t_map, "maybe_update");
    if(frame.width() != model.width() || frame.height() != model.height() || frame.channels() != model.channels())
        throw Error(ErrorKind::geometry, "maybe_update: model/frame geometry mismatch");
    const int w = frame.width();
    const int h = frame.height();
    const auto n_samples = static_cast<std::uint32_t>(model.n_samples());
    std::array<std::size_t, 8> neighbors{};
    for(int y = 0; y < h; ++y) {
        for(int x = 0; x < w; ++x) {
            const std::size_t px = static_cast<std::size_t>(y) * w + x;
            if(mask[px] != kBackground)
                continue;
            const std::uint32_t period = update_period(t_map[px]);
            if(rng.uniform(period, frame_index, px, RngSlot::update_self_fire) == 0) {
                const auto slot = rng.uniform(n_samples, frame_index, px, RngSlot::update_self_slot);
                copy_into_sample(model, px, static_cast<int>(slot), frame, lbsp, px);
            }
            if(!params.neighbor_diffusion || rng.uniform(period, frame_index, px, RngSlot::update_neighbor_fire) != 0)
                continue;
            std::uint32_t count = 0;
            for(int dy = -1; dy <= 1; ++dy)
                for(int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if((dx || dy) && nx >= 0 && nx < w && ny >= 0 && ny < h)
                        neighbors[count++] = static_cast<std::size_t>(ny) * w + nx;
                }
            if(count == 0)
                continue;
            const std::size_t target = neighbors[rng.uniform(count, frame_index, px, RngSlot::update_neighbor_pick)];
            const auto slot = rng.uniform(n_samples, frame_index, px, RngSlot::update_neighbor_slot);
            copy_into_sample(model, target, static_cast<int>(slot), frame, lbsp, px);
        }
    }
}

} // namespace wisenetmd
