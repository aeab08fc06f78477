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

#include "wisenetmd/dynamic_recheck.hpp"

#include <bit>
#include <limits>

#include "wisenetmd/classifier.hpp"
#include "wisenetmd/lbsp.hpp"
#include "wisenetmd/parallel.hpp"

namespace wisenetmd {

namespace {

template <typename Fn>
void for_each_pixel(int threads, int width, int height, Fn&& fn) {
    const std::size_t w = static_cast<std::size_t>(width);
    parallel_rows(threads, height, [&](int y0, int y1) {
        for(std::size_t px = y0 * w; px < y1 * w; ++px)
            fn(px);
    });
}

} // namespace

BlinkState::BlinkState(int width, int height, BlinkParams p)
    : params(p), tb(width, height), br(width, height), dr(width, height) {}

void update_blink(BlinkState& state, const BinaryMask& s_cur, const BinaryMask& s_prev, int t, int threads) {
    require_same_geometry(s_cur, s_prev, "update_blink");
    require_same_geometry(s_cur, state.tb, "update_blink");
    if(t < 2)
        throw Error(ErrorKind::invalid_argument, "update_blink needs t >= 2");
    const bool warm = t >= state.params.warmup_frames;
    for_each_pixel(threads, s_cur.width(), s_cur.height(), [&](std::size_t px) {
        if(s_cur[px] != s_prev[px])
            ++state.tb[px];
        state.br[px] = static_cast<double>(state.tb[px]) / t;
        state.dr[px] = (warm && state.br[px] > state.params.blink_threshold) ? kForeground : kBackground;
    });
}

TemporalState::TemporalState(int width, int height, TemporalParams p)
    : params(p), dist_last(width, height), s_feed(width, height) {}

void update_temporal(TemporalState& state, const Frame& frame, const Frame& prev_frame, const LbspMap& lbsp,
                     const LbspMap& prev_lbsp, const BinaryMask& s_prev, int threads) {
    require_same_layout(frame, prev_frame, "update_temporal");
    require_same_layout(frame, lbsp, "update_temporal");
    require_same_layout(frame, prev_lbsp, "update_temporal");
    require_same_geometry(frame, s_prev, "update_temporal");
    require_same_geometry(frame, state.dist_last, "update_temporal");
    const int ch = frame.channels();
    const double alpha = state.params.alpha_feed;
    for_each_pixel(threads, frame.width(), frame.height(), [&](std::size_t px) {
        const int l1 = l1_color(frame.pixel(px), prev_frame.pixel(px));
        int ham = 0;
        for(int c = 0; c < ch; ++c)
            ham += hamming(lbsp[px * ch + c], prev_lbsp[px * ch + c]);
        state.dist_last[px] = normalized_distance(l1, ham, ch);
        state.s_feed[px] = (1.0 - alpha) * state.s_feed[px] + (alpha / 255.0) * s_prev[px];
    });
}

bool fp_collect_predicate(std::size_t px, const BinaryMask& s_cur, const BinaryMask& s_prev, const TemporalState& state) {
    return s_cur[px] != s_prev[px] && state.dist_last[px] > state.params.dist_gate &&
           state.s_feed[px] < state.params.feed_gate;
}

BinaryMask fp_collect_mask(const BinaryMask& s_cur, const BinaryMask& s_prev, const TemporalState& state, int threads) {
    require_same_geometry(s_cur, s_prev, "fp_collect_mask");
    require_same_geometry(s_cur, state.dist_last, "fp_collect_mask");
    BinaryMask out(s_cur.width(), s_cur.height());
    for_each_pixel(threads, s_cur.width(), s_cur.height(), [&](std::size_t px) {
        out[px] = fp_collect_predicate(px, s_cur, s_prev, state) ? kForeground : kBackground;
    });
    return out;
}

DynamicBgModel::DynamicBgModel(int width, int height, int channels, int m_samples, double dyn_color_threshold)
    : width_(width), height_(height), channels_(channels), m_samples_(m_samples), threshold_(dyn_color_threshold) {
    if(m_samples < 1 || m_samples > kMaxDynamicSamples)
        throw Error(ErrorKind::config, "m_dyn_samples must lie in [1, 32]");
    if(!(dyn_color_threshold > 0.0))
        throw Error(ErrorKind::config, "dyn_color_threshold must be > 0");
    const std::size_t pixels = static_cast<std::size_t>(width) * height;
    colors_.assign(pixels * m_samples * channels, 0);
    filled_.assign(pixels, 0);
}

int DynamicBgModel::fill_count(std::size_t px) const {
    return std::popcount(filled_.at(px));
}

bool DynamicBgModel::slot_filled(std::size_t px, int slot) const {
    if(slot < 0 || slot >= m_samples_)
        throw Error(ErrorKind::index, "dynamic sample slot out of range");
    return (filled_.at(px) >> slot) & 1U;
}

std::span<const std::uint8_t> DynamicBgModel::slot_color(std::size_t px, int slot) const {
    if(px >= filled_.size() || slot < 0 || slot >= m_samples_)
        throw Error(ErrorKind::index, "dynamic sample index out of range");
    return {colors_.data() + at(px, slot), static_cast<std::size_t>(channels_)};
}

void DynamicBgModel::write_slot(std::size_t px, int slot, std::span<const std::uint8_t> color) {
    if(px >= filled_.size() || slot < 0 || slot >= m_samples_)
        throw Error(ErrorKind::index, "dynamic sample index out of range");
    std::copy(color.begin(), color.end(), colors_.begin() + static_cast<std::ptrdiff_t>(at(px, slot)));
    filled_[px] |= 1U << slot;
}

int DynamicBgModel::nearest_distance(std::size_t px, std::span<const std::uint8_t> color) const {
    std::uint32_t bits = filled_[px];
    if(!bits)
        return -1;
    int best = std::numeric_limits<int>::max();
    while(bits) {
        const int slot = std::countr_zero(bits);
        bits &= bits - 1;
        best = std::min(best, l1_color(color, {colors_.data() + at(px, slot), static_cast<std::size_t>(channels_)}));
    }
    return best;
}

void collect_fp(DynamicBgModel& model, const Frame& frame, const BinaryMask& predicate, const CounterRng& rng,
                std::uint64_t frame_index, int threads) {
    require_same_geometry(frame, predicate, "collect_fp");
    if(frame.width() != model.width() || frame.height() != model.height() || frame.channels() != model.channels())
        throw Error(ErrorKind::geometry, "collect_fp: model/frame geometry mismatch");
    const auto m = static_cast<std::uint32_t>(model.m_samples());
    for_each_pixel(threads, frame.width(), frame.height(), [&](std::size_t px) {
        if(predicate[px] != kForeground)
            return;
        const auto slot = rng.uniform(m, frame_index, px, RngSlot::dyn_slot);
        model.write_slot(px, static_cast<int>(slot), frame.pixel(px));
    });
}

BinaryMask recheck(const BinaryMask& mask, const BlinkState& blink, const DynamicBgModel& model, const Frame& frame,
                   int threads) {
    require_same_geometry(mask, frame, "recheck");
    require_same_geometry(mask, blink.dr, "recheck");
    if(frame.width() != model.width() || frame.height() != model.height() || frame.channels() != model.channels())
        throw Error(ErrorKind::geometry, "recheck: model/frame geometry mismatch");
    BinaryMask out = mask;
    const double threshold = model.dyn_color_threshold();
    for_each_pixel(threads, mask.width(), mask.height(), [&](std::size_t px) {
        if(mask[px] != kForeground || blink.dr[px] != kForeground)
            return;
        const int nearest = model.nearest_distance(px, frame.pixel(px));
        if(nearest >= 0 && nearest < threshold)
            out[px] = kBackground;
    });
    return out;
}

} // namespace wisenetmd
