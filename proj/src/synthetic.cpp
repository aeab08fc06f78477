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

#include "wisenetmd/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace wisenetmd {

SyntheticKind parse_synthetic_kind(const std::string& name) {
    if(name == "static_noise")
        return SyntheticKind::static_noise;
    if(name == "moving_box")
        return SyntheticKind::moving_box;
    if(name == "dynamic_band")
        return SyntheticKind::dynamic_band;
    throw Error(ErrorKind::invalid_argument, "unknown synthetic kind '" + name + "'");
}

std::string to_string(SyntheticKind kind) {
    switch(kind) {
        case SyntheticKind::static_noise: return "static_noise";
        case SyntheticKind::moving_box: return "moving_box";
        case SyntheticKind::dynamic_band: return "dynamic_band";
    }
    return "unknown";
}

void validate(const SyntheticSpec& s) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::invalid_argument, "synthetic spec: " + why); };
    if(s.width < kMinFrameSide || s.height < kMinFrameSide)
        fail("frames must be at least 5x5");
    if(s.channels != 1 && s.channels != 3)
        fail("channels must be 1 or 3");
    if(s.frames < 1)
        fail("need at least one frame");
    if(!(s.noise_sigma >= 0.0))
        fail("noise_sigma must be >= 0");
    if(s.kind == SyntheticKind::moving_box) {
        if(s.box_width < 1 || s.box_height < 1 || s.box_width > s.width || s.box_height > s.height)
            fail("box must fit inside the frame");
    }
    if(s.kind == SyntheticKind::dynamic_band) {
        if(s.band_rows < 1 || s.band_rows > s.height)
            fail("band rows must fit inside the frame");
        if(s.band_top >= 0 && s.band_top + s.band_rows > s.height)
            fail("band extends past the bottom edge");
        if(!(s.flip_probability >= 0.0 && s.flip_probability <= 1.0))
            fail("flip probability must lie in [0, 1]");
    }
}

SyntheticSource::SyntheticSource(SyntheticSpec spec) : spec_(spec), rng_(spec.seed) {
    validate(spec_);
    if(spec_.kind == SyntheticKind::dynamic_band) {
        band_state_.resize(static_cast<std::size_t>(spec_.band_rows) * spec_.width);
        for(std::size_t i = 0; i < band_state_.size(); ++i)
            band_state_[i] = static_cast<std::uint8_t>(rng_.uniform(2, 0, i, RngSlot::synth_band_init));
    }
}

namespace {

// Position on a track that extends one box size past the frame edge, so the
// box fully leaves the frame before re-entering on the other side.
int wrap_track(long long pos, int frame_side, int box_side) {
    const long long track = static_cast<long long>(frame_side) + box_side;
    return static_cast<int>(((pos + box_side) % track + track) % track) - box_side;
}

} // namespace

int SyntheticSource::box_left(int k) const noexcept {
    const int x0 = spec_.box_x0 == kBoxOutside ? -spec_.box_width : spec_.box_x0;
    return wrap_track(static_cast<long long>(x0) + static_cast<long long>(spec_.velocity_x) * k, spec_.width,
                      spec_.box_width);
}

int SyntheticSource::box_top(int k) const noexcept {
    const int y0 = spec_.box_y0 == kBoxCentered ? (spec_.height - spec_.box_height) / 2 : spec_.box_y0;
    return wrap_track(static_cast<long long>(y0) + static_cast<long long>(spec_.velocity_y) * k, spec_.height,
                      spec_.box_height);
}

bool SyntheticSource::in_box(int k, int x, int y) const noexcept {
    const int bx = box_left(k);
    const int by = box_top(k);
    return x >= bx && x < bx + spec_.box_width && y >= by && y < by + spec_.box_height;
}

int SyntheticSource::band_top() const noexcept {
    return spec_.band_top >= 0 ? spec_.band_top : (spec_.height - spec_.band_rows) / 2;
}

std::uint8_t SyntheticSource::noisy(int value, std::uint64_t frame, std::size_t channel_index) const {
    if(spec_.noise_sigma <= 0.0)
        return static_cast<std::uint8_t>(value);
    // Box-Muller on two counter-based uniforms
    const double u1 = 1.0 - rng_.uniform01(frame, channel_index, RngSlot::synth_noise_a);
    const double u2 = rng_.uniform01(frame, channel_index, RngSlot::synth_noise_b);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    const double v = std::round(value + spec_.noise_sigma * z);
    return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

std::optional<SyntheticSource::Item> SyntheticSource::next() {
    if(emitted_ >= spec_.frames)
        return std::nullopt;
    const int k = emitted_++;
    const int w = spec_.width;
    const int h = spec_.height;
    const int ch = spec_.channels;
    Item item{Frame(w, h, ch), GtFrame(w, h)};

    if(spec_.kind == SyntheticKind::dynamic_band && k > 0) {
        for(std::size_t i = 0; i < band_state_.size(); ++i)
            if(rng_.uniform01(static_cast<std::uint64_t>(k), i, RngSlot::synth_flip) < spec_.flip_probability)
                band_state_[i] ^= 1;
    }
    const int band0 = band_top();

    for(int y = 0; y < h; ++y) {
        for(int x = 0; x < w; ++x) {
            const std::size_t px = static_cast<std::size_t>(y) * w + x;
            int value = spec_.base_color;
            if(spec_.kind == SyntheticKind::moving_box) {
                if(in_box(k, x, y)) {
                    value = spec_.box_color;
                    item.gt[px] = kForeground;
                }
            } else if(spec_.kind == SyntheticKind::dynamic_band && y >= band0 && y < band0 + spec_.band_rows) {
                const std::size_t bi = static_cast<std::size_t>(y - band0) * w + x;
                value = band_state_[bi] ? spec_.band_color_b : spec_.band_color_a;
            }
            for(int c = 0; c < ch; ++c)
                item.frame[px * ch + c] = noisy(value, static_cast<std::uint64_t>(k), px * ch + c);
        }
    }
    return item;
}

SyntheticSequence generate(const SyntheticSpec& spec) {
    SyntheticSource source(spec);
    SyntheticSequence seq;
    seq.frames.reserve(static_cast<std::size_t>(spec.frames));
    seq.gt.reserve(static_cast<std::size_t>(spec.frames));
    while(auto item = source.next()) {
        seq.frames.push_back(std::move(item->frame));
        seq.gt.push_back(std::move(item->gt));
    }
    return seq;
}

void write_synthetic(const SyntheticSpec& spec, const fs::path& root) {
    SyntheticSource source(spec);
    std::error_code ec;
    fs::create_directories(root / "input", ec);
    fs::create_directories(root / "groundtruth", ec);
    if(!fs::is_directory(root / "input") || !fs::is_directory(root / "groundtruth"))
        throw Error(ErrorKind::io, "cannot create output tree under " + root.string());
    const char* ext = spec.channels == 3 ? "ppm" : "pgm";
    char name[64];
    while(auto item = source.next()) {
        const int index = source.frames_emitted();
        std::snprintf(name, sizeof(name), "in%06d.%s", index, ext);
        write_pnm(item->frame, root / "input" / name);
        std::snprintf(name, sizeof(name), "gt%06d.pgm", index);
        Frame gt(item->gt.width(), item->gt.height(), 1);
        std::copy(item->gt.data().begin(), item->gt.data().end(), gt.data().begin());
        write_pnm(gt, root / "groundtruth" / name);
    }
    std::ofstream roi(root / "temporalROI.txt");
    roi << 1 << ' ' << spec.frames << '\n';
    if(!roi)
        throw Error(ErrorKind::io, "cannot write temporalROI.txt");
}

} // namespace wisenetmd
