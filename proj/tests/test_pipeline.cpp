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


#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"
#include "wisenetmd/frame_io.hpp"
#include "wisenetmd/pipeline.hpp"
#include "wisenetmd/synthetic.hpp"

using namespace wisenetmd;

namespace {

SyntheticSequence small_box(int frames) {
    SyntheticSpec s;
    s.kind = SyntheticKind::moving_box;
    s.width = 48;
    s.height = 32;
    s.box_width = 10;
    s.box_height = 10;
    s.frames = frames;
    return generate(s);
}

bool subset(const BinaryMask& inner, const BinaryMask& outer) {
    for(std::size_t px = 0; px < inner.size(); ++px)
        if(inner[px] == kForeground && outer[px] != kForeground)
            return false;
    return true;
}

} // namespace

TEST_CASE("frame 1 is all background") {
    SyntheticSpec s;
    s.width = 20;
    s.height = 16;
    s.frames = 1;
    Pipeline p(PipelineConfig{});
    CHECK_FALSE(p.initialized());
    const FrameResult r = p.process(generate(s).frames[0]);
    CHECK(p.frame_index() == 1);
    CHECK(foreground_count(r.raw) == 0);
    CHECK(foreground_count(r.rechecked) == 0);
    CHECK(foreground_count(r.final) == 0);
    CHECK(r.ms >= 0.0);
}

TEST_CASE("runs are deterministic across repeats and thread counts") {
    const auto seq = small_box(40);
    PipelineConfig c;
    c.seed = 5;
    Pipeline a(c, 1), b(c, 1), d(c, 4);
    for(const auto& f : seq.frames) {
        const FrameResult ra = a.process(f);
        const FrameResult rb = b.process(f);
        const FrameResult rd = d.process(f);
        REQUIRE(ra.final == rb.final);
        REQUIRE(ra.raw == rd.raw);
        REQUIRE(ra.rechecked == rd.rechecked);
        REQUIRE(ra.final == rd.final);
    }
    CHECK(a.model() == d.model());
    CHECK(a.feedback().t_rate == d.feedback().t_rate);
    CHECK(a.feedback().r == d.feedback().r);

    c.seed = 6;
    Pipeline e(c, 1);
    for(const auto& f : seq.frames)
        e.process(f);
    CHECK_FALSE(e.model() == a.model());
}

TEST_CASE("the box is detected and the eraser never adds foreground") {
    const auto seq = small_box(60);
    Pipeline p(PipelineConfig{});
    std::size_t detected = 0;
    for(std::size_t k = 0; k < seq.frames.size(); ++k) {
        const FrameResult r = p.process(seq.frames[k]);
        REQUIRE(subset(r.rechecked, r.raw));
        if(k == 40)
            for(std::size_t px = 0; px < r.raw.size(); ++px)
                detected += r.raw[px] == kForeground && seq.gt[k][px] == kForeground;
    }
    CHECK(detected >= 95);
}

TEST_CASE("constant stream reaches the static fixed point") {
    const Frame f(24, 16, 3, 77);
    Pipeline p(PipelineConfig{});
    FrameResult r;
    for(int k = 0; k < 500; ++k) {
        r = p.process(f);
        REQUIRE(foreground_count(r.final) == 0);
    }
    for(double t : p.feedback().t_rate.data())
        CHECK(t == 2.0);
    for(double v : p.feedback().r.data())
        CHECK(v <= 1.2);
    TempDir dir;
    p.dump_state(dir.path());
    const Frame t_map = read_image(dir / "T_2-256.pgm");
    CHECK(*std::max_element(t_map.data().begin(), t_map.data().end()) == 0);
}

TEST_CASE("recheck disabled gives the raw mask") {
    SyntheticSpec s;
    s.kind = SyntheticKind::dynamic_band;
    s.width = 30;
    s.height = 24;
    s.band_rows = 8;
    s.frames = 130;
    const auto seq = generate(s);
    PipelineConfig c;
    c.recheck_enabled = false;
    Pipeline p(c);
    for(const auto& f : seq.frames) {
        const FrameResult r = p.process(f);
        REQUIRE(r.rechecked == r.raw);
    }
}

TEST_CASE("dynamic band drives DR on band rows only") {
    SyntheticSpec s;
    s.kind = SyntheticKind::dynamic_band;
    s.width = 40;
    s.height = 30;
    s.band_rows = 10;
    s.frames = 150;
    SyntheticSource src(s);
    Pipeline p(PipelineConfig{});
    while(auto item = src.next()) {
        const FrameResult r = p.process(item->frame);
        REQUIRE(subset(r.rechecked, r.raw));
    }
    TempDir dir;
    p.dump_state(dir.path());
    const Frame dr = read_image(dir / "DR_0-1.pgm");
    std::size_t band_on = 0, band = 0, outside_on = 0, outside = 0;
    for(int y = 0; y < 30; ++y)
        for(int x = 0; x < 40; ++x) {
            const bool on = dr.at(x, y, 0) == 255;
            if(src.in_band(y)) {
                ++band;
                band_on += on;
            } else {
                ++outside;
                outside_on += on;
            }
        }
    CHECK(band_on >= band * 9 / 10);
    CHECK(outside_on <= outside / 100);
}

TEST_CASE("state dumps") {
    Pipeline p(PipelineConfig{});
    TempDir dir;
    CHECK(error_kind([&] { p.dump_state(dir.path()); }) == ErrorKind::state);
    p.process(Frame(10, 8, 1, 50));
    p.dump_state(dir / "s");
    for(const char* name : {"R_1-9.pgm", "T_2-256.pgm", "v_0.1-10.pgm", "Dmin_0-1.pgm", "Sfeed_0-1.pgm",
                            "BR_0-0.1.pgm", "DR_0-1.pgm"}) {
        const Frame img = read_image(dir / "s" / name);
        CHECK(img.width() == 10);
        CHECK(img.channels() == 1);
    }
}

TEST_CASE("normalize_map saturates") {
    StateMap m(3, 1);
    m[0] = 0.5;
    m[1] = 2.0;
    m[2] = 9.0;
    const Frame f = normalize_map(m, 1.0, 9.0);
    CHECK(f[0] == 0);
    CHECK(f[1] == 32);
    CHECK(f[2] == 255);
}

TEST_CASE("invalid input") {
    Pipeline p(PipelineConfig{});
    CHECK(error_kind([&] { p.process(Frame(4, 10, 3)); }) == ErrorKind::geometry);
    p.process(Frame(10, 10, 3));
    CHECK(error_kind([&] { p.process(Frame(10, 11, 3)); }) == ErrorKind::geometry);
    CHECK(error_kind([&] { p.process(Frame(10, 10, 1)); }) == ErrorKind::geometry);
    CHECK(error_kind([] { Pipeline(PipelineConfig{}, 0); }) == ErrorKind::invalid_argument);
    PipelineConfig bad;
    bad.median_size = 2;
    CHECK(error_kind([&] { Pipeline{bad}; }) == ErrorKind::config);
}
