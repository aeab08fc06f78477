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

#include <cmath>

#include "test_util.hpp"
#include "wisenetmd/evaluation.hpp"
#include "wisenetmd/frame_io.hpp"
#include "wisenetmd/synthetic.hpp"

using namespace wisenetmd;

TEST_CASE("kind names") {
    for(auto k : {SyntheticKind::static_noise, SyntheticKind::moving_box, SyntheticKind::dynamic_band})
        CHECK(parse_synthetic_kind(to_string(k)) == k);
    CHECK(error_kind([] { parse_synthetic_kind("waves"); }) == ErrorKind::invalid_argument);
}

TEST_CASE("zero noise static scene is constant") {
    SyntheticSpec s;
    s.width = 16;
    s.height = 12;
    s.frames = 5;
    s.noise_sigma = 0.0;
    const auto seq = generate(s);
    REQUIRE(seq.frames.size() == 5);
    for(const auto& f : seq.frames)
        CHECK(f == Frame(16, 12, 3, 128));
    for(const auto& g : seq.gt)
        CHECK(g == GtFrame(16, 12));
}

TEST_CASE("same seed is bit-identical, other seed differs") {
    SyntheticSpec s;
    s.kind = SyntheticKind::dynamic_band;
    s.width = 20;
    s.height = 20;
    s.band_rows = 6;
    s.frames = 4;
    const auto a = generate(s);
    const auto b = generate(s);
    CHECK(a.frames == b.frames);
    s.seed = 2;
    CHECK(generate(s).frames != a.frames);
}

TEST_CASE("noise statistics") {
    SyntheticSpec s;
    s.width = 64;
    s.height = 64;
    s.frames = 4;
    s.noise_sigma = 2.0;
    const auto seq = generate(s);
    double sum = 0, sq = 0;
    std::size_t n = 0;
    for(const auto& f : seq.frames)
        for(auto v : f.data()) {
            sum += v;
            sq += (v - 128.0) * (v - 128.0);
            ++n;
        }
    CHECK(sum / n == doctest::Approx(128.0).epsilon(0.002));
    // rounding adds 1/12 to the variance
    CHECK(std::sqrt(sq / n) == doctest::Approx(std::sqrt(4.0 + 1.0 / 12.0)).epsilon(0.03));
}

TEST_CASE("moving box kinematics and exact ground truth") {
    SyntheticSpec s;
    s.kind = SyntheticKind::moving_box;
    s.width = 60;
    s.height = 30;
    s.box_width = 10;
    s.box_height = 8;
    s.box_x0 = 5;
    s.box_y0 = 3;
    s.velocity_x = 1;
    s.frames = 10;
    s.noise_sigma = 0.0;
    SyntheticSource src(s);
    for(int k = 0; k < 10; ++k) {
        CHECK(src.box_left(k) == 5 + k);
        CHECK(src.box_top(k) == 3);
    }
    const auto seq = generate(s);
    for(int k = 0; k < 10; ++k)
        for(int y = 0; y < 30; ++y)
            for(int x = 0; x < 60; ++x) {
                const bool in = x >= 5 + k && x < 15 + k && y >= 3 && y < 11;
                REQUIRE((seq.gt[k].at(x, y) == kGtMotion) == in);
                REQUIRE(seq.frames[k].at(x, y, 0) == (in ? 200 : 128));
            }
}

TEST_CASE("default box enters from the left and wraps after leaving") {
    SyntheticSpec s;
    s.kind = SyntheticKind::moving_box;
    s.width = 40;
    s.height = 20;
    s.box_width = 10;
    s.box_height = 10;
    s.velocity_x = 2;
    SyntheticSource src(s);
    CHECK(src.box_left(0) == -10);
    CHECK(src.box_top(0) == 5);
    CHECK(src.box_left(5) == 0);
    CHECK(src.box_left(24) == 38);
    // track length 50, period 25 frames
    CHECK(src.box_left(25) == -10);
    CHECK_FALSE(src.in_box(0, 0, 7));
    CHECK(src.in_box(1, 1, 7));
}

TEST_CASE("band flip rate and ground truth") {
    SyntheticSpec s;
    s.kind = SyntheticKind::dynamic_band;
    s.width = 10;
    s.height = 8;
    s.band_rows = 2;
    s.band_top = 3;
    s.flip_probability = 0.5;
    s.noise_sigma = 0.0;
    s.channels = 1;
    s.frames = 1001;
    const auto seq = generate(s);
    for(std::size_t px = 0; px < 80; ++px) {
        const int y = static_cast<int>(px / 10);
        int flips = 0;
        for(int k = 1; k < 1001; ++k)
            flips += seq.frames[k][px] != seq.frames[k - 1][px];
        if(y == 3 || y == 4) {
            CHECK(std::abs(flips / 1000.0 - 0.5) < 0.06);
            REQUIRE((seq.frames[0][px] == 40 || seq.frames[0][px] == 230));
        } else {
            CHECK(flips == 0);
        }
    }
    for(const auto& g : seq.gt)
        REQUIRE(g == GtFrame(10, 8));
}

TEST_CASE("invalid specs") {
    SyntheticSpec s;
    s.kind = SyntheticKind::moving_box;
    s.box_width = 400;
    CHECK(error_kind([&] { generate(s); }) == ErrorKind::invalid_argument);
    s = {};
    s.width = 4;
    CHECK(error_kind([&] { generate(s); }) == ErrorKind::invalid_argument);
    s = {};
    s.kind = SyntheticKind::dynamic_band;
    s.flip_probability = 1.5;
    CHECK(error_kind([&] { generate(s); }) == ErrorKind::invalid_argument);
}

TEST_CASE("written tree reads back") {
    TempDir dir;
    SyntheticSpec s;
    s.kind = SyntheticKind::moving_box;
    s.width = 32;
    s.height = 24;
    s.box_width = 8;
    s.box_height = 8;
    s.frames = 6;
    write_synthetic(s, dir.path());
    const auto seq = generate(s);
    const SequenceSpec spec = load_cdnet_sequence(dir.path());
    REQUIRE(spec.gt_dir);
    REQUIRE(spec.temporal_roi);
    CHECK(spec.temporal_roi->first == 1);
    CHECK(spec.temporal_roi->last == 6);
    const auto frames = load_sequence(spec);
    CHECK(frames == seq.frames);
    CHECK(read_gt(*spec.gt_dir / "gt000004.pgm") == seq.gt[3]);
}
