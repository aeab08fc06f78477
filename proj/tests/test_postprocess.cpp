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

#include <random>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wisenetmd/postprocess.hpp"

using namespace wisenetmd;

namespace {

BinaryMask block(int w, int h, int x0, int y0, int bw, int bh) {
    BinaryMask m(w, h);
    for(int y = y0; y < y0 + bh; ++y)
        for(int x = x0; x < x0 + bw; ++x)
            m.at(x, y) = kForeground;
    return m;
}

bool is_binary(const BinaryMask& m) {
    for(auto v : m.data())
        if(v != kForeground && v != kBackground)
            return false;
    return true;
}

} // namespace

TEST_CASE("opening removes an isolated speck") {
    BinaryMask m(9, 9);
    m.at(4, 4) = kForeground;
    CHECK(foreground_count(morph_open(m, 1)) == 0);
}

TEST_CASE("opening keeps a solid block") {
    const BinaryMask m = block(20, 20, 5, 5, 10, 10);
    CHECK(morph_open(m, 1) == m);
}

TEST_CASE("closing fills a one-pixel hole") {
    BinaryMask m = block(20, 20, 5, 5, 10, 10);
    m.at(9, 9) = kBackground;
    CHECK(morph_close(m, 1) == block(20, 20, 5, 5, 10, 10));
}

TEST_CASE("erosion treats the border as background") {
    const BinaryMask full(6, 6, 1, kForeground);
    const BinaryMask e = erode(full, 1);
    CHECK(e.at(0, 0) == kBackground);
    CHECK(e.at(5, 3) == kBackground);
    CHECK(e.at(2, 2) == kForeground);
}

TEST_CASE("erode and dilate match the window oracle") {
    std::mt19937 rng(8);
    for(int trial = 0; trial < 40; ++trial) {
        const BinaryMask m = oracle::random_mask(rng, 11 + trial % 5, 7 + trial % 3, 0.6);
        const int r = 1 + trial % 3;
        REQUIRE(erode(m, r) == oracle::erode(m, r));
        REQUIRE(dilate(m, r) == oracle::dilate(m, r));
        REQUIRE(morph_open(m, r) == oracle::dilate(oracle::erode(m, r), r));
        REQUIRE(morph_close(m, r) == oracle::erode(oracle::dilate(m, r), r));
    }
}

TEST_CASE("median filter") {
    SUBCASE("uniform masks are unchanged") {
        CHECK(median_filter(BinaryMask(12, 12), 9) == BinaryMask(12, 12));
        const BinaryMask on(12, 12, 1, kForeground);
        CHECK(median_filter(on, 9) == on);
    }
    SUBCASE("a single foreground pixel is voted out") {
        BinaryMask m(15, 15);
        m.at(7, 7) = kForeground;
        CHECK(foreground_count(median_filter(m, 9)) == 0);
    }
    SUBCASE("matches the sorting oracle") {
        std::mt19937 rng(21);
        for(int trial = 0; trial < 40; ++trial) {
            const BinaryMask m = oracle::random_mask(rng, 13, 10);
            for(int size : {3, 5, 9}) {
                const BinaryMask out = median_filter(m, size);
                REQUIRE(out == oracle::median(m, size));
                REQUIRE(is_binary(out));
            }
        }
    }
    SUBCASE("even size is rejected") {
        CHECK(error_kind([] { median_filter(BinaryMask(5, 5), 4); }) == ErrorKind::invalid_argument);
    }
}

TEST_CASE("postprocess") {
    std::mt19937 rng(2);
    const BinaryMask m = oracle::random_mask(rng, 30, 20, 0.4);
    PostParams off;
    off.enabled = false;
    CHECK(postprocess(m, off) == m);

    const PostParams on;
    const BinaryMask want = oracle::median(oracle::erode(oracle::dilate(oracle::dilate(oracle::erode(m, 1), 1), 1), 1), 9);
    CHECK(postprocess(m, on) == want);
    CHECK(is_binary(postprocess(m, on)));

    PostParams bad;
    bad.median_size = 8;
    CHECK(error_kind([&] { postprocess(m, bad); }) == ErrorKind::config);
    bad = {};
    bad.open_radius = -1;
    CHECK(error_kind([&] { validate(bad); }) == ErrorKind::config);
}
