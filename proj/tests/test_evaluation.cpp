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
#include <sstream>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wisenetmd/evaluation.hpp"

using namespace wisenetmd;

namespace {

GtFrame random_gt(std::mt19937& rng, int w, int h) {
    static const std::uint8_t labels[] = {kGtStatic, kGtShadow, kGtOutsideRoi, kGtUnknown, kGtMotion};
    std::uniform_int_distribution<int> pick(0, 4);
    GtFrame gt(w, h);
    for(auto& v : gt.data())
        v = labels[pick(rng)];
    return gt;
}

} // namespace

TEST_CASE("perfect prediction") {
    std::mt19937 rng(4);
    const BinaryMask m = oracle::random_mask(rng, 10, 10);
    GtFrame gt(10, 10);
    for(std::size_t px = 0; px < gt.pixel_count(); ++px)
        gt[px] = m[px] == kForeground ? kGtMotion : kGtStatic;
    Confusion c;
    accumulate(c, m, gt);
    CHECK(c.fp == 0);
    CHECK(c.fn == 0);
    CHECK(c.total() == 100);
}

TEST_CASE("label exclusion and shadow convention") {
    const BinaryMask on(4, 4, 1, kForeground);
    Confusion c;
    accumulate(c, on, GtFrame(4, 4, 1, kGtUnknown));
    accumulate(c, on, GtFrame(4, 4, 1, kGtOutsideRoi));
    CHECK(c == Confusion{});
    accumulate(c, on, GtFrame(4, 4, 1, kGtShadow));
    CHECK(c.fp == 16);
    accumulate(c, on, GtFrame(4, 4, 1, kGtMotion), nullptr, false);
    CHECK(c.tp == 0);
    BinaryMask roi(4, 4);
    roi.at(1, 1) = kForeground;
    accumulate(c, on, GtFrame(4, 4, 1, kGtMotion), &roi);
    CHECK(c.tp == 1);
    CHECK(error_kind([&] { accumulate(c, on, GtFrame(5, 4)); }) == ErrorKind::geometry);
}

TEST_CASE("hand example") {
    const Metrics m = metrics({90, 10, 890, 10});
    CHECK(*m.precision == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(*m.fpr == doctest::Approx(10.0 / 900.0).epsilon(1e-9));
    CHECK(*m.fnr == doctest::Approx(0.1).epsilon(1e-9));

    const Metrics none = metrics({0, 0, 5, 5});
    CHECK_FALSE(none.precision);
    CHECK(none.fpr);
    CHECK_FALSE(metrics({}).fnr);
}

TEST_CASE("accumulate matches an independent recount") {
    std::mt19937 rng(99);
    Confusion total, want_total;
    for(int trial = 0; trial < 100; ++trial) {
        const BinaryMask result = oracle::random_mask(rng, 12, 9);
        const GtFrame gt = random_gt(rng, 12, 9);
        const BinaryMask roi = oracle::random_mask(rng, 12, 9, 0.8);
        const BinaryMask* roi_ptr = trial % 2 ? &roi : nullptr;
        Confusion c;
        accumulate(c, result, gt, roi_ptr);
        const Confusion want = oracle::recount(result, gt, roi_ptr);
        REQUIRE(c == want);
        total += c;
        want_total += want;
    }
    CHECK(total == want_total);
}

TEST_CASE("aggregate") {
    CHECK(error_kind([] { aggregate({}); }) == ErrorKind::invalid_argument);

    const MetricsRow a{"a", "cat1", {}, {0.8, 0.01, 0.2}};
    AggregateReport one = aggregate({a});
    CHECK(*one.overall.precision == doctest::Approx(0.8));
    CHECK(*one.overall.fnr == doctest::Approx(0.2));

    const MetricsRow b{"b", "cat1", {}, {0.9, std::nullopt, 0.4}};
    const AggregateReport two = aggregate({a, b});
    REQUIRE(two.categories.size() == 1);
    CHECK(*two.categories[0].mean.precision == doctest::Approx(0.85));
    // undefined values are skipped, not counted as zero
    CHECK(*two.categories[0].mean.fpr == doctest::Approx(0.01));

    // three sequences in cat1 averaging 0.8, one in cat2 at 0.9: mean of means
    const MetricsRow c{"c", "cat1", {}, {0.7, 0.0, 0.0}};
    const MetricsRow d{"d", "cat2", {}, {0.9, 0.0, 0.0}};
    const AggregateReport mix = aggregate({a, b, c, d});
    REQUIRE(mix.categories.size() == 2);
    CHECK(mix.categories[1].category == "cat2");
    CHECK(*mix.overall.precision == doctest::Approx(0.85));
}

TEST_CASE("csv layout") {
    std::ostringstream out;
    write_metrics_csv(out, {{"seq", "cat", {90, 10, 890, 10}, metrics({90, 10, 890, 10})},
                            {"empty", "cat", {0, 0, 4, 0}, metrics({0, 0, 4, 0})}});
    CHECK(out.str() == "sequence,category,tp,fp,tn,fn,precision,fpr,fnr\n"
                       "seq,cat,90,10,890,10,0.900000,0.011111,0.100000\n"
                       "empty,cat,0,0,4,0,,0.000000,\n");
}
