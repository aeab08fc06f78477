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

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wisenetmd/runner.hpp"
#include "wisenetmd/synthetic.hpp"

using namespace wisenetmd;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

SyntheticSpec tiny_box(int frames) {
    SyntheticSpec s;
    s.kind = SyntheticKind::moving_box;
    s.width = 32;
    s.height = 24;
    s.box_width = 8;
    s.box_height = 8;
    s.frames = frames;
    return s;
}

} // namespace

TEST_CASE("timing statistics") {
    const TimingStats t = timing_stats({4.0, 1.0, 3.0, 2.0, 10.0}, 0.5);
    CHECK(t.frames == 5);
    CHECK(t.mean_ms == doctest::Approx(4.0));
    CHECK(t.median_ms == doctest::Approx(3.0));
    CHECK(t.p95_ms == doctest::Approx(10.0));
    CHECK(t.fps_pipeline == doctest::Approx(250.0));
    CHECK(t.fps_with_io == doctest::Approx(10.0));
}

TEST_CASE("three frames give three masks and a summary") {
    TempDir dir;
    write_synthetic(tiny_box(3), dir / "seq");
    const RunSummary s = run_sequence(dir / "seq" / "input", RunOptions{}, dir / "out");
    CHECK(s.frames == 3);
    CHECK(s.width == 32);
    CHECK(s.eraser_violations == 0);
    for(int k = 1; k <= 3; ++k)
        CHECK(read_mask(dir / "out" / mask_filename(k)).width() == 32);
    CHECK_FALSE(fs::exists(dir / "out" / mask_filename(4)));
    const std::string summary = slurp(dir / "out" / "summary.txt");
    CHECK(summary.find("frames=3\n") != std::string::npos);
    CHECK(summary.find("eraser_violations=0\n") != std::string::npos);
    const std::string timing = slurp(dir / "out" / "timing.txt");
    CHECK(timing.find("fps_pipeline=") != std::string::npos);
    CHECK(timing.find("p95_ms=") != std::string::npos);
    PipelineConfig back;
    load_config_file(back, dir / "out" / "config.txt");
    CHECK(back == PipelineConfig{});
}

TEST_CASE("summary is byte-identical across reruns and thread counts") {
    TempDir dir;
    write_synthetic(tiny_box(20), dir / "seq");
    RunOptions one;
    RunOptions many;
    many.threads = 8;
    run_sequence(dir / "seq" / "input", one, dir / "a");
    run_sequence(dir / "seq" / "input", one, dir / "b");
    run_sequence(dir / "seq" / "input", many, dir / "c");
    for(const char* other : {"b", "c"}) {
        CHECK(slurp(dir / "a" / "summary.txt") == slurp(dir / other / "summary.txt"));
        for(int k = 1; k <= 20; ++k)
            REQUIRE(slurp(dir / "a" / mask_filename(k)) == slurp(dir / other / mask_filename(k)));
    }
}

TEST_CASE("periodic state dumps") {
    TempDir dir;
    write_synthetic(tiny_box(4), dir / "seq");
    RunOptions o;
    o.dump_state_every = 2;
    run_sequence(dir / "seq" / "input", o, dir / "out");
    CHECK(fs::exists(dir / "out" / "state" / "000002" / "T_2-256.pgm"));
    CHECK(fs::exists(dir / "out" / "state" / "000004" / "DR_0-1.pgm"));
    CHECK_FALSE(fs::exists(dir / "out" / "state" / "000003"));
}

TEST_CASE("unwritable output directory leaves no summary") {
    TempDir dir;
    write_synthetic(tiny_box(3), dir / "seq");
    {
        std::ofstream(dir / "blocker") << "x";
    }
    CHECK(error_kind([&] { run_sequence(dir / "seq" / "input", RunOptions{}, dir / "blocker" / "out"); }) ==
          ErrorKind::io);
    CHECK_FALSE(fs::exists(dir / "blocker" / "out" / "summary.txt"));
}

TEST_CASE("empty and missing input") {
    TempDir dir;
    fs::create_directories(dir / "empty");
    CHECK(error_kind([&] { run_sequence(dir / "empty", RunOptions{}, dir / "out"); }).has_value());
    CHECK(error_kind([&] { run_sequence(dir / "nope", RunOptions{}, dir / "out"); }) == ErrorKind::missing_directory);
    CHECK(error_kind([&] { run_frames([] { return std::optional<Frame>(); }, RunOptions{}, std::nullopt); }) ==
          ErrorKind::empty_sequence);
}

TEST_CASE("evaluation against ground truth") {
    TempDir dir;
    write_synthetic(tiny_box(30), dir / "seq");
    const SequenceSpec spec = load_cdnet_sequence(dir / "seq");
    const EvaluationResult r = evaluate_sequence(spec, "synthetic", "seq", RunOptions{}, std::nullopt);
    CHECK(r.row.sequence == "seq");
    CHECK(r.row.category == "synthetic");
    CHECK(r.row.confusion.total() == 30u * 32 * 24);
    // recount from an independent pipeline run
    Pipeline p(PipelineConfig{});
    Confusion want;
    const auto seq = generate(tiny_box(30));
    for(std::size_t k = 0; k < seq.frames.size(); ++k)
        want += oracle::recount(p.process(seq.frames[k]).final, seq.gt[k], nullptr);
    CHECK(r.row.confusion == want);
    CHECK(want.tp > 0);
    REQUIRE(r.row.metrics.fnr);
    CHECK(*r.row.metrics.fnr == doctest::Approx(double(want.fn) / double(want.tp + want.fn)));

    SequenceSpec windowed = spec;
    windowed.temporal_roi = TemporalRoi{11, 20};
    const EvaluationResult w = evaluate_sequence(windowed, "synthetic", "seq", RunOptions{}, std::nullopt);
    CHECK(w.row.confusion.total() == 10u * 32 * 24);

    SequenceSpec no_gt = spec;
    no_gt.gt_dir.reset();
    CHECK(error_kind([&] { evaluate_sequence(no_gt, "c", "s", RunOptions{}, std::nullopt); }) ==
          ErrorKind::missing_directory);

    fs::remove(dir / "seq" / "groundtruth" / "gt000030.pgm");
    CHECK(error_kind([&] { evaluate_sequence(spec, "c", "s", RunOptions{}, std::nullopt); }) == ErrorKind::mismatch);
}

TEST_CASE("discovering CDnet layouts") {
    TempDir dir;
    write_synthetic(tiny_box(2), dir / "data" / "baseline" / "highway");
    write_synthetic(tiny_box(2), dir / "data" / "baseline" / "office");
    write_synthetic(tiny_box(2), dir / "data" / "dynamicBackground" / "fall");

    const auto all = discover_cdnet(dir / "data");
    REQUIRE(all.size() == 3);
    CHECK(all[0].category == "baseline");
    CHECK(all[0].sequence == "highway");
    CHECK(all[2].category == "dynamicBackground");

    const auto cat = discover_cdnet(dir / "data" / "baseline");
    REQUIRE(cat.size() == 2);
    CHECK(cat[1].sequence == "office");
    CHECK(cat[1].category == "baseline");

    const auto one = discover_cdnet(dir / "data" / "dynamicBackground" / "fall");
    REQUIRE(one.size() == 1);
    CHECK(one[0].sequence == "fall");

    fs::create_directories(dir / "nothing");
    CHECK(error_kind([&] { discover_cdnet(dir / "nothing"); }) == ErrorKind::empty_sequence);
}
