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

#include "test_util.hpp"
#include "wisenetmd/config.hpp"

using namespace wisenetmd;

TEST_CASE("defaults") {
    const PipelineConfig c;
    CHECK(c.n_samples == 50);
    CHECK(c.m_dyn_samples == 30);
    CHECK(c.blink_threshold == 0.025);
    CHECK(c.alpha_short == 0.04);
    CHECK(c.alpha_long == 0.01);
    CHECK(c.t_min == 2.0);
    CHECK(c.t_max == 256.0);
    CHECK(c.median_size == 9);
    CHECK_NOTHROW(validate(c));
    CHECK(config_keys().size() == 25);
}

TEST_CASE("overrides") {
    PipelineConfig c;
    apply_override(c, "t_r=0.25");
    apply_override(c, " recheck_enabled = off ");
    apply_override(c, "seed=18446744073709551615");
    apply_override(c, "median_size=5");
    CHECK(c.t_r == 0.25);
    CHECK_FALSE(c.recheck_enabled);
    CHECK(c.seed == 18446744073709551615ULL);
    CHECK(c.median_size == 5);
    CHECK(error_kind([&] { apply_override(c, "t_rr=1"); }) == ErrorKind::config);
    CHECK(error_kind([&] { apply_override(c, "t_r"); }) == ErrorKind::config);
    CHECK(error_kind([&] { apply_override(c, "n_samples=2.5"); }) == ErrorKind::config);
    CHECK(error_kind([&] { apply_override(c, "post_enabled=maybe"); }) == ErrorKind::config);
    CHECK(error_kind([&] { apply_override(c, "seed=-1"); }) == ErrorKind::config);
}

TEST_CASE("range validation") {
    auto invalid = [](const std::string& kv) {
        PipelineConfig c;
        apply_override(c, kv);
        return error_kind([&] { validate(c); }) == ErrorKind::config;
    };
    CHECK(invalid("median_size=4"));
    CHECK(invalid("t_min=300"));
    CHECK(invalid("m_dyn_samples=33"));
    CHECK(invalid("min_matches=51"));
    CHECK(invalid("blink_threshold=1.5"));
    CHECK(invalid("alpha_short=0"));
    CHECK(invalid("t_r=-0.1"));
    CHECK_FALSE(invalid("m_dyn_samples=32"));
}

TEST_CASE("file format and round trip") {
    PipelineConfig c;
    parse_config_text(c, "# comment\n\nn_samples = 20  # trailing\nfeed_gate=0.3\n");
    CHECK(c.n_samples == 20);
    CHECK(c.feed_gate == 0.3);
    CHECK(error_kind([&] { parse_config_text(c, "just words\n"); }) == ErrorKind::config);

    c.d_eps = 1.0 / 3.0;
    PipelineConfig back;
    parse_config_text(back, to_text(c));
    CHECK(back == c);

    TempDir dir;
    {
        std::ofstream(dir / "cfg.txt") << to_text(c);
    }
    PipelineConfig loaded;
    load_config_file(loaded, dir / "cfg.txt");
    CHECK(loaded == c);
    CHECK(error_kind([&] { load_config_file(loaded, dir / "missing.txt"); }) == ErrorKind::config);
}

TEST_CASE("derived parameter blocks") {
    PipelineConfig c;
    c.alpha_short = 0.05;
    c.dist_gate = 0.5;
    CHECK(c.temporal().alpha_feed == 0.05);
    CHECK(c.feedback().dist_gate == 0.5);
    CHECK(c.thresholds().min_matches == 2);
    CHECK(c.post().median_size == 9);
}
