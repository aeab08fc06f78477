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


#include "wisenetmd/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "wisenetmd/classifier.hpp"
#include "wisenetmd/frame_io.hpp"
#include "wisenetmd/lbsp.hpp"
#include "wisenetmd/postprocess.hpp"

namespace wisenetmd {

Pipeline::Pipeline(PipelineConfig config, int threads) : config_(config), threads_(threads), rng_(config.seed) {
    validate(config_);
    if(threads_ < 1)
        throw Error(ErrorKind::invalid_argument, "thread count must be >= 1");
}

void Pipeline::initialize(const Frame& frame, const LbspMap& lbsp) {
    const int w = frame.width();
    const int h = frame.height();
    model_ = init_model(frame, lbsp, rng_, config_.n_samples);
    dyn_model_ = DynamicBgModel(w, h, frame.channels(), config_.m_dyn_samples, config_.dyn_color_threshold);
    blink_ = BlinkState(w, h, config_.blink());
    temporal_ = TemporalState(w, h, config_.temporal());
    feedback_ = FeedbackState(w, h, config_.feedback());
}

FrameResult Pipeline::process(const Frame& frame) {
    if(frame.width() < kMinFrameSide || frame.height() < kMinFrameSide)
        throw Error(ErrorKind::geometry, "frames must be at least 5x5");
    if(initialized() && !frame.same_layout(prev_frame_))
        throw Error(ErrorKind::geometry, "frame geometry changed mid-sequence");

    const auto start = std::chrono::steady_clock::now();
    const int t = frame_index_ + 1;
    LbspMap lbsp = compute_lbsp(frame, config_.lbsp(), threads_);
    FrameResult out;

    if(t == 1) {
        initialize(frame, lbsp);
        out.raw = BinaryMask(frame.width(), frame.height());
        out.rechecked = out.raw;
        out.final = out.raw;
    } else {
        Classification c =
            classify_with_distance(frame, lbsp, model_, feedback_.r, config_.thresholds(), threads_);
        out.raw = std::move(c.mask);

        update_blink(blink_, out.raw, prev_raw_, t, threads_);
        update_temporal(temporal_, frame, prev_frame_, lbsp, prev_lbsp_, prev_rechecked_, threads_);

        out.rechecked = config_.recheck_enabled ? recheck(out.raw, blink_, dyn_model_, frame, threads_) : out.raw;

        update_feedback(feedback_, {c.min_distance, out.rechecked, prev_rechecked_, blink_.dr, temporal_}, threads_);

        const BinaryMask collect = fp_collect_mask(out.raw, prev_raw_, temporal_, threads_);
        collect_fp(dyn_model_, frame, collect, rng_, static_cast<std::uint64_t>(t), threads_);

        maybe_update(model_, frame, lbsp, out.rechecked, feedback_.t_rate, rng_, static_cast<std::uint64_t>(t),
                     UpdateParams{config_.neighbor_diffusion});

        out.final = postprocess(out.rechecked, config_.post());
    }

    prev_frame_ = frame;
    prev_lbsp_ = std::move(lbsp);
    prev_raw_ = out.raw;
    prev_rechecked_ = out.rechecked;
    frame_index_ = t;
    out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

Frame normalize_map(const StateMap& map, double lo, double hi) {
    Frame img(map.width(), map.height(), 1);
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    for(std::size_t i = 0; i < map.size(); ++i) {
        const double v = std::round((map[i] - lo) * scale);
        img[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
    return img;
}

namespace {

std::string range_name(const char* map, double lo, double hi) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%g-%g.pgm", map, lo, hi);
    return buf;
}

template <typename T, typename Tag>
StateMap to_state(const Image<T, Tag>& img) {
    StateMap out(img.width(), img.height());
    for(std::size_t i = 0; i < img.size(); ++i)
        out[i] = static_cast<double>(img[i]);
    return out;
}

} // namespace

void Pipeline::dump_state(const fs::path& out_dir) const {
    if(!initialized())
        throw Error(ErrorKind::state, "dump_state needs at least one processed frame");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if(!fs::is_directory(out_dir))
        throw Error(ErrorKind::io, "cannot create state directory " + out_dir.string());

    StateMap d_min(feedback_.r.width(), feedback_.r.height());
    for(std::size_t px = 0; px < d_min.size(); ++px)
        d_min[px] = feedback_.d_min(px);
    StateMap dr = to_state(blink_.dr);
    for(auto& v : dr.data())
        v = v > 0.0 ? 1.0 : 0.0;

    // R settles below (1 + 2 D_min)^2 <= 9 plus one v-step; BR rarely exceeds a few percent
    const struct {
        const char* name;
        const StateMap& map;
        double lo, hi;
    } maps[] = {
        {"R", feedback_.r, 1.0, 9.0},
        {"T", feedback_.t_rate, config_.t_min, config_.t_max},
        {"v", feedback_.v, config_.v_floor, 10.0},
        {"Dmin", d_min, 0.0, 1.0},
        {"Sfeed", temporal_.s_feed, 0.0, 1.0},
        {"BR", blink_.br, 0.0, 0.1},
        {"DR", dr, 0.0, 1.0},
    };
    for(const auto& m : maps)
        write_pnm(normalize_map(m.map, m.lo, m.hi), out_dir / range_name(m.name, m.lo, m.hi));
}

} // namespace wisenetmd
