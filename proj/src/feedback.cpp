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

#include "wisenetmd/feedback.hpp"

#include <algorithm>

#include "wisenetmd/parallel.hpp"

namespace wisenetmd {

void validate(const FeedbackParams& p) {
    auto in_unit = [](double a) { return a > 0.0 && a <= 1.0; };
    if(!in_unit(p.alpha_short) || !in_unit(p.alpha_long))
        throw Error(ErrorKind::config, "learning rates must lie in (0, 1]");
    if(!(p.v_decr > 0.0))
        throw Error(ErrorKind::config, "v_decr must be > 0");
    if(!(p.v_floor > 0.0))
        throw Error(ErrorKind::config, "v_floor must be > 0");
    if(!(p.d_eps > 0.0))
        throw Error(ErrorKind::config, "d_eps must be > 0");
    if(!(p.t_min >= 1.0 && p.t_min <= p.t_max))
        throw Error(ErrorKind::config, "need 1 <= t_min <= t_max");
}

FeedbackState::FeedbackState(int width, int height, FeedbackParams p)
    : params(p),
      d_min_short(width, height, 1, 0.0),
      d_min_long(width, height, 1, 0.0),
      v(width, height, 1, p.v_floor),
      r(width, height, 1, 1.0),
      t_rate(width, height, 1, p.t_min) {}

void update_dmin(FeedbackState& state, double d, std::size_t px) {
    const double as = state.params.alpha_short;
    const double al = state.params.alpha_long;
    // clamp absorbs rounding above 1 when d stays at 1
    state.d_min_short[px] = std::min(1.0, state.d_min_short[px] * (1.0 - as) + d * as);
    state.d_min_long[px] = std::min(1.0, state.d_min_long[px] * (1.0 - al) + d * al);
}

double weight(bool dynamic_region, double dist_last, double s_feed, const FeedbackParams& params) {
    if(!dynamic_region)
        return kWeightStatic;
    if(dist_last > params.dist_gate && s_feed < params.feed_gate)
        return kWeightDynamicNoise;
    return kWeightDynamicOther;
}

void update_v(FeedbackState& state, bool blinked, double w, std::size_t px) {
    double v = state.v[px];
    v = blinked ? v + w : v - state.params.v_decr;
    state.v[px] = std::max(v, state.params.v_floor);
}

void update_r(FeedbackState& state, std::size_t px) {
    const double bound = (1.0 + 2.0 * state.d_min(px)) * (1.0 + 2.0 * state.d_min(px));
    double r = state.r[px];
    const double v = state.v[px];
    r = r < bound ? r + v : r - 1.0 / v;
    state.r[px] = std::max(r, 1.0);
}

void update_t(FeedbackState& state, bool foreground, std::size_t px) {
    const double d = std::max(state.d_min(px), state.params.d_eps);
    const double v = state.v[px];
    double t = state.t_rate[px];
    t = foreground ? t + 1.0 / (v * d) : t - v / d;
    state.t_rate[px] = std::clamp(t, state.params.t_min, state.params.t_max);
}

void update_feedback(FeedbackState& state, const FeedbackInputs& in, int threads) {
    require_same_geometry(state.r, in.min_distance, "update_feedback");
    require_same_geometry(state.r, in.mask, "update_feedback");
    require_same_geometry(state.r, in.prev_mask, "update_feedback");
    require_same_geometry(state.r, in.dr, "update_feedback");
    require_same_geometry(state.r, in.temporal.dist_last, "update_feedback");
    const std::size_t w = static_cast<std::size_t>(state.r.width());
    parallel_rows(threads, state.r.height(), [&](int y0, int y1) {
        for(std::size_t px = y0 * w; px < y1 * w; ++px) {
            update_dmin(state, in.min_distance[px], px);
            const double wt = weight(in.dr[px] == kForeground, in.temporal.dist_last[px], in.temporal.s_feed[px],
                                     state.params);
            update_v(state, in.mask[px] != in.prev_mask[px], wt, px);
            update_r(state, px);
            update_t(state, in.mask[px] == kForeground, px);
        }
    });
}

bool ranges_ok(const FeedbackState& state) {
    const auto& p = state.params;
    for(std::size_t px = 0; px < state.r.pixel_count(); ++px) {
        if(!(state.r[px] >= 1.0))
            return false;
        if(!(state.t_rate[px] >= p.t_min && state.t_rate[px] <= p.t_max))
            return false;
        if(!(state.v[px] >= p.v_floor))
            return false;
        for(double d : {state.d_min_short[px], state.d_min_long[px]})
            if(!(d >= 0.0 && d <= 1.0))
                return false;
    }
    return true;
}

} // namespace wisenetmd
