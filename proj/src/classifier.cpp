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

#include "wisenetmd/classifier.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "wisenetmd/lbsp.hpp"
#include "wisenetmd/parallel.hpp"

namespace wisenetmd {

void validate(const ThresholdParams& params) {
    if(!(params.r0_color > 0.0))
        throw Error(ErrorKind::config, "r0_color must be > 0");
    if(!(params.r0_lbsp >= 0.0))
        throw Error(ErrorKind::config, "r0_lbsp must be >= 0");
    if(params.min_matches < 1)
        throw Error(ErrorKind::config, "min_matches must be >= 1");
}

namespace {

void check_inputs(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model, const StateMap* r_map) {
    require_same_layout(frame, lbsp, "classify");
    if(frame.width() != model.width() || frame.height() != model.height() || frame.channels() != model.channels())
        throw Error(ErrorKind::geometry, "classify: model/frame geometry mismatch");
    if(r_map)
        require_same_geometry(frame, *r_map, "classify");
}

template <int Ch>
int l1_fixed(const std::uint8_t* a, const std::uint8_t* b, int ch) noexcept {
    const int n = Ch > 0 ? Ch : ch;
    int sum = 0;
    for(int c = 0; c < n; ++c)
        sum += std::abs(static_cast<int>(a[c]) - static_cast<int>(b[c]));
    return sum;
}

template <int Ch>
int hamming_fixed(const std::uint16_t* a, const std::uint16_t* b, int ch) noexcept {
    if constexpr(Ch == 1) {
        return popcount64(static_cast<std::uint64_t>(a[0] ^ b[0]));
    } else if constexpr(Ch == 3) {
        // three 16-bit codes fit one 64-bit word
        const std::uint64_t x = static_cast<std::uint64_t>(a[0] ^ b[0]) |
                                static_cast<std::uint64_t>(a[1] ^ b[1]) << 16 |
                                static_cast<std::uint64_t>(a[2] ^ b[2]) << 32;
        return popcount64(x);
    } else {
        int sum = 0;
        for(int c = 0; c < ch; ++c)
            sum += popcount64(static_cast<std::uint64_t>(a[c] ^ b[c]));
        return sum;
    }
}

// With FullScan every sample is visited so the minimum distance is exact;
// otherwise scanning stops at `min_matches` matches.
template <int Ch, bool FullScan>
void classify_rows(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model, const StateMap& r_map,
                   const ThresholdParams& params, BinaryMask& mask, StateMap* dmin, std::size_t px0, std::size_t px1) {
    const int ch = frame.channels();
    const int n_samples = model.n_samples();
    const int scale_l1 = 16;
    const int scale_ham = 255;
    const double denom = 2.0 * 255.0 * 16.0 * ch;
    for(std::size_t px = px0; px < px1; ++px) {
        const std::uint8_t* color = frame.data().data() + px * ch;
        const std::uint16_t* code = lbsp.data().data() + px * ch;
        const std::uint8_t* s_color = model.colors_of(px);
        const std::uint16_t* s_code = model.codes_of(px);
        const DistanceThresholds thr = thresholds_at(r_map[px], params);
        // integer forms of "l1 < ch * color" and "ham < ch * lbsp"
        const int l1_max = static_cast<int>(std::ceil(ch * thr.color)) - 1;
        const int ham_max = static_cast<int>(std::ceil(ch * thr.lbsp)) - 1;
        int matches = 0;
        int best = std::numeric_limits<int>::max();
        for(int n = 0; n < n_samples; ++n) {
            const std::size_t at = static_cast<std::size_t>(n) * ch;
            const int l1 = l1_fixed<Ch>(color, s_color + at, ch);
            if constexpr(FullScan) {
                // the color term alone already rules out a new minimum, and a
                // match either is impossible or no longer changes the label
                if(l1 * scale_l1 >= best && (l1 > l1_max || matches >= params.min_matches))
                    continue;
            } else {
                if(l1 > l1_max)
                    continue;
            }
            const int ham = hamming_fixed<Ch>(code, s_code + at, ch);
            if(l1 <= l1_max && ham <= ham_max) {
                ++matches;
                if constexpr(!FullScan) {
                    if(matches >= params.min_matches)
                        break;
                }
            }
            if constexpr(FullScan) {
                const int joint = l1 * scale_l1 + ham * scale_ham;
                if(joint < best)
                    best = joint;
            }
        }
        mask[px] = matches < params.min_matches ? kForeground : kBackground;
        if constexpr(FullScan)
            (*dmin)[px] = best / denom;
    }
}

template <bool FullScan>
void classify_dispatch(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model, const StateMap& r_map,
                       const ThresholdParams& params, BinaryMask& mask, StateMap* dmin, int threads) {
    const std::size_t w = static_cast<std::size_t>(frame.width());
    parallel_rows(threads, frame.height(), [&](int y0, int y1) {
        const std::size_t px0 = static_cast<std::size_t>(y0) * w;
        const std::size_t px1 = static_cast<std::size_t>(y1) * w;
        switch(frame.channels()) {
            case 1: classify_rows<1, FullScan>(frame, lbsp, model, r_map, params, mask, dmin, px0, px1); break;
            case 3: classify_rows<3, FullScan>(frame, lbsp, model, r_map, params, mask, dmin, px0, px1); break;
            default: classify_rows<0, FullScan>(frame, lbsp, model, r_map, params, mask, dmin, px0, px1); break;
        }
    });
}

} // namespace

BinaryMask classify(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model, const StateMap& r_map,
                    const ThresholdParams& params, int threads) {
    validate(params);
    check_inputs(frame, lbsp, model, &r_map);
    BinaryMask mask(frame.width(), frame.height());
    classify_dispatch<false>(frame, lbsp, model, r_map, params, mask, nullptr, threads);
    return mask;
}

double min_distance(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model, std::size_t px) {
    check_inputs(frame, lbsp, model, nullptr);
    if(px >= frame.pixel_count())
        throw Error(ErrorKind::index, "min_distance: pixel index out of range");
    double best = 1.0;
    for(int n = 0; n < model.n_samples(); ++n) {
        const auto sample = model.sample_at(px, n);
        int ham = 0;
        for(std::size_t c = 0; c < sample.lbsp.size(); ++c)
            ham += hamming(lbsp.pixel(px)[c], sample.lbsp[c]);
        best = std::min(best, normalized_distance(l1_color(frame.pixel(px), sample.color), ham, frame.channels()));
    }
    return best;
}

Classification classify_with_distance(const Frame& frame, const LbspMap& lbsp, const BackgroundModel& model,
                                      const StateMap& r_map, const ThresholdParams& params, int threads) {
    validate(params);
    check_inputs(frame, lbsp, model, &r_map);
    Classification out{BinaryMask(frame.width(), frame.height()), StateMap(frame.width(), frame.height())};
    classify_dispatch<true>(frame, lbsp, model, r_map, params, out.mask, &out.min_distance, threads);
    return out;
}

} // namespace wisenetmd
