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

#include "wisenetmd/lbsp.hpp"

#include <cmath>
#include <cstdlib>

#include "wisenetmd/parallel.hpp"

namespace wisenetmd {

void validate(const LbspParams& params) {
    if(!(params.t_r > 0.0 && params.t_r < 1.0))
        throw Error(ErrorKind::config, "t_r must lie in (0, 1)");
}

std::array<int, 256> lbsp_threshold_table(const LbspParams& params) {
    std::array<int, 256> table{};
    for(int v = 0; v < 256; ++v)
        table[static_cast<std::size_t>(v)] = static_cast<int>(std::floor(params.t_r * v));
    return table;
}

namespace {

template <int Channels>
void lbsp_rows(const Frame& frame, const std::array<int, 256>& thr, LbspMap& out, int y0, int y1) {
    const int w = frame.width();
    const int h = frame.height();
    const int ch = Channels > 0 ? Channels : frame.channels();
    const std::uint8_t* src = frame.data().data();
    std::uint16_t* dst = out.data().data();
    std::array<std::ptrdiff_t, kLbspBits> interior{};
    for(int p = 0; p < kLbspBits; ++p)
        interior[static_cast<std::size_t>(p)] = (static_cast<std::ptrdiff_t>(kLbspOffsets[static_cast<std::size_t>(p)].dy) * w +
                                                 kLbspOffsets[static_cast<std::size_t>(p)].dx) * ch;

    for(int y = y0; y < y1; ++y) {
        const bool row_inside = y >= 2 && y < h - 2;
        for(int x = 0; x < w; ++x) {
            const std::size_t base = (static_cast<std::size_t>(y) * w + x) * ch;
            if(row_inside && x >= 2 && x < w - 2) {
                for(int c = 0; c < ch; ++c) {
                    const std::uint8_t* center = src + base + c;
                    const int ix = *center;
                    const int t = thr[static_cast<std::size_t>(ix)];
                    unsigned code = 0;
                    for(int p = 0; p < kLbspBits; ++p)
                        code |= static_cast<unsigned>(std::abs(center[interior[static_cast<std::size_t>(p)]] - ix) <= t) << p;
                    dst[base + c] = static_cast<std::uint16_t>(code);
                }
            } else {
                for(int c = 0; c < ch; ++c) {
                    const int ix = src[base + c];
                    const int t = thr[static_cast<std::size_t>(ix)];
                    unsigned code = 0;
                    for(int p = 0; p < kLbspBits; ++p) {
                        const Offset o = kLbspOffsets[static_cast<std::size_t>(p)];
                        const int nx = std::clamp(x + o.dx, 0, w - 1);
                        const int ny = std::clamp(y + o.dy, 0, h - 1);
                        const int ip = src[(static_cast<std::size_t>(ny) * w + nx) * ch + c];
                        code |= static_cast<unsigned>(std::abs(ip - ix) <= t) << p;
                    }
                    dst[base + c] = static_cast<std::uint16_t>(code);
                }
            }
        }
    }
}

} // namespace

LbspMap compute_lbsp(const Frame& frame, const LbspParams& params, int threads) {
    validate(params);
    const auto thr = lbsp_threshold_table(params);
    LbspMap out(frame.width(), frame.height(), frame.channels());
    parallel_rows(threads, frame.height(), [&](int y0, int y1) {
        switch(frame.channels()) {
            case 1: lbsp_rows<1>(frame, thr, out, y0, y1); break;
            case 3: lbsp_rows<3>(frame, thr, out, y0, y1); break;
            default: lbsp_rows<0>(frame, thr, out, y0, y1); break;
        }
    });
    return out;
}

int hamming_px(const LbspMap& a, const LbspMap& b, std::size_t px) {
    require_same_layout(a, b, "hamming_px");
    if(px >= a.pixel_count())
        throw Error(ErrorKind::index, "hamming_px: pixel index out of range");
    int sum = 0;
    const auto pa = a.pixel(px);
    const auto pb = b.pixel(px);
    for(std::size_t c = 0; c < pa.size(); ++c)
        sum += hamming(pa[c], pb[c]);
    return sum;
}

} // namespace wisenetmd
