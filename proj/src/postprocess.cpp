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

#include "wisenetmd/postprocess.hpp"

#include <cstdint>
#include <vector>

namespace wisenetmd {

void validate(const PostParams& params) {
    if(params.open_radius < 0 || params.close_radius < 0)
        throw Error(ErrorKind::config, "morphology radii must be >= 0");
    if(params.median_size < 1 || params.median_size % 2 == 0)
        throw Error(ErrorKind::config, "median_size must be odd and >= 1");
}

namespace {

// Summed-area table of foreground pixels over a (w+2p) x (h+2p) padded grid.
// With `replicate` the padding copies the nearest edge pixel, otherwise it is
// background.
class ForegroundCounter {
public:
    ForegroundCounter(const BinaryMask& mask, int pad, bool replicate)
        : pad_(pad), stride_(mask.width() + 2 * pad + 1) {
        const int w = mask.width();
        const int h = mask.height();
        const int pw = w + 2 * pad;
        const int ph = h + 2 * pad;
        sums_.assign(static_cast<std::size_t>(stride_) * (ph + 1), 0);
        for(int y = 0; y < ph; ++y) {
            std::int32_t row = 0;
            for(int x = 0; x < pw; ++x) {
                int sx = x - pad;
                int sy = y - pad;
                bool fg = false;
                if(replicate) {
                    sx = std::clamp(sx, 0, w - 1);
                    sy = std::clamp(sy, 0, h - 1);
                    fg = mask.at(sx, sy) == kForeground;
                } else if(sx >= 0 && sx < w && sy >= 0 && sy < h) {
                    fg = mask.at(sx, sy) == kForeground;
                }
                row += fg;
                sums_[idx(x + 1, y + 1)] = sums_[idx(x + 1, y)] + row;
            }
        }
    }

    /// Foreground count in the window centered on (x, y) with half size r <= pad.
    std::int32_t window(int x, int y, int r) const {
        const int x0 = x + pad_ - r;
        const int y0 = y + pad_ - r;
        const int x1 = x + pad_ + r + 1;
        const int y1 = y + pad_ + r + 1;
        return sums_[idx(x1, y1)] - sums_[idx(x0, y1)] - sums_[idx(x1, y0)] + sums_[idx(x0, y0)];
    }

private:
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * stride_ + x; }

    int pad_;
    int stride_;
    std::vector<std::int32_t> sums_;
};

} // namespace

BinaryMask erode(const BinaryMask& mask, int radius) {
    if(radius <= 0 || mask.empty())
        return mask;
    // outside pixels are background, so border pixels never survive
    const ForegroundCounter counter(mask, radius, false);
    const int full = (2 * radius + 1) * (2 * radius + 1);
    BinaryMask out(mask.width(), mask.height());
    for(int y = 0; y < mask.height(); ++y)
        for(int x = 0; x < mask.width(); ++x)
            out.at(x, y) = counter.window(x, y, radius) == full ? kForeground : kBackground;
    return out;
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
    if(radius <= 0 || mask.empty())
        return mask;
    const ForegroundCounter counter(mask, radius, false);
    BinaryMask out(mask.width(), mask.height());
    for(int y = 0; y < mask.height(); ++y)
        for(int x = 0; x < mask.width(); ++x)
            out.at(x, y) = counter.window(x, y, radius) > 0 ? kForeground : kBackground;
    return out;
}

BinaryMask morph_open(const BinaryMask& mask, int radius) {
    return dilate(erode(mask, radius), radius);
}

BinaryMask morph_close(const BinaryMask& mask, int radius) {
    return erode(dilate(mask, radius), radius);
}

BinaryMask median_filter(const BinaryMask& mask, int size) {
    if(size < 1 || size % 2 == 0)
        throw Error(ErrorKind::invalid_argument, "median size must be odd and >= 1");
    if(size == 1 || mask.empty())
        return mask;
    const int r = size / 2;
    const int majority = size * size / 2;
    const ForegroundCounter counter(mask, r, true);
    BinaryMask out(mask.width(), mask.height());
    for(int y = 0; y < mask.height(); ++y)
        for(int x = 0; x < mask.width(); ++x)
            out.at(x, y) = counter.window(x, y, r) > majority ? kForeground : kBackground;
    return out;
}

BinaryMask postprocess(const BinaryMask& mask, const PostParams& params) {
    validate(params);
    if(!params.enabled)
        return mask;
    return median_filter(morph_close(morph_open(mask, params.open_radius), params.close_radius), params.median_size);
}

} // namespace wisenetmd
