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

#pragma once

#include "wisenetmd/image.hpp"

namespace wisenetmd {

struct PostParams {
    bool enabled = true;
    int open_radius = 1;
    int close_radius = 1;
    int median_size = 9;
};

void validate(const PostParams& params);

/// Square structuring element of side 2*radius+1. Erosion treats out-of-frame
/// pixels as background; dilation ignores them.
BinaryMask erode(const BinaryMask& mask, int radius);
BinaryMask dilate(const BinaryMask& mask, int radius);

BinaryMask morph_open(const BinaryMask& mask, int radius);
BinaryMask morph_close(const BinaryMask& mask, int radius);

/// Majority vote over a size x size window with edge replication.
BinaryMask median_filter(const BinaryMask& mask, int size);

/// open -> close -> median; identity when disabled.
BinaryMask postprocess(const BinaryMask& mask, const PostParams& params = {});

} // namespace wisenetmd
