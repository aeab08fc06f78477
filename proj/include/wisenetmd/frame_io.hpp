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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wisenetmd/image.hpp"

namespace wisenetmd {

namespace fs = std::filesystem;

inline constexpr int kMinFrameSide = 5;

/// 1-based inclusive frame window used for scoring.
struct TemporalRoi {
    int first = 1;
    int last = 1;
    bool contains(int frame) const noexcept { return frame >= first && frame <= last; }
};

struct SequenceSpec {
    fs::path input_dir;
    std::optional<fs::path> gt_dir;
    std::optional<BinaryMask> roi_mask;
    std::optional<TemporalRoi> temporal_roi;
};

bool png_supported() noexcept;
bool jpeg_supported() noexcept;

/// Decodes any supported image file (P5/P6, BMP, and PNG/JPEG when built with
/// the codecs). Throws ErrorKind::decode on malformed or unsupported input.
Frame read_image(const fs::path& path);

/// Reads a mask; values > 127 become 255, the rest 0. Multi-channel files are
/// reduced by their first channel.
BinaryMask read_mask(const fs::path& path);

/// Reads a CDnet label image and rejects values outside {0,50,85,170,255}.
GtFrame read_gt(const fs::path& path);

/// Writes P5 (1 channel) or P6 (3 channels).
void write_pnm(const Frame& frame, const fs::path& path);
void write_mask(const BinaryMask& mask, const fs::path& path);
void write_png(const Frame& frame, const fs::path& path);

/// Writes a single-channel 8-bit image, choosing the codec from the extension
/// (.pgm or .png).
void write_gray(const Frame& frame, const fs::path& path);

/// Output mask file name for a 1-based frame index, e.g. bin000001.pgm.
std::string mask_filename(int frame_index, const std::string& extension = ".pgm");

/// Sorted list of decodable image files in `dir`. Throws on a missing directory
/// or when no image files are present.
std::vector<fs::path> list_image_files(const fs::path& dir);

/// Ordered frame stream over a directory. Every frame must share the geometry of
/// the first. `next()` is not thread safe but may be driven from a producer
/// thread while a consumer processes previously returned frames.
class SequenceReader {
public:
    explicit SequenceReader(const fs::path& dir);

    std::size_t size() const noexcept { return files_.size(); }
    std::size_t position() const noexcept { return next_; }
    const std::vector<fs::path>& files() const noexcept { return files_; }

    std::optional<Frame> next();

private:
    std::vector<fs::path> files_;
    std::size_t next_ = 0;
    int width_ = -1;
    int height_ = -1;
    int channels_ = -1;
};

/// Loads every frame of a sequence eagerly.
std::vector<Frame> load_sequence(const SequenceSpec& spec);

/// Parses "first last" from a temporalROI.txt body.
TemporalRoi parse_temporal_roi(const std::string& text);

/// Builds a SequenceSpec from a CDnet-style directory:
/// input/, groundtruth/, ROI.<ext>, temporalROI.txt. Missing pieces stay empty.
SequenceSpec load_cdnet_sequence(const fs::path& root);

} // namespace wisenetmd
