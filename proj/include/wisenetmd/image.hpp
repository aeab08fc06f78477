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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wisenetmd/error.hpp"

namespace wisenetmd {

/// Dense row-major image with interleaved channels. The tag parameter keeps
/// semantically different images (input frames, binary masks, CDnet label maps,
/// controller state) from being mixed up while sharing one implementation.
template <typename T, typename Tag = void>
class Image {
public:
    using value_type = T;

    Image() = default;
    Image(int width, int height, int channels = 1, T fill = T{})
        : width_(width), height_(height), channels_(channels) {
        if(width < 0 || height < 0 || channels < 1)
            throw Error(ErrorKind::invalid_argument, "invalid image geometry");
        data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    T& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
    const T& at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

    /// Channel values of pixel `px` (row-major pixel index).
    std::span<T> pixel(std::size_t px) { return {data_.data() + px * channels_, static_cast<std::size_t>(channels_)}; }
    std::span<const T> pixel(std::size_t px) const {
        return {data_.data() + px * channels_, static_cast<std::size_t>(channels_)};
    }

    T* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_ * channels_; }
    const T* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_ * channels_; }

    void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

    template <typename U, typename OtherTag>
    bool same_geometry(const Image<U, OtherTag>& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }
    template <typename U, typename OtherTag>
    bool same_layout(const Image<U, OtherTag>& other) const noexcept {
        return same_geometry(other) && channels_ == other.channels();
    }

    bool operator==(const Image&) const = default;

private:
    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<T> data_;
};

struct FrameTag {};
struct MaskTag {};
struct GtTag {};
struct LbspTag {};

/// 8-bit input image, 1 or 3 channels.
using Frame = Image<std::uint8_t, FrameTag>;
/// Single-channel mask holding only 0 (background) and 255 (foreground).
using BinaryMask = Image<std::uint8_t, MaskTag>;
/// CDnet ground truth labels {0, 50, 85, 170, 255}.
using GtFrame = Image<std::uint8_t, GtTag>;
/// Per-pixel per-channel 16-bit LBSP codes.
using LbspMap = Image<std::uint16_t, LbspTag>;
/// Per-pixel real-valued controller state.
using StateMap = Image<double>;

inline constexpr std::uint8_t kForeground = 255;
inline constexpr std::uint8_t kBackground = 0;

/// Throws ErrorKind::geometry unless both images share width and height.
template <typename A, typename TA, typename B, typename TB>
void require_same_geometry(const Image<A, TA>& a, const Image<B, TB>& b, const char* what) {
    if(!a.same_geometry(b))
        throw Error(ErrorKind::geometry, std::string(what) + ": geometry mismatch (" + std::to_string(a.width()) + "x" +
                                             std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                                             std::to_string(b.height()) + ")");
}

template <typename A, typename TA, typename B, typename TB>
void require_same_layout(const Image<A, TA>& a, const Image<B, TB>& b, const char* what) {
    require_same_geometry(a, b, what);
    if(a.channels() != b.channels())
        throw Error(ErrorKind::geometry, std::string(what) + ": channel count mismatch");
}

inline std::size_t foreground_count(const BinaryMask& mask) {
    return static_cast<std::size_t>(std::count(mask.data().begin(), mask.data().end(), kForeground));
}

} // namespace wisenetmd
