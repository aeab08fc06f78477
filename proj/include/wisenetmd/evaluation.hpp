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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wisenetmd/image.hpp"

namespace wisenetmd {

inline constexpr std::uint8_t kGtStatic = 0;
inline constexpr std::uint8_t kGtShadow = 50;
inline constexpr std::uint8_t kGtOutsideRoi = 85;
inline constexpr std::uint8_t kGtUnknown = 170;
inline constexpr std::uint8_t kGtMotion = 255;

struct Confusion {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
    Confusion& operator+=(const Confusion& o) noexcept {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
    bool operator==(const Confusion&) const = default;
};

/// Adds one frame to `conf`. Pixels labelled 85/170 or outside the ROI are
/// skipped; 255 is positive, 0 and 50 (shadow) are negative.
void accumulate(Confusion& conf, const BinaryMask& result, const GtFrame& gt, const BinaryMask* roi = nullptr,
                bool in_temporal_window = true);

struct Metrics {
    std::optional<double> precision;
    std::optional<double> fpr;
    std::optional<double> fnr;
};

Metrics metrics(const Confusion& conf);

struct MetricsRow {
    std::string sequence;
    std::string category;
    Confusion confusion;
    Metrics metrics;
};

struct CategoryMetrics {
    std::string category;
    Metrics mean;
};

struct AggregateReport {
    std::vector<CategoryMetrics> categories; // in first-seen order
    Metrics overall;                         // mean of category means
};

/// Per-category mean of defined metrics, then the mean of category means.
AggregateReport aggregate(const std::vector<MetricsRow>& rows);

/// CSV with header sequence,category,tp,fp,tn,fn,precision,fpr,fnr; undefined
/// ratios are written as empty fields.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);
void write_metrics_table(std::ostream& out, const std::vector<MetricsRow>& rows, const AggregateReport& agg);

} // namespace wisenetmd
