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

#include "wisenetmd/evaluation.hpp"

#include <cstdio>
#include <iomanip>

namespace wisenetmd {

void accumulate(Confusion& conf, const BinaryMask& result, const GtFrame& gt, const BinaryMask* roi,
                bool in_temporal_window) {
    require_same_geometry(result, gt, "accumulate");
    if(roi)
        require_same_geometry(result, *roi, "accumulate");
    if(!in_temporal_window)
        return;
    Confusion local;
    for(std::size_t px = 0; px < gt.pixel_count(); ++px) {
        const std::uint8_t label = gt[px];
        if(label == kGtOutsideRoi || label == kGtUnknown)
            continue;
        if(roi && (*roi)[px] == kBackground)
            continue;
        const bool positive = label == kGtMotion;
        const bool predicted = result[px] == kForeground;
        if(positive)
            ++(predicted ? local.tp : local.fn);
        else
            ++(predicted ? local.fp : local.tn);
    }
    conf += local;
}

Metrics metrics(const Confusion& c) {
    Metrics m;
    if(c.tp + c.fp)
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    if(c.fp + c.tn)
        m.fpr = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
    if(c.tp + c.fn)
        m.fnr = static_cast<double>(c.fn) / static_cast<double>(c.tp + c.fn);
    return m;
}

namespace {

struct MeanAccumulator {
    double sum = 0.0;
    int n = 0;
    void add(const std::optional<double>& v) {
        if(v) {
            sum += *v;
            ++n;
        }
    }
    std::optional<double> mean() const { return n ? std::optional<double>(sum / n) : std::nullopt; }
};

struct MetricsMean {
    MeanAccumulator precision, fpr, fnr;
    void add(const Metrics& m) {
        precision.add(m.precision);
        fpr.add(m.fpr);
        fnr.add(m.fnr);
    }
    Metrics mean() const { return {precision.mean(), fpr.mean(), fnr.mean()}; }
};

std::string ratio_field(const std::optional<double>& v, int precision) {
    if(!v)
        return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, *v);
    return buf;
}

} // namespace

AggregateReport aggregate(const std::vector<MetricsRow>& rows) {
    if(rows.empty())
        throw Error(ErrorKind::invalid_argument, "aggregate needs at least one row");
    std::vector<std::string> order;
    std::vector<MetricsMean> per_category;
    for(const auto& row : rows) {
        std::size_t i = 0;
        while(i < order.size() && order[i] != row.category)
            ++i;
        if(i == order.size()) {
            order.push_back(row.category);
            per_category.emplace_back();
        }
        per_category[i].add(row.metrics);
    }
    AggregateReport report;
    MetricsMean overall;
    for(std::size_t i = 0; i < order.size(); ++i) {
        const Metrics mean = per_category[i].mean();
        report.categories.push_back({order[i], mean});
        overall.add(mean);
    }
    report.overall = overall.mean();
    return report;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
    out << "sequence,category,tp,fp,tn,fn,precision,fpr,fnr\n";
    for(const auto& r : rows) {
        out << r.sequence << ',' << r.category << ',' << r.confusion.tp << ',' << r.confusion.fp << ','
            << r.confusion.tn << ',' << r.confusion.fn << ',' << ratio_field(r.metrics.precision, 6) << ','
            << ratio_field(r.metrics.fpr, 6) << ',' << ratio_field(r.metrics.fnr, 6) << '\n';
    }
}

void write_metrics_table(std::ostream& out, const std::vector<MetricsRow>& rows, const AggregateReport& agg) {
    auto cell = [](const std::optional<double>& v) {
        const std::string s = ratio_field(v, 4);
        return s.empty() ? std::string("-") : s;
    };
    out << std::left << std::setw(28) << "sequence" << std::setw(20) << "category" << std::setw(11) << "precision"
        << std::setw(9) << "FPR" << std::setw(9) << "FNR" << '\n';
    for(const auto& r : rows)
        out << std::setw(28) << r.sequence << std::setw(20) << r.category << std::setw(11) << cell(r.metrics.precision)
            << std::setw(9) << cell(r.metrics.fpr) << std::setw(9) << cell(r.metrics.fnr) << '\n';
    for(const auto& c : agg.categories)
        out << std::setw(28) << "[category mean]" << std::setw(20) << c.category << std::setw(11)
            << cell(c.mean.precision) << std::setw(9) << cell(c.mean.fpr) << std::setw(9) << cell(c.mean.fnr) << '\n';
    out << std::setw(48) << "[overall]" << std::setw(11) << cell(agg.overall.precision) << std::setw(9)
        << cell(agg.overall.fpr) << std::setw(9) << cell(agg.overall.fnr) << '\n';
}

} // namespace wisenetmd
