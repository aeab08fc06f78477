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


#include "wisenetmd/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numeric>

namespace wisenetmd {

TimingStats timing_stats(std::vector<double> frame_ms, double wall_seconds) {
    TimingStats t;
    t.frames = frame_ms.size();
    if(frame_ms.empty())
        return t;
    const double total = std::accumulate(frame_ms.begin(), frame_ms.end(), 0.0);
    t.mean_ms = total / static_cast<double>(frame_ms.size());
    std::sort(frame_ms.begin(), frame_ms.end());
    const std::size_t n = frame_ms.size();
    t.median_ms = n % 2 ? frame_ms[n / 2] : 0.5 * (frame_ms[n / 2 - 1] + frame_ms[n / 2]);
    // nearest-rank percentile
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    t.p95_ms = frame_ms[std::max<std::size_t>(rank, 1) - 1];
    t.fps_pipeline = total > 0.0 ? 1000.0 * static_cast<double>(n) / total : 0.0;
    t.fps_with_io = wall_seconds > 0.0 ? static_cast<double>(n) / wall_seconds : 0.0;
    return t;
}

std::string summary_text(const RunSummary& s, const PipelineConfig& config) {
    std::string out;
    auto line = [&](const char* key, auto value) {
        out += key;
        out += '=';
        out += std::to_string(value);
        out += '\n';
    };
    line("frames", s.frames);
    line("width", s.width);
    line("height", s.height);
    line("channels", s.channels);
    line("seed", config.seed);
    line("raw_foreground_pixels", s.raw_foreground);
    line("rechecked_foreground_pixels", s.rechecked_foreground);
    line("final_foreground_pixels", s.final_foreground);
    line("eraser_violations", s.eraser_violations);
    out += "timing_file=timing.txt\n";
    return out;
}

std::string timing_text(const TimingStats& t, int threads) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "frames=%zu\nthreads=%d\nmean_ms=%.3f\nmedian_ms=%.3f\np95_ms=%.3f\nfps_pipeline=%.2f\n"
                  "fps_with_io=%.2f\n",
                  t.frames, threads, t.mean_ms, t.median_ms, t.p95_ms, t.fps_pipeline, t.fps_with_io);
    return buf;
}

void ensure_writable_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if(!fs::is_directory(dir))
        throw Error(ErrorKind::io, "cannot create output directory " + dir.string());
    const fs::path probe = dir / ".wisenetmd_write_probe";
    {
        std::ofstream out(probe);
        if(!(out << 'x'))
            throw Error(ErrorKind::io, "output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if(!out)
        throw Error(ErrorKind::io, "cannot write " + path.string());
}

std::string state_dir_name(int frame_index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%06d", frame_index);
    return buf;
}

} // namespace

RunSummary run_frames(const FrameSource& source, const RunOptions& options, const std::optional<fs::path>& out_dir,
                      const FrameObserver& observer) {
    if(out_dir)
        ensure_writable_dir(*out_dir);
    if(options.dump_state_every > 0 && !out_dir)
        throw Error(ErrorKind::invalid_argument, "state dumps need an output directory");
    Pipeline pipeline(options.config, options.threads);
    RunSummary summary;
    std::vector<double> frame_ms;

    const auto wall_start = std::chrono::steady_clock::now();
    auto pending = std::async(std::launch::async, source);
    while(true) {
        std::optional<Frame> frame = pending.get();
        if(!frame)
            break;
        pending = std::async(std::launch::async, source);

        const FrameResult r = pipeline.process(*frame);
        const int index = pipeline.frame_index();
        frame_ms.push_back(r.ms);
        if(index == 1) {
            summary.width = frame->width();
            summary.height = frame->height();
            summary.channels = frame->channels();
        }
        for(std::size_t px = 0; px < r.raw.size(); ++px) {
            summary.raw_foreground += r.raw[px] != kBackground;
            summary.rechecked_foreground += r.rechecked[px] != kBackground;
            summary.final_foreground += r.final[px] != kBackground;
            summary.eraser_violations += r.rechecked[px] != kBackground && r.raw[px] == kBackground;
        }
        if(observer)
            observer(index, *frame, r);
        if(out_dir && options.write_masks)
            write_mask(r.final, *out_dir / mask_filename(index));
        if(options.dump_state_every > 0 && index % options.dump_state_every == 0)
            pipeline.dump_state(*out_dir / "state" / state_dir_name(index));
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    summary.frames = frame_ms.size();
    if(summary.frames == 0)
        throw Error(ErrorKind::empty_sequence, "no frames to process");
    summary.timing = timing_stats(std::move(frame_ms), wall);

    if(out_dir) {
        write_text(*out_dir / "config.txt", to_text(options.config));
        write_text(*out_dir / "timing.txt", timing_text(summary.timing, options.threads));
        write_text(*out_dir / "summary.txt", summary_text(summary, options.config));
    }
    return summary;
}

RunSummary run_sequence(const fs::path& input_dir, const RunOptions& options, const fs::path& out_dir) {
    SequenceReader reader(input_dir);
    return run_frames([&reader] { return reader.next(); }, options, out_dir);
}

std::vector<SequenceEntry> discover_cdnet(const fs::path& root) {
    if(!fs::is_directory(root))
        throw Error(ErrorKind::missing_directory, "not a directory: " + root.string());
    auto is_sequence = [](const fs::path& p) { return fs::is_directory(p / "input"); };
    auto sorted_children = [](const fs::path& p) {
        std::vector<fs::path> dirs;
        for(const auto& e : fs::directory_iterator(p))
            if(e.is_directory())
                dirs.push_back(e.path());
        std::sort(dirs.begin(), dirs.end());
        return dirs;
    };
    const fs::path canonical = fs::weakly_canonical(root);
    std::vector<SequenceEntry> out;
    if(is_sequence(canonical)) {
        out.push_back({canonical.parent_path().filename().string(), canonical.filename().string(), canonical});
        return out;
    }
    for(const auto& child : sorted_children(canonical)) {
        if(is_sequence(child)) {
            out.push_back({canonical.filename().string(), child.filename().string(), child});
            continue;
        }
        for(const auto& grandchild : sorted_children(child))
            if(is_sequence(grandchild))
                out.push_back({child.filename().string(), grandchild.filename().string(), grandchild});
    }
    if(out.empty())
        throw Error(ErrorKind::empty_sequence, "no CDnet sequences (directories with input/) under " + root.string());
    return out;
}

EvaluationResult evaluate_sequence(const SequenceSpec& spec, const std::string& category,
                                   const std::string& sequence, const RunOptions& options,
                                   const std::optional<fs::path>& out_dir) {
    if(!spec.gt_dir)
        throw Error(ErrorKind::missing_directory, "sequence " + sequence + " has no ground truth");
    const std::vector<fs::path> gt_files = list_image_files(*spec.gt_dir);
    SequenceReader reader(spec.input_dir);
    if(gt_files.size() != reader.size())
        throw Error(ErrorKind::mismatch, "sequence " + sequence + ": " + std::to_string(reader.size()) +
                                             " input frames but " + std::to_string(gt_files.size()) +
                                             " ground-truth frames");
    const BinaryMask* roi = spec.roi_mask ? &*spec.roi_mask : nullptr;
    Confusion conf;
    auto score = [&](int index, const Frame&, const FrameResult& r) {
        if(spec.temporal_roi && !spec.temporal_roi->contains(index))
            return;
        accumulate(conf, r.final, read_gt(gt_files[static_cast<std::size_t>(index) - 1]), roi);
    };
    EvaluationResult result;
    result.summary = run_frames([&reader] { return reader.next(); }, options, out_dir, score);
    result.row = {sequence, category, conf, metrics(conf)};
    return result;
}

} // namespace wisenetmd
