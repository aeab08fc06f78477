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


// Command-line front end: run, evaluate, bench, synth and dump-state.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wisenetmd/config.hpp"
#include "wisenetmd/evaluation.hpp"
#include "wisenetmd/frame_io.hpp"
#include "wisenetmd/pipeline.hpp"
#include "wisenetmd/runner.hpp"
#include "wisenetmd/synthetic.hpp"

namespace fs = std::filesystem;
using namespace wisenetmd;

namespace {

struct CommonArgs {
    std::string config_file;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_file, "flat key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--set", args.overrides, "override one config key, K=V (repeatable)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides the config)");
    cmd->add_option("--threads", args.threads, "worker threads per frame")->check(CLI::PositiveNumber);
}

PipelineConfig build_config(const CommonArgs& args) {
    PipelineConfig config;
    if(!args.config_file.empty())
        load_config_file(config, args.config_file);
    for(const auto& kv : args.overrides)
        apply_override(config, kv);
    if(args.seed)
        config.seed = *args.seed;
    validate(config);
    return config;
}

void print_timing(const TimingStats& t) {
    std::printf("frames %zu  mean %.2f ms  median %.2f ms  p95 %.2f ms  fps %.2f (pipeline)  %.2f (with I/O)\n",
                t.frames, t.mean_ms, t.median_ms, t.p95_ms, t.fps_pipeline, t.fps_with_io);
}

// A plain frame directory becomes a one-sequence list; --gt/--roi attach
// optional scoring inputs to it.
struct Inputs {
    std::string input_dir;
    std::string cdnet_dir;
    std::string gt_dir;
    std::string roi_file;
    std::string temporal_roi;
};

struct Job {
    std::string category;
    std::string sequence;
    SequenceSpec spec;
};

std::vector<Job> collect_jobs(const Inputs& in) {
    std::vector<Job> jobs;
    if(!in.cdnet_dir.empty()) {
        for(const auto& entry : discover_cdnet(in.cdnet_dir))
            jobs.push_back({entry.category, entry.sequence, load_cdnet_sequence(entry.root)});
        return jobs;
    }
    // frames in <name>/input are named after <name>, as in CDnet
    fs::path dir = fs::weakly_canonical(in.input_dir);
    if(dir.filename() == "input" && dir.has_parent_path())
        dir = dir.parent_path();
    Job job{"custom", dir.filename().string(), {}};
    job.spec.input_dir = in.input_dir;
    if(!in.gt_dir.empty())
        job.spec.gt_dir = fs::path(in.gt_dir);
    if(!in.roi_file.empty())
        job.spec.roi_mask = read_mask(in.roi_file);
    if(!in.temporal_roi.empty())
        job.spec.temporal_roi = parse_temporal_roi(in.temporal_roi);
    jobs.push_back(std::move(job));
    return jobs;
}

fs::path job_out(const fs::path& out, const Job& job, std::size_t n_jobs) {
    return n_jobs == 1 ? out : out / job.category / job.sequence;
}

void add_inputs(CLI::App* cmd, Inputs& in, bool scoring) {
    auto* input = cmd->add_option("--input", in.input_dir, "directory of frames");
    auto* cdnet = cmd->add_option("--cdnet", in.cdnet_dir, "CDnet sequence, category or dataset directory");
    input->excludes(cdnet);
    if(scoring) {
        cmd->add_option("--gt", in.gt_dir, "ground-truth directory for --input")->needs(input);
        cmd->add_option("--roi", in.roi_file, "ROI mask for --input")->needs(input);
        cmd->add_option("--temporal-roi", in.temporal_roi, "scored frame window \"first last\"")->needs(input);
    }
}

int cmd_run(const Inputs& in, const CommonArgs& common, const std::string& out, int dump_every) {
    if(in.input_dir.empty() && in.cdnet_dir.empty())
        throw Error(ErrorKind::config, "run needs --input or --cdnet");
    RunOptions options{build_config(common), common.threads, dump_every, true};
    const auto jobs = collect_jobs(in);
    for(const auto& job : jobs) {
        const fs::path dir = job_out(out, job, jobs.size());
        std::printf("%s/%s -> %s\n", job.category.c_str(), job.sequence.c_str(), dir.string().c_str());
        std::fflush(stdout);
        print_timing(run_sequence(job.spec.input_dir, options, dir).timing);
    }
    return 0;
}

int cmd_evaluate(const Inputs& in, const CommonArgs& common, const std::string& out, int dump_every) {
    if(in.input_dir.empty() && in.cdnet_dir.empty())
        throw Error(ErrorKind::config, "evaluate needs --input or --cdnet");
    if(!in.input_dir.empty() && in.gt_dir.empty())
        throw Error(ErrorKind::missing_directory, "evaluate with --input needs --gt");
    RunOptions options{build_config(common), common.threads, dump_every, !out.empty()};
    if(out.empty() && dump_every > 0)
        throw Error(ErrorKind::config, "--dump-state-every needs --out");
    const auto jobs = collect_jobs(in);
    std::vector<MetricsRow> rows;
    bool unscored = false;
    for(const auto& job : jobs) {
        std::optional<fs::path> dir;
        if(!out.empty())
            dir = job_out(out, job, jobs.size());
        const auto result = evaluate_sequence(job.spec, job.category, job.sequence, options, dir);
        if(result.row.confusion.total() == 0) {
            std::fprintf(stderr, "error: %s scored no pixels\n", job.sequence.c_str());
            unscored = true;
        }
        rows.push_back(result.row);
    }
    const AggregateReport report = aggregate(rows);
    write_metrics_table(std::cout, rows, report);
    if(!out.empty()) {
        ensure_writable_dir(out);
        std::ofstream csv(fs::path(out) / "metrics.csv", std::ios::binary);
        write_metrics_csv(csv, rows);
        if(!csv)
            throw Error(ErrorKind::io, "cannot write metrics.csv");
    }
    return unscored ? 2 : 0;
}

struct SynthArgs {
    std::string kind = "moving_box";
    int width = 320;
    int height = 240;
    int channels = 3;
    int frames = 100;
    double sigma = 2.0;
    std::uint64_t seed = 1;
    double flip_probability = 0.3;
};

void add_synth(CLI::App* cmd, SynthArgs& s) {
    cmd->add_option("--kind", s.kind, "static_noise | moving_box | dynamic_band");
    cmd->add_option("--width", s.width);
    cmd->add_option("--height", s.height);
    cmd->add_option("--channels", s.channels);
    cmd->add_option("--frames", s.frames);
    cmd->add_option("--sigma", s.sigma, "Gaussian noise sigma");
    cmd->add_option("--synth-seed", s.seed, "generator seed");
    cmd->add_option("--flip-probability", s.flip_probability, "dynamic_band per-pixel flip probability");
}

SyntheticSpec to_spec(const SynthArgs& a) {
    SyntheticSpec s;
    s.kind = parse_synthetic_kind(a.kind);
    s.width = a.width;
    s.height = a.height;
    s.channels = a.channels;
    s.frames = a.frames;
    s.noise_sigma = a.sigma;
    s.seed = a.seed;
    s.flip_probability = a.flip_probability;
    return s;
}

int cmd_bench(const Inputs& in, const CommonArgs& common, const SynthArgs& synth) {
    RunOptions options{build_config(common), common.threads, 0, false};
    TimingStats timing;
    if(!in.input_dir.empty()) {
        SequenceReader reader(in.input_dir);
        timing = run_frames([&reader] { return reader.next(); }, options, std::nullopt).timing;
        std::printf("bench %s, %d thread(s)\n", in.input_dir.c_str(), common.threads);
    } else {
        SyntheticSource source(to_spec(synth));
        timing = run_frames([&source]() -> std::optional<Frame> {
                                auto item = source.next();
                                if(!item)
                                    return std::nullopt;
                                return std::move(item->frame);
                            },
                            options, std::nullopt)
                     .timing;
        std::printf("bench synthetic %s %dx%d, %d thread(s)\n", synth.kind.c_str(), synth.width, synth.height,
                    common.threads);
    }
    print_timing(timing);
    return 0;
}

int cmd_dump_state(const Inputs& in, const CommonArgs& common, const std::string& out, int at_frame) {
    if(in.input_dir.empty())
        throw Error(ErrorKind::config, "dump-state needs --input");
    Pipeline pipeline(build_config(common), common.threads);
    SequenceReader reader(in.input_dir);
    while(at_frame <= 0 || pipeline.frame_index() < at_frame) {
        auto frame = reader.next();
        if(!frame)
            break;
        pipeline.process(*frame);
    }
    ensure_writable_dir(out);
    pipeline.dump_state(out);
    std::printf("state after frame %d written to %s\n", pipeline.frame_index(), out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"WisenetMD background subtraction"};
    app.require_subcommand(1);

    Inputs inputs;
    CommonArgs common;
    std::string out;
    int dump_every = 0;
    int at_frame = 0;
    SynthArgs synth;
    synth.width = 640;
    synth.height = 480;
    synth.frames = 300;

    auto* run = app.add_subcommand("run", "segment a sequence and write bin%06d masks");
    add_inputs(run, inputs, false);
    add_common(run, common);
    run->add_option("--out", out, "output directory")->required();
    run->add_option("--dump-state-every", dump_every, "write state maps every K frames");

    auto* evaluate = app.add_subcommand("evaluate", "segment and score against ground truth");
    add_inputs(evaluate, inputs, true);
    add_common(evaluate, common);
    evaluate->add_option("--out", out, "directory for masks and metrics.csv");
    evaluate->add_option("--dump-state-every", dump_every, "write state maps every K frames");

    auto* bench = app.add_subcommand("bench", "time the pipeline without writing masks");
    bench->add_option("--input", inputs.input_dir, "directory of frames (default: synthetic)");
    add_common(bench, common);
    add_synth(bench, synth);

    SynthArgs synth_out;
    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic sequence with ground truth");
    add_synth(synth_cmd, synth_out);
    synth_cmd->add_option("--out", out, "output directory")->required();

    auto* dump = app.add_subcommand("dump-state", "write normalized R, T, v, D_min, S_feed, BR, DR maps");
    dump->add_option("--input", inputs.input_dir, "directory of frames")->required();
    add_common(dump, common);
    dump->add_option("--out", out, "output directory")->required();
    dump->add_option("--frame", at_frame, "stop after this 1-based frame (default: last)");

    try {
        app.parse(argc, argv);
    } catch(const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch(const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch(const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if(*run)
            return cmd_run(inputs, common, out, dump_every);
        if(*evaluate)
            return cmd_evaluate(inputs, common, out, dump_every);
        if(*bench)
            return cmd_bench(inputs, common, synth);
        if(*synth_cmd) {
            write_synthetic(to_spec(synth_out), out);
            std::printf("wrote %d frames to %s\n", synth_out.frames, out.c_str());
            return 0;
        }
        if(*dump)
            return cmd_dump_state(inputs, common, out, at_frame);
    } catch(const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.kind());
    } catch(const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch(const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
