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

#include "wisenetmd/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

namespace wisenetmd {

namespace {

using FieldPtr = std::variant<int PipelineConfig::*, double PipelineConfig::*, bool PipelineConfig::*,
                              std::uint64_t PipelineConfig::*>;

struct Field {
    const char* key;
    FieldPtr ptr;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        {"n_samples", &PipelineConfig::n_samples},
        {"m_dyn_samples", &PipelineConfig::m_dyn_samples},
        {"t_r", &PipelineConfig::t_r},
        {"r0_color", &PipelineConfig::r0_color},
        {"r0_lbsp", &PipelineConfig::r0_lbsp},
        {"min_matches", &PipelineConfig::min_matches},
        {"blink_threshold", &PipelineConfig::blink_threshold},
        {"dyn_color_threshold", &PipelineConfig::dyn_color_threshold},
        {"warmup_frames", &PipelineConfig::warmup_frames},
        {"dist_gate", &PipelineConfig::dist_gate},
        {"feed_gate", &PipelineConfig::feed_gate},
        {"alpha_short", &PipelineConfig::alpha_short},
        {"alpha_long", &PipelineConfig::alpha_long},
        {"v_decr", &PipelineConfig::v_decr},
        {"v_floor", &PipelineConfig::v_floor},
        {"d_eps", &PipelineConfig::d_eps},
        {"t_min", &PipelineConfig::t_min},
        {"t_max", &PipelineConfig::t_max},
        {"post_enabled", &PipelineConfig::post_enabled},
        {"open_radius", &PipelineConfig::open_radius},
        {"close_radius", &PipelineConfig::close_radius},
        {"median_size", &PipelineConfig::median_size},
        {"recheck_enabled", &PipelineConfig::recheck_enabled},
        {"neighbor_diffusion", &PipelineConfig::neighbor_diffusion},
        {"seed", &PipelineConfig::seed},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if(b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
    throw Error(ErrorKind::config, "config key '" + key + "': '" + value + "' is not " + expected);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, const char* expected) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if(ec != std::errc() || ptr != last)
        bad_value(key, value, expected);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    // std::from_chars for double is not available in every libstdc++ we target
    std::istringstream in(value);
    double out = 0.0;
    char extra;
    if(!(in >> out) || (in >> extra))
        bad_value(key, value, "a number");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if(value == "true" || value == "1" || value == "on" || value == "yes")
        return true;
    if(value == "false" || value == "0" || value == "off" || value == "no")
        return false;
    bad_value(key, value, "a boolean");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void validate(const PipelineConfig& c) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::config, why); };
    if(c.n_samples < 1 || c.n_samples > 1024)
        fail("n_samples must lie in [1, 1024]");
    if(c.min_matches > c.n_samples)
        fail("min_matches cannot exceed n_samples");
    if(c.m_dyn_samples < 1 || c.m_dyn_samples > kMaxDynamicSamples)
        fail("m_dyn_samples must lie in [1, 32]");
    if(!(c.blink_threshold >= 0.0 && c.blink_threshold <= 1.0))
        fail("blink_threshold must lie in [0, 1]");
    if(!(c.dyn_color_threshold > 0.0))
        fail("dyn_color_threshold must be > 0");
    if(c.warmup_frames < 0)
        fail("warmup_frames must be >= 0");
    if(!(c.dist_gate >= 0.0 && c.dist_gate <= 1.0) || !(c.feed_gate >= 0.0 && c.feed_gate <= 1.0))
        fail("dist_gate and feed_gate must lie in [0, 1]");
    validate(c.lbsp());
    validate(c.thresholds());
    validate(c.feedback());
    validate(c.post());
}

void set_config_value(PipelineConfig& config, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    for(const auto& f : fields()) {
        if(key != f.key)
            continue;
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(config.*member)>;
                if constexpr(std::is_same_v<T, bool>)
                    config.*member = parse_bool(key, value);
                else if constexpr(std::is_same_v<T, double>)
                    config.*member = parse_double(key, value);
                else if constexpr(std::is_same_v<T, int>)
                    config.*member = parse_number<int>(key, value, "an integer");
                else
                    config.*member = parse_number<std::uint64_t>(key, value, "an unsigned integer");
            },
            f.ptr);
        return;
    }
    throw Error(ErrorKind::config, "unknown config key '" + key + "'");
}

void apply_override(PipelineConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if(eq == std::string::npos)
        throw Error(ErrorKind::config, "override '" + assignment + "' is not of the form key=value");
    set_config_value(config, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void parse_config_text(PipelineConfig& config, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while(std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if(hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if(line.empty())
            continue;
        const auto eq = line.find('=');
        if(eq == std::string::npos)
            throw Error(ErrorKind::config, "config line " + std::to_string(line_no) + ": expected key = value");
        set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

void load_config_file(PipelineConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if(!in)
        throw Error(ErrorKind::config, "cannot read config file " + path.string());
    std::stringstream body;
    body << in.rdbuf();
    parse_config_text(config, body.str());
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for(const auto& f : fields())
        keys.emplace_back(f.key);
    return keys;
}

std::string to_text(const PipelineConfig& config) {
    std::string out;
    for(const auto& f : fields()) {
        out += f.key;
        out += " = ";
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(config.*member)>;
                if constexpr(std::is_same_v<T, bool>)
                    out += config.*member ? "true" : "false";
                else if constexpr(std::is_same_v<T, double>)
                    out += format_double(config.*member);
                else
                    out += std::to_string(config.*member);
            },
            f.ptr);
        out += '\n';
    }
    return out;
}

} // namespace wisenetmd
