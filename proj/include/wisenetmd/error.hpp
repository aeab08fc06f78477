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

#include <stdexcept>
#include <string>

namespace wisenetmd {

enum class ErrorKind {
    config,            // bad configuration key/value or CLI usage
    missing_directory,
    empty_sequence,
    decode,            // undecodable or unsupported image file
    geometry,          // size/channel mismatch between images or maps
    parse,             // malformed auxiliary text file (temporalROI.txt)
    mismatch,          // inputs that do not line up, e.g. gt vs. input frame counts
    index,             // out-of-range sample/pixel access
    invalid_argument,
    state,             // operation called in the wrong pipeline state
    io,
};

/// Exception type for every failure surfaced by the library. `kind()` lets the
/// CLI map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// 1 usage/config, 2 data, 3 I/O.
inline int exit_code_for(ErrorKind kind) {
    switch(kind) {
        case ErrorKind::config:
        case ErrorKind::invalid_argument:
            return 1;
        case ErrorKind::io:
            return 3;
        default:
            return 2;
    }
}

} // namespace wisenetmd
