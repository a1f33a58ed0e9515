// Copyright 2026 The Chronobell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHRONOBELL_CLI_HPP
#define CHRONOBELL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "chronobell/quantum.hpp"

namespace chronobell::cli {

enum ExitStatus : int {
    kSuccess = 0,
    kFailure = 1,
    kUsage = 2,
    kLambdaExhausted = 3,
    kOracleDisagreement = 4,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless redirected with --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Named fixture (singlet, phi-plus, 00, 01, 10, 11) or four comma-separated
/// amplitudes "re[:im]", normalized explicitly.
TwoQubitState parse_state(const std::string& text);

/// Tokens separated by '/' or ','. A token is an angle in degrees in the x-z
/// plane, or an "x:y:z" direction (normalized explicitly).
std::vector<Vec3> parse_directions(const std::string& text);

}  // namespace chronobell::cli

#endif
