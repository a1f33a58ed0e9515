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

#ifndef CHRONOBELL_SIMPLEX_HPP
#define CHRONOBELL_SIMPLEX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace chronobell::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    double objective = 0;
    std::vector<double> x;
    /// Phase-one optimum: total artificial mass left, zero iff feasible.
    double infeasibility = 0;
    std::size_t pivots = 0;
};

struct Options {
    /// Phase-one residual above this is reported as infeasible.
    double feasibility_tolerance = 1e-9;
    /// Pivot and reduced-cost threshold.
    double pivot_tolerance = 1e-12;
    std::size_t max_pivots = 100000;
};

/// Dense two-phase tableau simplex for
///
///   minimize c.x  subject to  A x = b,  x >= 0,
///
/// with Bland's smallest-index rule for both entering and leaving variables,
/// so it terminates on degenerate problems. `rows` holds A row-major with
/// `c.size()` columns. Redundant equality rows are allowed.
Result minimize(
    std::span<const std::vector<double>> rows,
    std::span<const double> b,
    std::span<const double> c,
    const Options& options = {});

}  // namespace chronobell::lp

#endif
