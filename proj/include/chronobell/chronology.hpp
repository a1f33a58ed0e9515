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

// Frame-dependent samplers for a two-party spin experiment.
//
// In chronology AB, Alice's result is a function of her setting and the first
// lambda word (the "first" sampler) and Bob's result is a function of both
// settings, Alice's result and the second word (the "second" sampler). In
// chronology BA the roles swap. Both samplers use the inverse-CDF rule with +
// ordered before -: the outcome is + iff lambda < P(+).

#ifndef CHRONOBELL_CHRONOLOGY_HPP
#define CHRONOBELL_CHRONOLOGY_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "chronobell/lambda_store.hpp"
#include "chronobell/quantum.hpp"

namespace chronobell {

Outcome sample_first(const TwoQubitState& state, const BlochSetting& setting, double lambda);

Outcome sample_second(
    const TwoQubitState& state,
    const BlochSetting& first_setting,
    Outcome first_outcome,
    const BlochSetting& second_setting,
    double lambda);

struct TrialResult {
    Chronology chronology;
    BlochSetting a;
    BlochSetting b;
    Outcome alpha;
    Outcome beta;
    /// Words consumed, in consumption order (first party's word first).
    std::array<double, 2> lambdas;
    std::uint64_t trial_index = 0;
};

/// Pure form of a trial: the outcome pair given the two lambda values.
TrialResult trial_from_lambdas(
    const TwoQubitState& state,
    const BlochSetting& a,
    const BlochSetting& b,
    Chronology chronology,
    double lambda1,
    double lambda2,
    std::uint64_t trial_index = 0);

/// Reads two words from `stream` and runs one trial.
TrialResult run_trial(
    const TwoQubitState& state,
    const BlochSetting& a,
    const BlochSetting& b,
    Chronology chronology,
    LambdaStream& stream,
    std::uint64_t trial_index = 0);

struct SimulationOptions {
    unsigned workers = 1;
    std::uint64_t block = kDefaultBlockSize;
};

/// Empirical table from repeated trials.
///
/// Trial t of setting pair p = i * |B| + j reads substream
/// `base.split(p * trials + t, block)`, so the same base stream replays the
/// same trials regardless of chronology or worker count.
struct EstimatedTable {
    Chronology chronology;
    std::uint64_t trials = 0;
    CorrelationTable table;
    /// Per-cell counts, aligned with table.cells.
    std::vector<std::array<std::uint64_t, 4>> counts;
    /// Binomial standard error sqrt(p(1-p)/trials), aligned with table.cells.
    std::vector<std::array<double, 4>> standard_errors;
};

EstimatedTable estimate_table(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    Chronology chronology,
    std::uint64_t trials,
    const LambdaStream& base,
    const SimulationOptions& options = {});

/// Total variation distance between two joint distributions.
double total_variation(const JointDistribution& x, const JointDistribution& y);

struct PairCovariance {
    std::size_t a_index = 0;
    std::size_t b_index = 0;
    /// Max entrywise |P_AB - P_BA| of the exact tables.
    double max_abs_diff = 0;
    std::uint64_t trials = 0;
    std::uint64_t diverged = 0;
    double divergence_fraction = 0;
};

struct CovarianceReport {
    std::vector<BlochSetting> a_settings;
    std::vector<BlochSetting> b_settings;
    std::vector<PairCovariance> pairs;

    double tolerance = kExactTolerance;
    double max_abs_diff = 0;
    bool distribution_checked = false;
    bool distribution_pass = false;

    bool realization_checked = false;
    std::uint64_t trials_per_pair = 0;
    std::uint64_t total_trials = 0;
    std::uint64_t total_diverged = 0;
    double divergence_fraction = 0;
};

/// Exact joint distributions under both chronologies for every setting pair.
CovarianceReport distribution_covariance_check(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    double tolerance = kExactTolerance);

/// Runs AB and BA on the same substream per trial and counts trials whose
/// (alpha, beta) pairs differ.
CovarianceReport realization_divergence(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    std::uint64_t trials,
    const LambdaStream& base,
    const SimulationOptions& options = {});

/// Both parts in one report.
CovarianceReport covariance_report(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    std::uint64_t trials,
    const LambdaStream& base,
    const SimulationOptions& options = {},
    double tolerance = kExactTolerance);

}  // namespace chronobell

#endif
