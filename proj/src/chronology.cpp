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

#include "chronobell/chronology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chronobell/errors.hpp"
#include "chronobell/parallel.hpp"

namespace chronobell {

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError("lambda must lie in [0, 1), got " + std::to_string(lambda));
    }
}

void check_parties(const BlochSetting& a, const BlochSetting& b) {
    if (a.party() != Party::A || b.party() != Party::B) {
        throw InvalidSettingError("trial expects an A setting and a B setting");
    }
}

void check_trials(std::uint64_t trials, std::size_t pairs) {
    if (trials == 0) {
        throw ParameterError("trials must be at least 1");
    }
    if (pairs != 0 && trials > UINT64_MAX / pairs) {
        throw ParameterError("trial count overflows the split index space");
    }
}

std::size_t cell_index(Outcome alpha, Outcome beta) { return 2 * index_of(alpha) + index_of(beta); }

}  // namespace

Outcome sample_first(const TwoQubitState& state, const BlochSetting& setting, double lambda) {
    check_lambda(lambda);
    return lambda < born_marginal(state, setting, Outcome::Plus) ? Outcome::Plus : Outcome::Minus;
}

Outcome sample_second(
    const TwoQubitState& state,
    const BlochSetting& first_setting,
    Outcome first_outcome,
    const BlochSetting& second_setting,
    double lambda) {
    check_lambda(lambda);
    TwoQubitState after = collapse(state, first_setting, first_outcome);
    return lambda < born_marginal(after, second_setting, Outcome::Plus) ? Outcome::Plus : Outcome::Minus;
}

TrialResult trial_from_lambdas(
    const TwoQubitState& state,
    const BlochSetting& a,
    const BlochSetting& b,
    Chronology chronology,
    double lambda1,
    double lambda2,
    std::uint64_t trial_index) {
    check_parties(a, b);
    TrialResult r{chronology, a, b, Outcome::Plus, Outcome::Plus, {lambda1, lambda2}, trial_index};
    if (chronology == Chronology::AB) {
        r.alpha = sample_first(state, a, lambda1);
        r.beta = sample_second(state, a, r.alpha, b, lambda2);
    } else {
        r.beta = sample_first(state, b, lambda1);
        r.alpha = sample_second(state, b, r.beta, a, lambda2);
    }
    return r;
}

TrialResult run_trial(
    const TwoQubitState& state,
    const BlochSetting& a,
    const BlochSetting& b,
    Chronology chronology,
    LambdaStream& stream,
    std::uint64_t trial_index) {
    double l1 = stream.next_real();
    double l2 = stream.next_real();
    return trial_from_lambdas(state, a, b, chronology, l1, l2, trial_index);
}

EstimatedTable estimate_table(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    Chronology chronology,
    std::uint64_t trials,
    const LambdaStream& base,
    const SimulationOptions& options) {
    const std::size_t nb = b_settings.size();
    const std::size_t pairs = a_settings.size() * nb;
    check_trials(trials, pairs);

    EstimatedTable out;
    out.chronology = chronology;
    out.trials = trials;
    out.table.a_settings.assign(a_settings.begin(), a_settings.end());
    out.table.b_settings.assign(b_settings.begin(), b_settings.end());
    out.counts.assign(pairs, {});

    const std::uint64_t total = pairs * trials;
    const unsigned chunks = detail::chunk_count(total, options.workers);
    std::vector<std::vector<std::array<std::uint64_t, 4>>> partial(chunks, out.counts);
    detail::for_each_chunk(total, options.workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t k = begin; k < end; ++k) {
            std::size_t p = static_cast<std::size_t>(k / trials);
            LambdaStream sub = base.split(k, options.block);
            auto r = run_trial(state, a_settings[p / nb], b_settings[p % nb], chronology, sub, k % trials);
            ++partial[w][p][cell_index(r.alpha, r.beta)];
        }
    });
    for (const auto& part : partial) {
        for (std::size_t p = 0; p < pairs; ++p) {
            for (std::size_t c = 0; c < 4; ++c) {
                out.counts[p][c] += part[p][c];
            }
        }
    }

    const double n = static_cast<double>(trials);
    out.standard_errors.resize(pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
        JointDistribution cell{a_settings[p / nb], b_settings[p % nb], {}};
        for (std::size_t c = 0; c < 4; ++c) {
            double f = static_cast<double>(out.counts[p][c]) / n;
            cell.p[c] = f;
            out.standard_errors[p][c] = std::sqrt(f * (1 - f) / n);
        }
        out.table.cells.push_back(cell);
    }
    return out;
}

double total_variation(const JointDistribution& x, const JointDistribution& y) {
    double s = 0;
    for (std::size_t c = 0; c < 4; ++c) {
        s += std::abs(x.p[c] - y.p[c]);
    }
    return s / 2;
}

CovarianceReport distribution_covariance_check(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    double tolerance) {
    CovarianceReport rep;
    rep.a_settings.assign(a_settings.begin(), a_settings.end());
    rep.b_settings.assign(b_settings.begin(), b_settings.end());
    rep.tolerance = tolerance;
    rep.distribution_checked = true;
    for (std::size_t i = 0; i < a_settings.size(); ++i) {
        for (std::size_t j = 0; j < b_settings.size(); ++j) {
            auto ab = joint_distribution(state, a_settings[i], b_settings[j], Chronology::AB);
            auto ba = joint_distribution(state, a_settings[i], b_settings[j], Chronology::BA);
            PairCovariance pc;
            pc.a_index = i;
            pc.b_index = j;
            for (std::size_t c = 0; c < 4; ++c) {
                pc.max_abs_diff = std::max(pc.max_abs_diff, std::abs(ab.p[c] - ba.p[c]));
            }
            rep.max_abs_diff = std::max(rep.max_abs_diff, pc.max_abs_diff);
            rep.pairs.push_back(pc);
        }
    }
    rep.distribution_pass = rep.max_abs_diff <= tolerance;
    return rep;
}

CovarianceReport realization_divergence(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    std::uint64_t trials,
    const LambdaStream& base,
    const SimulationOptions& options) {
    const std::size_t nb = b_settings.size();
    const std::size_t pairs = a_settings.size() * nb;
    check_trials(trials, pairs);

    CovarianceReport rep;
    rep.a_settings.assign(a_settings.begin(), a_settings.end());
    rep.b_settings.assign(b_settings.begin(), b_settings.end());
    rep.realization_checked = true;
    rep.trials_per_pair = trials;

    const std::uint64_t total = pairs * trials;
    const unsigned chunks = detail::chunk_count(total, options.workers);
    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(pairs, 0));
    detail::for_each_chunk(total, options.workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t k = begin; k < end; ++k) {
            std::size_t p = static_cast<std::size_t>(k / trials);
            const auto& a = a_settings[p / nb];
            const auto& b = b_settings[p % nb];
            LambdaStream sub = base.split(k, options.block);
            auto ab = run_trial(state, a, b, Chronology::AB, sub, k % trials);
            sub.rewind();
            auto ba = run_trial(state, a, b, Chronology::BA, sub, k % trials);
            if (ab.alpha != ba.alpha || ab.beta != ba.beta) {
                ++partial[w][p];
            }
        }
    });

    for (std::size_t p = 0; p < pairs; ++p) {
        PairCovariance pc;
        pc.a_index = p / nb;
        pc.b_index = p % nb;
        pc.trials = trials;
        for (const auto& part : partial) {
            pc.diverged += part[p];
        }
        pc.divergence_fraction = static_cast<double>(pc.diverged) / static_cast<double>(trials);
        rep.total_diverged += pc.diverged;
        rep.pairs.push_back(pc);
    }
    rep.total_trials = total;
    rep.divergence_fraction = static_cast<double>(rep.total_diverged) / static_cast<double>(total);
    return rep;
}

CovarianceReport covariance_report(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    std::uint64_t trials,
    const LambdaStream& base,
    const SimulationOptions& options,
    double tolerance) {
    auto exact = distribution_covariance_check(state, a_settings, b_settings, tolerance);
    auto real = realization_divergence(state, a_settings, b_settings, trials, base, options);
    for (std::size_t p = 0; p < real.pairs.size(); ++p) {
        real.pairs[p].max_abs_diff = exact.pairs[p].max_abs_diff;
    }
    real.tolerance = exact.tolerance;
    real.max_abs_diff = exact.max_abs_diff;
    real.distribution_checked = true;
    real.distribution_pass = exact.distribution_pass;
    return real;
}

}  // namespace chronobell
