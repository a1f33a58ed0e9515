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

#include "chronobell/flash.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chronobell/errors.hpp"
#include "chronobell/parallel.hpp"

namespace chronobell {

namespace {

std::size_t grid_size(std::size_t sites, std::size_t particles) {
    return particles == 1 ? sites : sites * sites;
}

// |psi|^2 summed over every coordinate except `particle`.
std::vector<double> coordinate_density(const GridWavefunction& psi, std::size_t particle) {
    const std::size_t n = psi.sites();
    std::vector<double> rho(n, 0.0);
    const auto& amp = psi.amplitudes();
    if (psi.particles() == 1) {
        for (std::size_t y = 0; y < n; ++y) {
            rho[y] = std::norm(amp[y]);
        }
        return rho;
    }
    for (std::size_t x1 = 0; x1 < n; ++x1) {
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            rho[particle == 0 ? x1 : x2] += std::norm(amp[x1 * n + x2]);
        }
    }
    return rho;
}

void check_compatible(const GridWavefunction& psi, const HitKernel& kernel, std::size_t particle) {
    if (psi.sites() != kernel.sites()) {
        throw ParameterError("kernel and wavefunction grids differ in size");
    }
    if (particle >= psi.particles()) {
        throw ArityError("particle index " + std::to_string(particle) + " out of range");
    }
}

std::vector<Amplitude> fix_phase(std::vector<Amplitude> v) {
    for (const auto& c : v) {
        double m = std::abs(c);
        if (m > kExactTolerance) {
            Amplitude phase = std::conj(c) / m;
            for (auto& d : v) {
                d *= phase;
            }
            break;
        }
    }
    return v;
}

}  // namespace

GridWavefunction::GridWavefunction(
    std::size_t sites, std::size_t particles, std::vector<Amplitude> amplitudes, double spacing)
    : sites_(sites), particles_(particles), spacing_(spacing), amplitudes_(std::move(amplitudes)) {
    if (sites < 2) {
        throw ParameterError("a grid needs at least 2 sites");
    }
    if (particles != 1 && particles != 2) {
        throw ArityError("grid wavefunctions hold one or two particles");
    }
    if (!(spacing > 0.0)) {
        throw ParameterError("grid spacing must be positive");
    }
    if (amplitudes_.size() != grid_size(sites, particles)) {
        throw InvalidStateError("amplitude count does not match the grid");
    }
    double n = squared_norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kExactTolerance) {
        throw InvalidStateError("grid wavefunction must have unit norm, got squared norm " + std::to_string(n));
    }
}

GridWavefunction GridWavefunction::normalized(
    std::size_t sites, std::size_t particles, std::vector<Amplitude> amplitudes, double spacing) {
    double s = 0;
    for (const auto& c : amplitudes) {
        s += std::norm(c);
    }
    if (!std::isfinite(s) || s == 0.0) {
        throw InvalidStateError("cannot normalize a zero or non-finite grid wavefunction");
    }
    const double inv = 1.0 / std::sqrt(s);
    for (auto& c : amplitudes) {
        c *= inv;
    }
    return GridWavefunction(sites, particles, std::move(amplitudes), spacing);
}

GridWavefunction GridWavefunction::localized(std::size_t sites, std::size_t site, double spacing) {
    if (site >= sites) {
        throw ParameterError("site out of range");
    }
    std::vector<Amplitude> v(sites, 0.0);
    v[site] = 1.0;
    return GridWavefunction(sites, 1, std::move(v), spacing);
}

GridWavefunction GridWavefunction::uniform(std::size_t sites, double spacing) {
    return normalized(sites, 1, std::vector<Amplitude>(sites, 1.0), spacing);
}

GridWavefunction GridWavefunction::antisymmetric_pair(std::size_t sites, std::size_t j, std::size_t k, double spacing) {
    if (j >= sites || k >= sites || j == k) {
        throw ParameterError("antisymmetric pair needs two distinct in-range sites");
    }
    std::vector<Amplitude> v(sites * sites, 0.0);
    v[j * sites + k] = 1.0 / std::numbers::sqrt2;
    v[k * sites + j] = -1.0 / std::numbers::sqrt2;
    return GridWavefunction(sites, 2, std::move(v), spacing);
}

GridWavefunction GridWavefunction::product(const GridWavefunction& first, const GridWavefunction& second) {
    if (first.particles() != 1 || second.particles() != 1 || first.sites() != second.sites()) {
        throw ArityError("product needs two single-particle states on the same grid");
    }
    const std::size_t n = first.sites();
    std::vector<Amplitude> v(n * n);
    for (std::size_t x1 = 0; x1 < n; ++x1) {
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            v[x1 * n + x2] = first.amplitudes()[x1] * second.amplitudes()[x2];
        }
    }
    return normalized(n, 2, std::move(v), first.spacing());
}

double GridWavefunction::squared_norm() const {
    double s = 0;
    for (const auto& c : amplitudes_) {
        s += std::norm(c);
    }
    return s;
}

HitKernel make_hit_kernel(std::size_t sites, double sigma, double spacing) {
    if (sites < 2) {
        throw ParameterError("hit kernel needs at least 2 sites");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("hit width sigma must be positive");
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw ParameterError("grid spacing must be positive");
    }
    HitKernel k;
    k.sites_ = sites;
    k.sigma_ = sigma;
    k.spacing_ = spacing;
    k.g_.assign(sites * sites, 0.0);
    const double scale = spacing * spacing / (4 * sigma * sigma);
    for (std::size_t x = 0; x < sites; ++x) {
        for (std::size_t y = 0; y < sites; ++y) {
            std::size_t d = x > y ? x - y : y - x;
            d = std::min(d, sites - d);
            double dd = static_cast<double>(d);
            k.g_[x * sites + y] = std::exp(-dd * dd * scale);
        }
    }
    for (std::size_t y = 0; y < sites; ++y) {
        double s = 0;
        for (std::size_t x = 0; x < sites; ++x) {
            s += k.g_[x * sites + y] * k.g_[x * sites + y];
        }
        const double inv = 1.0 / std::sqrt(s);
        for (std::size_t x = 0; x < sites; ++x) {
            k.g_[x * sites + y] *= inv;
        }
    }
    return k;
}

std::vector<double> flash_distribution(const GridWavefunction& psi, const HitKernel& kernel, std::size_t particle) {
    check_compatible(psi, kernel, particle);
    const std::size_t n = psi.sites();
    auto rho = coordinate_density(psi, particle);
    std::vector<double> p(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        double s = 0;
        for (std::size_t y = 0; y < n; ++y) {
            double g = kernel.weight(x, y);
            s += g * g * rho[y];
        }
        p[x] = s;
    }
    return p;
}

GridWavefunction apply_hit(
    const GridWavefunction& psi, const HitKernel& kernel, std::size_t particle, std::size_t center) {
    check_compatible(psi, kernel, particle);
    const std::size_t n = psi.sites();
    if (center >= n) {
        throw ParameterError("hit center out of range");
    }
    std::vector<Amplitude> v = psi.amplitudes();
    if (psi.particles() == 1) {
        for (std::size_t y = 0; y < n; ++y) {
            v[y] *= kernel.weight(center, y);
        }
    } else {
        for (std::size_t x1 = 0; x1 < n; ++x1) {
            for (std::size_t x2 = 0; x2 < n; ++x2) {
                v[x1 * n + x2] *= kernel.weight(center, particle == 0 ? x1 : x2);
            }
        }
    }
    double p = 0;
    for (const auto& c : v) {
        p += std::norm(c);
    }
    if (p <= kImpossibleProbability) {
        throw ImpossibleFlashError("hit at site " + std::to_string(center) + " has zero probability");
    }
    return GridWavefunction::normalized(n, psi.particles(), fix_phase(std::move(v)), psi.spacing());
}

std::size_t sample_site(std::span<const double> probabilities, double u) {
    if (!(u >= 0.0 && u < 1.0)) {
        throw DomainError("sampling variate must lie in [0, 1)");
    }
    double cumulative = 0;
    std::size_t last_positive = probabilities.size();
    for (std::size_t x = 0; x < probabilities.size(); ++x) {
        if (probabilities[x] > 0) {
            last_positive = x;
        }
        cumulative += probabilities[x];
        if (u < cumulative && probabilities[x] > 0) {
            return x;
        }
    }
    if (last_positive == probabilities.size()) {
        throw ImpossibleFlashError("flash distribution has no support");
    }
    // u landed in the rounding gap above the accumulated total.
    return last_positive;
}

FlashHistory run_flash_process(
    const GridWavefunction& initial, const HitKernel& kernel, const FlashParameters& params, LambdaStream& stream) {
    if (!(params.rate > 0.0) || !std::isfinite(params.rate)) {
        throw ParameterError("hit rate must be positive");
    }
    if (!(params.duration > 0.0) || !std::isfinite(params.duration)) {
        throw ParameterError("duration must be positive");
    }
    check_compatible(initial, kernel, 0);
    const double particles = static_cast<double>(initial.particles());
    const double total_rate = params.rate * particles;

    FlashHistory h{{}, initial, stream.label()};
    double t = 0;
    for (;;) {
        t += -std::log1p(-stream.next_real()) / total_rate;
        if (t > params.duration) {
            break;
        }
        double u = stream.next_real();
        std::size_t particle = std::min(
            static_cast<std::size_t>(u * particles), initial.particles() - 1);
        auto dist = flash_distribution(h.final_state, kernel, particle);
        std::size_t center = sample_site(dist, stream.next_real());
        h.final_state = apply_hit(h.final_state, kernel, particle, center);
        h.flashes.push_back({t, center, particle});
    }
    return h;
}

std::vector<FlashHistory> run_flash_ensemble(
    const GridWavefunction& initial,
    const HitKernel& kernel,
    const FlashParameters& params,
    std::uint64_t runs,
    const LambdaStream& base,
    const FlashEnsembleOptions& options) {
    if (runs == 0) {
        throw ParameterError("runs must be at least 1");
    }
    std::vector<std::vector<FlashHistory>> partial(detail::chunk_count(runs, options.workers));
    detail::for_each_chunk(runs, options.workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        partial[w].reserve(end - begin);
        for (std::uint64_t r = begin; r < end; ++r) {
            LambdaStream sub = base.split(r, options.block);
            partial[w].push_back(run_flash_process(initial, kernel, params, sub));
        }
    });
    std::vector<FlashHistory> out;
    out.reserve(runs);
    for (auto& part : partial) {
        for (auto& h : part) {
            out.push_back(std::move(h));
        }
    }
    return out;
}

OrderingReport ordering_invariance_exact(const GridWavefunction& psi, const HitKernel& kernel, double tolerance) {
    if (psi.particles() != 2) {
        throw ArityError("ordering invariance needs a two-particle state");
    }
    if (psi.sites() > kMaxExactOrderingSites) {
        throw ParameterError(
            "exact ordering check supports at most " + std::to_string(kMaxExactOrderingSites) + " sites");
    }
    check_compatible(psi, kernel, 1);
    const std::size_t n = psi.sites();
    OrderingReport rep;
    rep.sites = n;
    rep.tolerance = tolerance;
    rep.first_then_second.assign(n * n, 0.0);
    rep.second_then_first.assign(n * n, 0.0);

    auto fill = [&](std::size_t first, std::vector<double>& joint) {
        const std::size_t second = 1 - first;
        auto p_first = flash_distribution(psi, kernel, first);
        for (std::size_t x = 0; x < n; ++x) {
            if (p_first[x] <= kImpossibleProbability) {
                continue;
            }
            auto after = apply_hit(psi, kernel, first, x);
            auto p_second = flash_distribution(after, kernel, second);
            for (std::size_t y = 0; y < n; ++y) {
                std::size_t x1 = first == 0 ? x : y;
                std::size_t x2 = first == 0 ? y : x;
                joint[x1 * n + x2] = p_first[x] * p_second[y];
            }
        }
    };
    fill(0, rep.first_then_second);
    fill(1, rep.second_then_first);
    for (std::size_t i = 0; i < n * n; ++i) {
        rep.max_diff = std::max(rep.max_diff, std::abs(rep.first_then_second[i] - rep.second_then_first[i]));
    }
    rep.pass = rep.max_diff <= tolerance;
    return rep;
}

std::pair<std::size_t, std::size_t> realized_flash_pair(
    const GridWavefunction& psi, const HitKernel& kernel, HitOrder order, double lambda1, double lambda2) {
    if (psi.particles() != 2) {
        throw ArityError("realized flash pairs need a two-particle state");
    }
    const std::size_t first = order == HitOrder::FirstThenSecond ? 0 : 1;
    const std::size_t second = 1 - first;
    std::size_t x_first = sample_site(flash_distribution(psi, kernel, first), lambda1);
    auto after = apply_hit(psi, kernel, first, x_first);
    std::size_t x_second = sample_site(flash_distribution(after, kernel, second), lambda2);
    return first == 0 ? std::pair{x_first, x_second} : std::pair{x_second, x_first};
}

FlashDivergenceReport flash_realization_divergence(
    const GridWavefunction& psi,
    const HitKernel& kernel,
    std::uint64_t runs,
    const LambdaStream& base,
    const FlashEnsembleOptions& options) {
    if (runs == 0) {
        throw ParameterError("runs must be at least 1");
    }
    std::vector<std::uint64_t> partial(detail::chunk_count(runs, options.workers), 0);
    detail::for_each_chunk(runs, options.workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) {
            LambdaStream sub = base.split(r, options.block);
            double l1 = sub.next_real();
            double l2 = sub.next_real();
            auto a = realized_flash_pair(psi, kernel, HitOrder::FirstThenSecond, l1, l2);
            auto b = realized_flash_pair(psi, kernel, HitOrder::SecondThenFirst, l1, l2);
            if (a != b) {
                ++partial[w];
            }
        }
    });
    FlashDivergenceReport rep;
    rep.runs = runs;
    for (auto c : partial) {
        rep.diverged += c;
    }
    rep.fraction = static_cast<double>(rep.diverged) / static_cast<double>(runs);
    return rep;
}

}  // namespace chronobell
