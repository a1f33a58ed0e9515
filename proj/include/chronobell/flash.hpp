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

// Toy spontaneous-localization ("flash") process on a periodic 1D grid.
//
// A hit on particle k centered at site x multiplies the wavefunction by the
// kernel column G[x][.] along that particle's coordinate and renormalizes. The
// kernel is a periodic Gaussian whose columns are rescaled so that
// sum_x G[x][y]^2 = 1, which makes hit-center probabilities
// P(x) = ||G_x psi||^2 sum to one for every normalized state. There is no
// evolution between hits.

#ifndef CHRONOBELL_FLASH_HPP
#define CHRONOBELL_FLASH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chronobell/lambda_store.hpp"
#include "chronobell/quantum.hpp"

namespace chronobell {

/// Amplitudes over N sites (one particle) or N x N sites (two particles,
/// index x1 * N + x2).
class GridWavefunction {
   public:
    /// Throws InvalidStateError unless the squared norm is 1 within kExactTolerance.
    GridWavefunction(std::size_t sites, std::size_t particles, std::vector<Amplitude> amplitudes, double spacing = 1.0);

    static GridWavefunction normalized(
        std::size_t sites, std::size_t particles, std::vector<Amplitude> amplitudes, double spacing = 1.0);
    static GridWavefunction localized(std::size_t sites, std::size_t site, double spacing = 1.0);
    static GridWavefunction uniform(std::size_t sites, double spacing = 1.0);
    /// (|j,k> - |k,j>) / sqrt(2), the discrete analog of the singlet.
    static GridWavefunction antisymmetric_pair(std::size_t sites, std::size_t j, std::size_t k, double spacing = 1.0);
    static GridWavefunction product(const GridWavefunction& first, const GridWavefunction& second);

    std::size_t sites() const { return sites_; }
    std::size_t particles() const { return particles_; }
    double spacing() const { return spacing_; }
    const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
    double squared_norm() const;

   private:
    std::size_t sites_;
    std::size_t particles_;
    double spacing_;
    std::vector<Amplitude> amplitudes_;
};

class HitKernel {
   public:
    std::size_t sites() const { return sites_; }
    double sigma() const { return sigma_; }
    double spacing() const { return spacing_; }
    /// G[center][y].
    double weight(std::size_t center, std::size_t y) const { return g_[center * sites_ + y]; }

   private:
    friend HitKernel make_hit_kernel(std::size_t sites, double sigma, double spacing);
    std::size_t sites_ = 0;
    double sigma_ = 0;
    double spacing_ = 0;
    std::vector<double> g_;
};

/// Throws ParameterError for sites < 2, sigma <= 0 or spacing <= 0.
HitKernel make_hit_kernel(std::size_t sites, double sigma, double spacing = 1.0);

/// P(x) = ||G_x psi||^2 for hits on `particle` (0-based).
std::vector<double> flash_distribution(const GridWavefunction& psi, const HitKernel& kernel, std::size_t particle);

/// Throws ImpossibleFlashError when the center has (numerically) zero probability.
GridWavefunction apply_hit(
    const GridWavefunction& psi, const HitKernel& kernel, std::size_t particle, std::size_t center);

/// Smallest x with u < cumulative(x); never returns a zero-probability site.
std::size_t sample_site(std::span<const double> probabilities, double u);

struct FlashRecord {
    double time = 0;
    std::size_t site = 0;
    std::size_t particle = 0;
};

struct FlashHistory {
    std::vector<FlashRecord> flashes;
    GridWavefunction final_state;
    std::string stream_label;
};

struct FlashParameters {
    /// Hits per particle per time unit.
    double rate = 1.0;
    double duration = 4.0;
};

/// Per hit, reads three words: the exponential waiting time, the particle
/// (uniform), and the center (inverse CDF of the flash distribution). The
/// waiting time that overshoots `duration` is read and discarded.
FlashHistory run_flash_process(
    const GridWavefunction& initial, const HitKernel& kernel, const FlashParameters& params, LambdaStream& stream);

struct FlashEnsembleOptions {
    unsigned workers = 1;
    std::uint64_t block = kDefaultBlockSize;
};

/// Run r reads `base.split(r, block)`.
std::vector<FlashHistory> run_flash_ensemble(
    const GridWavefunction& initial,
    const HitKernel& kernel,
    const FlashParameters& params,
    std::uint64_t runs,
    const LambdaStream& base,
    const FlashEnsembleOptions& options = {});

enum class HitOrder { FirstThenSecond, SecondThenFirst };

struct OrderingReport {
    std::size_t sites = 0;
    double max_diff = 0;
    double tolerance = kExactTolerance;
    bool pass = false;
    /// Exact P(x1, x2) for each order, index x1 * N + x2.
    std::vector<double> first_then_second;
    std::vector<double> second_then_first;
};

inline constexpr std::size_t kMaxExactOrderingSites = 32;

/// Exact joint distribution of one flash on each particle under both hit
/// orders. Throws ArityError for single-particle input and ParameterError
/// for grids above kMaxExactOrderingSites.
OrderingReport ordering_invariance_exact(
    const GridWavefunction& psi, const HitKernel& kernel, double tolerance = kExactTolerance);

/// The realized (x1, x2) when one hit per particle is applied in `order`,
/// the first hit sampled with lambda1 and the second with lambda2.
std::pair<std::size_t, std::size_t> realized_flash_pair(
    const GridWavefunction& psi, const HitKernel& kernel, HitOrder order, double lambda1, double lambda2);

struct FlashDivergenceReport {
    std::uint64_t runs = 0;
    std::uint64_t diverged = 0;
    double fraction = 0;
};

/// Both orders on the same substream per run; counts differing (x1, x2).
FlashDivergenceReport flash_realization_divergence(
    const GridWavefunction& psi,
    const HitKernel& kernel,
    std::uint64_t runs,
    const LambdaStream& base,
    const FlashEnsembleOptions& options = {});

}  // namespace chronobell

#endif
