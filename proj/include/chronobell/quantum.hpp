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

#ifndef CHRONOBELL_QUANTUM_HPP
#define CHRONOBELL_QUANTUM_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace chronobell {

using Amplitude = std::complex<double>;

/// Tolerance for quantities produced by a handful of flops.
inline constexpr double kExactTolerance = 1e-12;
/// Tolerance for quantities accumulated over many operations.
inline constexpr double kAccumulatedTolerance = 1e-9;
/// Branch probabilities at or below this are treated as impossible.
inline constexpr double kImpossibleProbability = 1e-24;

enum class Party { A, B };

/// Measurement result. The underlying value is the physical sign.
enum class Outcome : int { Plus = 1, Minus = -1 };

inline int sign_of(Outcome o) { return static_cast<int>(o); }
inline Outcome flip(Outcome o) { return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus; }
/// 0 for +, 1 for -. Matches the (++, +-, -+, --) table order.
inline std::size_t index_of(Outcome o) { return o == Outcome::Plus ? 0 : 1; }
inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::Plus, Outcome::Minus};

/// Which party measures first in the simulated reference frame.
enum class Chronology { AB, BA };

struct Vec3 {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm() const;
    double dot(const Vec3& other) const { return x * other.x + y * other.y + z * other.z; }
    bool operator==(const Vec3&) const = default;
};

/// Spin measurement direction owned by one party.
///
/// The direction must have unit norm (within kExactTolerance). Use `along` to
/// normalize an arbitrary nonzero vector explicitly; zero vectors are always
/// rejected with InvalidSettingError.
class BlochSetting {
   public:
    BlochSetting(Vec3 direction, Party party);

    static BlochSetting along(Vec3 direction, Party party);
    /// Direction (sin t, 0, cos t) for an angle t in degrees measured from +z toward +x.
    static BlochSetting in_xz_plane(double degrees, Party party);

    const Vec3& direction() const { return direction_; }
    Party party() const { return party_; }

    bool operator==(const BlochSetting&) const = default;

   private:
    Vec3 direction_;
    Party party_;
};

/// Pure two-qubit state, amplitudes ordered |00>, |01>, |10>, |11> with the
/// first label belonging to party A and |0> the +1 eigenstate of sigma_z.
class TwoQubitState {
   public:
    /// Throws InvalidStateError unless the squared norm is 1 within kExactTolerance.
    explicit TwoQubitState(const std::array<Amplitude, 4>& amplitudes);

    /// Rescales to unit norm; throws InvalidStateError for a zero vector.
    static TwoQubitState normalized(const std::array<Amplitude, 4>& amplitudes);

    const std::array<Amplitude, 4>& amplitudes() const { return amplitudes_; }
    Amplitude operator[](std::size_t i) const { return amplitudes_[i]; }
    double squared_norm() const;

   private:
    std::array<Amplitude, 4> amplitudes_;
};

/// (|01> - |10>) / sqrt(2).
TwoQubitState make_singlet();
/// Computational basis state |a_bit b_bit>.
TwoQubitState make_basis_state(int a_bit, int b_bit);

/// The 2x2 projector (I + s n.sigma)/2, row-major.
std::array<Amplitude, 4> spin_projector(const Vec3& direction, Outcome outcome);

double born_marginal(const TwoQubitState& state, const BlochSetting& setting, Outcome outcome);

/// Post-measurement state. The first amplitude with magnitude above
/// kExactTolerance is made real-positive so results compare deterministically.
TwoQubitState collapse(const TwoQubitState& state, const BlochSetting& setting, Outcome outcome);

/// Multiplies the state by the phase that makes its first non-negligible amplitude real-positive.
std::array<Amplitude, 4> fix_global_phase(std::array<Amplitude, 4> amplitudes);

struct JointDistribution {
    BlochSetting a;
    BlochSetting b;
    /// P(alpha, beta) ordered (++, +-, -+, --).
    std::array<double, 4> p{};

    double at(Outcome alpha, Outcome beta) const { return p[2 * index_of(alpha) + index_of(beta)]; }
    double correlator() const { return p[0] - p[1] - p[2] + p[3]; }
    double marginal_a(Outcome alpha) const { return at(alpha, Outcome::Plus) + at(alpha, Outcome::Minus); }
    double marginal_b(Outcome beta) const { return at(Outcome::Plus, beta) + at(Outcome::Minus, beta); }
};

/// Sequential-measurement joint distribution: the first party (per `ordering`)
/// is measured on `state`, the second on the collapsed state.
JointDistribution joint_distribution(
    const TwoQubitState& state, const BlochSetting& a, const BlochSetting& b, Chronology ordering);

/// E(a,b) + E(a,b2) + E(a2,b) - E(a2,b2).
double chsh_value(
    const TwoQubitState& state,
    const BlochSetting& a,
    const BlochSetting& a2,
    const BlochSetting& b,
    const BlochSetting& b2);

/// P(alpha, beta | a_i, b_j) over finite setting lists; cells are row-major in (i, j).
struct CorrelationTable {
    std::vector<BlochSetting> a_settings;
    std::vector<BlochSetting> b_settings;
    std::vector<JointDistribution> cells;

    const JointDistribution& at(std::size_t i, std::size_t j) const { return cells[i * b_settings.size() + j]; }
    /// Largest dependence of one party's marginal on the other party's setting.
    double signaling_gap() const;
};

CorrelationTable exact_table(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    Chronology ordering);

}  // namespace chronobell

#endif
