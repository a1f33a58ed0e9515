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

#include "chronobell/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chronobell/errors.hpp"

namespace chronobell {

namespace {

double squared_norm_of(const std::array<Amplitude, 4>& v) {
    double s = 0;
    for (const auto& c : v) {
        s += std::norm(c);
    }
    return s;
}

// Applies a single-qubit operator to the given party's factor.
std::array<Amplitude, 4> apply_local(const std::array<Amplitude, 4>& op, Party party, const std::array<Amplitude, 4>& psi) {
    std::array<Amplitude, 4> out{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Amplitude acc = 0;
            for (std::size_t k = 0; k < 2; ++k) {
                if (party == Party::A) {
                    acc += op[2 * i + k] * psi[2 * k + j];
                } else {
                    acc += op[2 * j + k] * psi[2 * i + k];
                }
            }
            out[2 * i + j] = acc;
        }
    }
    return out;
}

const char* party_name(Party p) { return p == Party::A ? "A" : "B"; }

}  // namespace

double Vec3::norm() const { return std::sqrt(dot(*this)); }

BlochSetting::BlochSetting(Vec3 direction, Party party) : direction_(direction), party_(party) {
    double n = direction.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kExactTolerance) {
        throw InvalidSettingError("setting direction must have unit norm, got norm " + std::to_string(n));
    }
}

BlochSetting BlochSetting::along(Vec3 direction, Party party) {
    double n = direction.norm();
    if (!std::isfinite(n) || n == 0.0) {
        throw InvalidSettingError("setting direction must be a nonzero finite vector");
    }
    return BlochSetting({direction.x / n, direction.y / n, direction.z / n}, party);
}

BlochSetting BlochSetting::in_xz_plane(double degrees, Party party) {
    if (!std::isfinite(degrees)) {
        throw InvalidSettingError("setting angle must be finite");
    }
    double t = degrees * std::numbers::pi / 180.0;
    return BlochSetting::along({std::sin(t), 0.0, std::cos(t)}, party);
}

TwoQubitState::TwoQubitState(const std::array<Amplitude, 4>& amplitudes) : amplitudes_(amplitudes) {
    double n = squared_norm_of(amplitudes);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kExactTolerance) {
        throw InvalidStateError("two-qubit state must have unit norm, got squared norm " + std::to_string(n));
    }
}

TwoQubitState TwoQubitState::normalized(const std::array<Amplitude, 4>& amplitudes) {
    double n = std::sqrt(squared_norm_of(amplitudes));
    if (!std::isfinite(n) || n == 0.0) {
        throw InvalidStateError("cannot normalize a zero or non-finite state vector");
    }
    auto v = amplitudes;
    for (auto& c : v) {
        c /= n;
    }
    return TwoQubitState(v);
}

double TwoQubitState::squared_norm() const { return squared_norm_of(amplitudes_); }

TwoQubitState make_singlet() {
    const double h = 1.0 / std::numbers::sqrt2;
    return TwoQubitState({Amplitude{0}, Amplitude{h}, Amplitude{-h}, Amplitude{0}});
}

TwoQubitState make_basis_state(int a_bit, int b_bit) {
    if ((a_bit != 0 && a_bit != 1) || (b_bit != 0 && b_bit != 1)) {
        throw InvalidStateError("basis labels must be 0 or 1");
    }
    std::array<Amplitude, 4> v{};
    v[static_cast<std::size_t>(2 * a_bit + b_bit)] = 1.0;
    return TwoQubitState(v);
}

std::array<Amplitude, 4> spin_projector(const Vec3& n, Outcome outcome) {
    const double s = sign_of(outcome);
    return {
        Amplitude{(1 + s * n.z) / 2, 0},
        Amplitude{s * n.x / 2, -s * n.y / 2},
        Amplitude{s * n.x / 2, s * n.y / 2},
        Amplitude{(1 - s * n.z) / 2, 0},
    };
}

double born_marginal(const TwoQubitState& state, const BlochSetting& setting, Outcome outcome) {
    auto projected = apply_local(spin_projector(setting.direction(), outcome), setting.party(), state.amplitudes());
    return std::clamp(squared_norm_of(projected), 0.0, 1.0);
}

std::array<Amplitude, 4> fix_global_phase(std::array<Amplitude, 4> v) {
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

TwoQubitState collapse(const TwoQubitState& state, const BlochSetting& setting, Outcome outcome) {
    auto projected = apply_local(spin_projector(setting.direction(), outcome), setting.party(), state.amplitudes());
    double p = squared_norm_of(projected);
    if (p <= kImpossibleProbability) {
        throw ImpossibleOutcomeError(
            std::string("outcome ") + (outcome == Outcome::Plus ? "+" : "-") + " has zero probability for party " +
            party_name(setting.party()));
    }
    return TwoQubitState::normalized(fix_global_phase(projected));
}

JointDistribution joint_distribution(
    const TwoQubitState& state, const BlochSetting& a, const BlochSetting& b, Chronology ordering) {
    if (a.party() != Party::A || b.party() != Party::B) {
        throw InvalidSettingError("joint_distribution expects an A setting and a B setting");
    }
    JointDistribution out{a, b, {}};
    const BlochSetting& first = ordering == Chronology::AB ? a : b;
    const BlochSetting& second = ordering == Chronology::AB ? b : a;
    for (Outcome f : kOutcomes) {
        double pf = born_marginal(state, first, f);
        if (pf <= kImpossibleProbability) {
            continue;
        }
        TwoQubitState after = collapse(state, first, f);
        for (Outcome s : kOutcomes) {
            double ps = born_marginal(after, second, s);
            Outcome alpha = ordering == Chronology::AB ? f : s;
            Outcome beta = ordering == Chronology::AB ? s : f;
            out.p[2 * index_of(alpha) + index_of(beta)] = pf * ps;
        }
    }
    return out;
}

double chsh_value(
    const TwoQubitState& state,
    const BlochSetting& a,
    const BlochSetting& a2,
    const BlochSetting& b,
    const BlochSetting& b2) {
    if (a.party() != Party::A || a2.party() != Party::A || b.party() != Party::B || b2.party() != Party::B) {
        throw InvalidSettingError("chsh_value expects two A settings followed by two B settings");
    }
    auto e = [&](const BlochSetting& x, const BlochSetting& y) {
        return joint_distribution(state, x, y, Chronology::AB).correlator();
    };
    return e(a, b) + e(a, b2) + e(a2, b) - e(a2, b2);
}

double CorrelationTable::signaling_gap() const {
    double gap = 0;
    const std::size_t na = a_settings.size();
    const std::size_t nb = b_settings.size();
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 1; j < nb; ++j) {
            for (Outcome o : kOutcomes) {
                gap = std::max(gap, std::abs(at(i, j).marginal_a(o) - at(i, 0).marginal_a(o)));
            }
        }
    }
    for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t i = 1; i < na; ++i) {
            for (Outcome o : kOutcomes) {
                gap = std::max(gap, std::abs(at(i, j).marginal_b(o) - at(0, j).marginal_b(o)));
            }
        }
    }
    return gap;
}

CorrelationTable exact_table(
    const TwoQubitState& state,
    std::span<const BlochSetting> a_settings,
    std::span<const BlochSetting> b_settings,
    Chronology ordering) {
    CorrelationTable t{{a_settings.begin(), a_settings.end()}, {b_settings.begin(), b_settings.end()}, {}};
    t.cells.reserve(a_settings.size() * b_settings.size());
    for (const auto& a : a_settings) {
        for (const auto& b : b_settings) {
            t.cells.push_back(joint_distribution(state, a, b, ordering));
        }
    }
    return t;
}

}  // namespace chronobell
