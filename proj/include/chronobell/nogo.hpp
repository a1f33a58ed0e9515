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

// Finite-alphabet analysis of chronology-covariant strategies in the 2-2-2
// Bell scenario.
//
// A strategy quadruple assigns outcomes through four tables:
//
//   chronology AB:  alpha = F_AB(a, l)      beta  = S_AB(a, b, l)
//   chronology BA:  beta  = F_BA(b, l)      alpha = S_BA(b, a, l)
//
// Demanding identical outcomes in both frames means
//
//   F_AB(a, l) = S_BA(b, a, l)   and   S_AB(a, b, l) = F_BA(b, l)
//
// for every (a, b, l). The second constraint makes S_AB blind to a, so any such
// quadruple is a local model with responses f = F_AB and g = F_BA. Local
// models live in the convex hull of the 16 deterministic behaviors and obey
// |CHSH| <= 2; this module checks all three steps mechanically.

#ifndef CHRONOBELL_NOGO_HPP
#define CHRONOBELL_NOGO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chronobell/quantum.hpp"

namespace chronobell {

/// P(alpha, beta | a, b) for a, b in {0, 1}; see `behavior_index`.
using BehaviorVector = std::array<double, 16>;

/// Position of P(alpha, beta | a, b) in a BehaviorVector.
inline constexpr std::size_t behavior_index(std::size_t a, std::size_t b, Outcome alpha, Outcome beta) {
    return ((a * 2 + b) * 2 + (alpha == Outcome::Plus ? 0 : 1)) * 2 + (beta == Outcome::Plus ? 0 : 1);
}

/// Correlator E(a, b) = sum of alpha*beta*P(alpha, beta | a, b).
double correlator(const BehaviorVector& p, std::size_t a, std::size_t b);

/// Largest deviation from normalization, no-signaling and nonnegativity.
double behavior_defect(const BehaviorVector& p);
/// Throws ValidationError if `behavior_defect(p) > tol`.
void validate_behavior(const BehaviorVector& p, double tol = kAccumulatedTolerance);

class LocalModel {
   public:
    /// Uniform weights.
    explicit LocalModel(std::size_t alphabet);
    LocalModel(std::size_t alphabet, std::vector<double> weights);

    std::size_t alphabet() const { return alphabet_; }
    const std::vector<double>& weights() const { return weights_; }

    Outcome f(std::size_t a, std::size_t l) const { return f_[a * alphabet_ + l]; }
    Outcome g(std::size_t b, std::size_t l) const { return g_[b * alphabet_ + l]; }
    void set_f(std::size_t a, std::size_t l, Outcome o) { f_[a * alphabet_ + l] = o; }
    void set_g(std::size_t b, std::size_t l, Outcome o) { g_[b * alphabet_ + l] = o; }

   private:
    std::size_t alphabet_;
    std::vector<double> weights_;
    std::vector<Outcome> f_;
    std::vector<Outcome> g_;
};

class StrategyQuadruple {
   public:
    /// Uniform weights, every table entry +.
    explicit StrategyQuadruple(std::size_t alphabet);
    StrategyQuadruple(std::size_t alphabet, std::vector<double> weights);

    /// The quadruple F_AB = f, S_BA(b, a, l) = f(a, l), F_BA = g, S_AB(a, b, l) = g(b, l).
    static StrategyQuadruple from_local(const LocalModel& model);

    std::size_t alphabet() const { return alphabet_; }
    const std::vector<double>& weights() const { return weights_; }

    Outcome f_ab(std::size_t a, std::size_t l) const { return f_ab_[a * alphabet_ + l]; }
    Outcome s_ab(std::size_t a, std::size_t b, std::size_t l) const { return s_ab_[(a * 2 + b) * alphabet_ + l]; }
    Outcome f_ba(std::size_t b, std::size_t l) const { return f_ba_[b * alphabet_ + l]; }
    Outcome s_ba(std::size_t b, std::size_t a, std::size_t l) const { return s_ba_[(b * 2 + a) * alphabet_ + l]; }

    void set_f_ab(std::size_t a, std::size_t l, Outcome o) { f_ab_[a * alphabet_ + l] = o; }
    void set_s_ab(std::size_t a, std::size_t b, std::size_t l, Outcome o) { s_ab_[(a * 2 + b) * alphabet_ + l] = o; }
    void set_f_ba(std::size_t b, std::size_t l, Outcome o) { f_ba_[b * alphabet_ + l] = o; }
    void set_s_ba(std::size_t b, std::size_t a, std::size_t l, Outcome o) { s_ba_[(b * 2 + a) * alphabet_ + l] = o; }

   private:
    std::size_t alphabet_;
    std::vector<double> weights_;
    std::vector<Outcome> f_ab_;
    std::vector<Outcome> s_ab_;
    std::vector<Outcome> f_ba_;
    std::vector<Outcome> s_ba_;
};

struct ConstraintViolation {
    /// 1: F_AB(a,l) != S_BA(b,a,l).  2: S_AB(a,b,l) != F_BA(b,l).
    int constraint = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t lambda = 0;
};

struct ConstraintReport {
    bool holds = true;
    std::vector<ConstraintViolation> violations;
};

ConstraintReport check_covariance_constraints(const StrategyQuadruple& q);

/// Throws NotReducibleError when the covariance constraints fail.
LocalModel reduce_to_local(const StrategyQuadruple& q);

BehaviorVector behavior_of(const LocalModel& model);
BehaviorVector behavior_of(const StrategyQuadruple& q, Chronology chronology);

BehaviorVector quantum_behavior(
    const TwoQubitState& state,
    const BlochSetting& a0,
    const BlochSetting& a1,
    const BlochSetting& b0,
    const BlochSetting& b1);

/// Deterministic local model number `index` in [0, 16): bit k of index>>2
/// gives f(k) and bit k of index&3 gives g(k), a set bit meaning -.
LocalModel deterministic_strategy(std::size_t index);
std::vector<BehaviorVector> enumerate_deterministic_strategies();

/// One of the 8 CHSH expressions: sign * (E00 + E01 + E10 + E11 - 2 E_minus),
/// where E_minus is the correlator `minus_term` = 2a + b.
struct FacetCertificate {
    int minus_term = 3;
    int sign = 1;
    double value = 0;

    std::string expression() const;
};

double facet_value(const BehaviorVector& p, int minus_term, int sign);

struct FacetCheck {
    bool local = true;
    double max_value = 0;
    FacetCertificate facet;
};

/// Local iff every CHSH variant is at most 2 + tolerance. For no-signaling
/// 2-2-2 behaviors these 8 inequalities are the only nontrivial facets.
FacetCheck chsh_facet_check(const BehaviorVector& p, double tolerance = kAccumulatedTolerance);

struct MembershipResult {
    bool local = false;
    /// Convex weights over `enumerate_deterministic_strategies()` when local.
    std::array<double, 16> weights{};
    /// max |p - sum_v w_v vertex_v| when local.
    double reconstruction_error = 0;
    double infeasibility = 0;
    /// A violated CHSH facet when not local.
    std::optional<FacetCertificate> certificate;
};

/// LP feasibility of p = sum_v q_v vertex_v, q >= 0, sum q = 1.
/// Throws ValidationError for malformed behaviors.
MembershipResult local_membership_lp(const BehaviorVector& p, double tolerance = kAccumulatedTolerance);

/// Largest |CHSH| variant value of p.
double max_chsh(const BehaviorVector& p);

inline constexpr std::size_t kMaxSearchAlphabet = 5;

struct SearchResult {
    std::size_t alphabet = 0;
    bool found = false;
    double best_distance = 0;
    double max_chsh = 0;
    std::uint64_t searched = 0;
    StrategyQuadruple best{1};
};

/// Enumerates every constrained quadruple with uniform weights over an
/// alphabet of size L (that is, every pair of tables F_AB, F_BA) and reports
/// the closest behavior to `target` in max-entry distance. CHSH values are
/// computed in integer arithmetic, so `max_chsh` is exact. Throws
/// SearchSpaceError unless 1 <= L <= kMaxSearchAlphabet.
SearchResult exhaustive_nogo_search(
    std::size_t alphabet, const BehaviorVector& target, double tol, unsigned workers = 1);

}  // namespace chronobell

#endif
