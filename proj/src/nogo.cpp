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

#include "chronobell/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "chronobell/errors.hpp"
#include "chronobell/parallel.hpp"
#include "chronobell/simplex.hpp"

namespace chronobell {

namespace {

std::vector<double> checked_weights(std::size_t alphabet, std::vector<double> w) {
    if (alphabet == 0) {
        throw ParameterError("lambda alphabet must be nonempty");
    }
    if (w.size() != alphabet) {
        throw ParameterError("weight count must equal the lambda alphabet size");
    }
    double s = 0;
    for (double x : w) {
        if (!(x >= 0.0)) {
            throw ParameterError("lambda weights must be nonnegative");
        }
        s += x;
    }
    if (std::abs(s - 1.0) > kExactTolerance) {
        throw ParameterError("lambda weights must sum to 1");
    }
    return w;
}

std::vector<double> uniform_weights(std::size_t alphabet) {
    if (alphabet == 0) {
        throw ParameterError("lambda alphabet must be nonempty");
    }
    return std::vector<double>(alphabet, 1.0 / static_cast<double>(alphabet));
}

}  // namespace

double correlator(const BehaviorVector& p, std::size_t a, std::size_t b) {
    return p[behavior_index(a, b, Outcome::Plus, Outcome::Plus)] -
           p[behavior_index(a, b, Outcome::Plus, Outcome::Minus)] -
           p[behavior_index(a, b, Outcome::Minus, Outcome::Plus)] +
           p[behavior_index(a, b, Outcome::Minus, Outcome::Minus)];
}

double behavior_defect(const BehaviorVector& p) {
    double d = 0;
    for (double x : p) {
        if (!std::isfinite(x)) {
            return std::numeric_limits<double>::infinity();
        }
        d = std::max(d, -x);
    }
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            double s = 0;
            for (Outcome x : kOutcomes) {
                for (Outcome y : kOutcomes) {
                    s += p[behavior_index(a, b, x, y)];
                }
            }
            d = std::max(d, std::abs(s - 1.0));
        }
    }
    auto ma = [&](std::size_t a, std::size_t b, Outcome x) {
        return p[behavior_index(a, b, x, Outcome::Plus)] + p[behavior_index(a, b, x, Outcome::Minus)];
    };
    auto mb = [&](std::size_t a, std::size_t b, Outcome y) {
        return p[behavior_index(a, b, Outcome::Plus, y)] + p[behavior_index(a, b, Outcome::Minus, y)];
    };
    for (Outcome o : kOutcomes) {
        for (std::size_t k = 0; k < 2; ++k) {
            d = std::max(d, std::abs(ma(k, 0, o) - ma(k, 1, o)));
            d = std::max(d, std::abs(mb(0, k, o) - mb(1, k, o)));
        }
    }
    return d;
}

void validate_behavior(const BehaviorVector& p, double tol) {
    double d = behavior_defect(p);
    if (!(d <= tol)) {
        throw ValidationError(
            "behavior violates normalization, no-signaling or positivity by " + std::to_string(d));
    }
}

LocalModel::LocalModel(std::size_t alphabet) : LocalModel(alphabet, uniform_weights(alphabet)) {}

LocalModel::LocalModel(std::size_t alphabet, std::vector<double> weights)
    : alphabet_(alphabet),
      weights_(checked_weights(alphabet, std::move(weights))),
      f_(2 * alphabet, Outcome::Plus),
      g_(2 * alphabet, Outcome::Plus) {}

StrategyQuadruple::StrategyQuadruple(std::size_t alphabet) : StrategyQuadruple(alphabet, uniform_weights(alphabet)) {}

StrategyQuadruple::StrategyQuadruple(std::size_t alphabet, std::vector<double> weights)
    : alphabet_(alphabet),
      weights_(checked_weights(alphabet, std::move(weights))),
      f_ab_(2 * alphabet, Outcome::Plus),
      s_ab_(4 * alphabet, Outcome::Plus),
      f_ba_(2 * alphabet, Outcome::Plus),
      s_ba_(4 * alphabet, Outcome::Plus) {}

StrategyQuadruple StrategyQuadruple::from_local(const LocalModel& model) {
    StrategyQuadruple q(model.alphabet(), model.weights());
    for (std::size_t l = 0; l < model.alphabet(); ++l) {
        for (std::size_t a = 0; a < 2; ++a) {
            q.set_f_ab(a, l, model.f(a, l));
            for (std::size_t b = 0; b < 2; ++b) {
                q.set_s_ba(b, a, l, model.f(a, l));
                q.set_s_ab(a, b, l, model.g(b, l));
            }
        }
        for (std::size_t b = 0; b < 2; ++b) {
            q.set_f_ba(b, l, model.g(b, l));
        }
    }
    return q;
}

ConstraintReport check_covariance_constraints(const StrategyQuadruple& q) {
    ConstraintReport rep;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t l = 0; l < q.alphabet(); ++l) {
                if (q.f_ab(a, l) != q.s_ba(b, a, l)) {
                    rep.violations.push_back({1, a, b, l});
                }
                if (q.s_ab(a, b, l) != q.f_ba(b, l)) {
                    rep.violations.push_back({2, a, b, l});
                }
            }
        }
    }
    rep.holds = rep.violations.empty();
    return rep;
}

LocalModel reduce_to_local(const StrategyQuadruple& q) {
    auto rep = check_covariance_constraints(q);
    if (!rep.holds) {
        const auto& v = rep.violations.front();
        throw NotReducibleError(
            "covariance constraint " + std::to_string(v.constraint) + " fails at a=" + std::to_string(v.a) +
            " b=" + std::to_string(v.b) + " lambda=" + std::to_string(v.lambda));
    }
    LocalModel m(q.alphabet(), q.weights());
    for (std::size_t l = 0; l < q.alphabet(); ++l) {
        for (std::size_t k = 0; k < 2; ++k) {
            m.set_f(k, l, q.f_ab(k, l));
            m.set_g(k, l, q.f_ba(k, l));
        }
    }
    return m;
}

BehaviorVector behavior_of(const LocalModel& model) {
    BehaviorVector p{};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t l = 0; l < model.alphabet(); ++l) {
                p[behavior_index(a, b, model.f(a, l), model.g(b, l))] += model.weights()[l];
            }
        }
    }
    return p;
}

BehaviorVector behavior_of(const StrategyQuadruple& q, Chronology chronology) {
    BehaviorVector p{};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t l = 0; l < q.alphabet(); ++l) {
                Outcome alpha = chronology == Chronology::AB ? q.f_ab(a, l) : q.s_ba(b, a, l);
                Outcome beta = chronology == Chronology::AB ? q.s_ab(a, b, l) : q.f_ba(b, l);
                p[behavior_index(a, b, alpha, beta)] += q.weights()[l];
            }
        }
    }
    return p;
}

BehaviorVector quantum_behavior(
    const TwoQubitState& state,
    const BlochSetting& a0,
    const BlochSetting& a1,
    const BlochSetting& b0,
    const BlochSetting& b1) {
    const std::array<const BlochSetting*, 2> as{&a0, &a1};
    const std::array<const BlochSetting*, 2> bs{&b0, &b1};
    BehaviorVector p{};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            auto jd = joint_distribution(state, *as[a], *bs[b], Chronology::AB);
            for (Outcome x : kOutcomes) {
                for (Outcome y : kOutcomes) {
                    p[behavior_index(a, b, x, y)] = jd.at(x, y);
                }
            }
        }
    }
    return p;
}

LocalModel deterministic_strategy(std::size_t index) {
    if (index >= 16) {
        throw ParameterError("deterministic strategy index must be below 16");
    }
    LocalModel m(1);
    for (std::size_t k = 0; k < 2; ++k) {
        m.set_f(k, 0, ((index >> 2) >> k) & 1 ? Outcome::Minus : Outcome::Plus);
        m.set_g(k, 0, ((index & 3) >> k) & 1 ? Outcome::Minus : Outcome::Plus);
    }
    return m;
}

std::vector<BehaviorVector> enumerate_deterministic_strategies() {
    std::vector<BehaviorVector> out;
    out.reserve(16);
    for (std::size_t v = 0; v < 16; ++v) {
        out.push_back(behavior_of(deterministic_strategy(v)));
    }
    return out;
}

std::string FacetCertificate::expression() const {
    static const char* names[4] = {"E00", "E01", "E10", "E11"};
    std::string s = sign < 0 ? "-(" : "";
    for (int k = 0; k < 4; ++k) {
        if (k > 0 || k == minus_term) {
            s += k == minus_term ? "-" : "+";
        }
        s += names[k];
    }
    if (sign < 0) {
        s += ")";
    }
    return s;
}

double facet_value(const BehaviorVector& p, int minus_term, int sign) {
    double total = 0;
    double minus = 0;
    for (int k = 0; k < 4; ++k) {
        double e = correlator(p, static_cast<std::size_t>(k / 2), static_cast<std::size_t>(k % 2));
        total += e;
        if (k == minus_term) {
            minus = e;
        }
    }
    return sign * (total - 2 * minus);
}

FacetCheck chsh_facet_check(const BehaviorVector& p, double tolerance) {
    FacetCheck out;
    out.max_value = -std::numeric_limits<double>::infinity();
    for (int sign : {1, -1}) {
        for (int k = 0; k < 4; ++k) {
            double v = facet_value(p, k, sign);
            if (v > out.max_value) {
                out.max_value = v;
                out.facet = {k, sign, v};
            }
        }
    }
    out.local = out.max_value <= 2.0 + tolerance;
    return out;
}

double max_chsh(const BehaviorVector& p) { return chsh_facet_check(p).max_value; }

MembershipResult local_membership_lp(const BehaviorVector& p, double tolerance) {
    validate_behavior(p, tolerance);
    const auto vertices = enumerate_deterministic_strategies();

    std::vector<std::vector<double>> rows(17, std::vector<double>(16, 0.0));
    std::vector<double> rhs(17, 0.0);
    for (std::size_t k = 0; k < 16; ++k) {
        for (std::size_t v = 0; v < 16; ++v) {
            rows[k][v] = vertices[v][k];
        }
        rhs[k] = p[k];
    }
    std::fill(rows[16].begin(), rows[16].end(), 1.0);
    rhs[16] = 1.0;
    const std::vector<double> cost(16, 0.0);

    lp::Options opts;
    opts.feasibility_tolerance = tolerance;
    auto res = lp::minimize(rows, rhs, cost, opts);

    MembershipResult out;
    out.infeasibility = res.infeasibility;
    out.local = res.status == lp::Status::Optimal;
    if (out.local) {
        for (std::size_t v = 0; v < 16; ++v) {
            out.weights[v] = res.x[v];
        }
        for (std::size_t k = 0; k < 16; ++k) {
            double r = 0;
            for (std::size_t v = 0; v < 16; ++v) {
                r += out.weights[v] * vertices[v][k];
            }
            out.reconstruction_error = std::max(out.reconstruction_error, std::abs(r - p[k]));
        }
    } else {
        out.certificate = chsh_facet_check(p, tolerance).facet;
    }
    return out;
}

SearchResult exhaustive_nogo_search(std::size_t alphabet, const BehaviorVector& target, double tol, unsigned workers) {
    if (alphabet < 1 || alphabet > kMaxSearchAlphabet) {
        throw SearchSpaceError(
            "search alphabet must be between 1 and " + std::to_string(kMaxSearchAlphabet) + ", got " +
            std::to_string(alphabet));
    }
    if (!(tol >= 0.0)) {
        throw ParameterError("search tolerance must be nonnegative");
    }
    validate_behavior(target);

    const std::size_t L = alphabet;
    const unsigned table_bits = static_cast<unsigned>(2 * L);
    const std::uint64_t table_mask = (std::uint64_t{1} << table_bits) - 1;
    const std::uint64_t total = std::uint64_t{1} << (2 * table_bits);
    const double inv = 1.0 / static_cast<double>(L);

    struct Partial {
        double best_distance = std::numeric_limits<double>::infinity();
        std::uint64_t best_index = 0;
        long max_chsh_num = std::numeric_limits<long>::min();
    };

    const unsigned chunks = detail::chunk_count(total, workers);
    std::vector<Partial> partial(chunks);
    detail::for_each_chunk(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        Partial& part = partial[w];
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const std::uint64_t fab = idx & table_mask;
            const std::uint64_t fba = idx >> table_bits;
            // counts[a][b][alpha][beta] over the alphabet
            std::array<int, 16> counts{};
            for (std::size_t l = 0; l < L; ++l) {
                for (std::size_t a = 0; a < 2; ++a) {
                    std::size_t x = (fab >> (a * L + l)) & 1;
                    for (std::size_t b = 0; b < 2; ++b) {
                        std::size_t y = (fba >> (b * L + l)) & 1;
                        ++counts[((a * 2 + b) * 2 + x) * 2 + y];
                    }
                }
            }
            std::array<long, 4> e{};
            long sum = 0;
            for (std::size_t k = 0; k < 4; ++k) {
                e[k] = counts[4 * k] - counts[4 * k + 1] - counts[4 * k + 2] + counts[4 * k + 3];
                sum += e[k];
            }
            for (std::size_t k = 0; k < 4; ++k) {
                part.max_chsh_num = std::max(part.max_chsh_num, std::abs(sum - 2 * e[k]));
            }
            double dist = 0;
            for (std::size_t k = 0; k < 16; ++k) {
                dist = std::max(dist, std::abs(counts[k] * inv - target[k]));
            }
            if (dist < part.best_distance) {
                part.best_distance = dist;
                part.best_index = idx;
            }
        }
    });

    SearchResult out;
    out.alphabet = L;
    out.searched = total;
    out.best_distance = std::numeric_limits<double>::infinity();
    long max_num = std::numeric_limits<long>::min();
    std::uint64_t best_index = 0;
    for (const auto& part : partial) {
        if (part.best_distance < out.best_distance) {
            out.best_distance = part.best_distance;
            best_index = part.best_index;
        }
        max_num = std::max(max_num, part.max_chsh_num);
    }
    out.max_chsh = static_cast<double>(max_num) / static_cast<double>(L);
    out.found = out.best_distance <= tol;

    LocalModel m(L);
    for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t k = 0; k < 2; ++k) {
            m.set_f(k, l, ((best_index & table_mask) >> (k * L + l)) & 1 ? Outcome::Minus : Outcome::Plus);
            m.set_g(k, l, ((best_index >> table_bits) >> (k * L + l)) & 1 ? Outcome::Minus : Outcome::Plus);
        }
    }
    out.best = StrategyQuadruple::from_local(m);
    return out;
}

}  // namespace chronobell
