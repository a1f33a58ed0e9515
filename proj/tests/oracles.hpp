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

// Test-only reference computations. Nothing here calls the library's
// measurement, sampling or hit code paths; they are rebuilt from explicit
// matrices so the tests compare two independent routes.

#ifndef CHRONOBELL_TESTS_ORACLES_HPP
#define CHRONOBELL_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;
using Mat4 = std::array<std::array<C, 4>, 4>;
using Vec4 = std::array<C, 4>;

inline Mat2 pauli_projector(double nx, double ny, double nz, int sign) {
    const C i{0, 1};
    Mat2 sx{{{0, 1}, {1, 0}}};
    Mat2 sy{{{0, -i}, {i, 0}}};
    Mat2 sz{{{1, 0}, {0, -1}}};
    Mat2 out{};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            C id = r == c ? 1.0 : 0.0;
            out[r][c] = 0.5 * (id + double(sign) * (nx * sx[r][c] + ny * sy[r][c] + nz * sz[r][c]));
        }
    }
    return out;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return out;
}

inline Mat2 identity2() { return Mat2{{{1, 0}, {0, 1}}}; }

inline double expectation(const Mat4& m, const Vec4& psi) {
    C s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += std::conj(psi[i]) * m[i][j] * psi[j];
    return s.real();
}

struct Dir {
    double x, y, z;
};

/// <psi| P_alpha(a) (x) P_beta(b) |psi>, alpha/beta = +1/-1.
inline double joint(const Vec4& psi, Dir a, int alpha, Dir b, int beta) {
    return expectation(kron(pauli_projector(a.x, a.y, a.z, alpha), pauli_projector(b.x, b.y, b.z, beta)), psi);
}

inline double marginal_a(const Vec4& psi, Dir a, int alpha) {
    return expectation(kron(pauli_projector(a.x, a.y, a.z, alpha), identity2()), psi);
}

inline double marginal_b(const Vec4& psi, Dir b, int beta) {
    return expectation(kron(identity2(), pauli_projector(b.x, b.y, b.z, beta)), psi);
}

/// Exact area of {(l1, l2) in [0,1)^2 : AB and BA inverse-CDF samplers give
/// different (alpha, beta)}. Both samplers are piecewise constant on the grid
/// cut by every threshold, so the area is a finite sum over cells.
inline double exact_divergence(const Vec4& psi, Dir a, Dir b) {
    auto pa = marginal_a(psi, a, +1);
    auto pb = marginal_b(psi, b, +1);
    auto cond = [](double joint_plus, double marginal) { return marginal > 0 ? joint_plus / marginal : 0.0; };
    // P(beta=+ | alpha) and P(alpha=+ | beta)
    double b_given_ap = cond(joint(psi, a, +1, b, +1), marginal_a(psi, a, +1));
    double b_given_am = cond(joint(psi, a, -1, b, +1), marginal_a(psi, a, -1));
    double a_given_bp = cond(joint(psi, a, +1, b, +1), marginal_b(psi, b, +1));
    double a_given_bm = cond(joint(psi, a, +1, b, -1), marginal_b(psi, b, -1));

    auto ab = [&](double l1, double l2) {
        int alpha = l1 < pa ? 1 : -1;
        int beta = l2 < (alpha == 1 ? b_given_ap : b_given_am) ? 1 : -1;
        return std::pair{alpha, beta};
    };
    auto ba = [&](double l1, double l2) {
        int beta = l1 < pb ? 1 : -1;
        int alpha = l2 < (beta == 1 ? a_given_bp : a_given_bm) ? 1 : -1;
        return std::pair{alpha, beta};
    };
    std::set<double> cuts1{0.0, 1.0, std::clamp(pa, 0.0, 1.0), std::clamp(pb, 0.0, 1.0)};
    std::set<double> cuts2{0.0, 1.0};
    for (double t : {b_given_ap, b_given_am, a_given_bp, a_given_bm}) cuts2.insert(std::clamp(t, 0.0, 1.0));
    std::vector<double> c1(cuts1.begin(), cuts1.end());
    std::vector<double> c2(cuts2.begin(), cuts2.end());
    double area = 0;
    for (std::size_t i = 0; i + 1 < c1.size(); ++i) {
        for (std::size_t j = 0; j + 1 < c2.size(); ++j) {
            double m1 = 0.5 * (c1[i] + c1[i + 1]);
            double m2 = 0.5 * (c2[j] + c2[j + 1]);
            if (ab(m1, m2) != ba(m1, m2)) area += (c1[i + 1] - c1[i]) * (c2[j + 1] - c2[j]);
        }
    }
    return area;
}

inline Vec4 random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vec4 v;
    double s = 0;
    for (auto& c : v) {
        c = {n(rng), n(rng)};
        s += std::norm(c);
    }
    for (auto& c : v) c /= std::sqrt(s);
    return v;
}

inline Dir random_dir(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    double x = n(rng), y = n(rng), z = n(rng);
    double r = std::sqrt(x * x + y * y + z * z);
    return {x / r, y / r, z / r};
}

/// Periodic Gaussian kernel rebuilt from scratch: G[x][y] before and after
/// column normalization.
inline std::vector<std::vector<double>> kernel(std::size_t n, double sigma, double spacing) {
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            double d = std::min<double>(std::abs(double(x) - double(y)), double(n) - std::abs(double(x) - double(y)));
            g[x][y] = std::exp(-d * d * spacing * spacing / (4 * sigma * sigma));
        }
    for (std::size_t y = 0; y < n; ++y) {
        double s = 0;
        for (std::size_t x = 0; x < n; ++x) s += g[x][y] * g[x][y];
        for (std::size_t x = 0; x < n; ++x) g[x][y] /= std::sqrt(s);
    }
    return g;
}

/// ||(G_x1 (x) G_x2) psi||^2 for a two-particle amplitude vector.
inline double joint_flash(const std::vector<C>& psi, const std::vector<std::vector<double>>& g, std::size_t x1,
                          std::size_t x2) {
    std::size_t n = g.size();
    double s = 0;
    for (std::size_t y1 = 0; y1 < n; ++y1)
        for (std::size_t y2 = 0; y2 < n; ++y2) s += std::norm(g[x1][y1] * g[x2][y2] * psi[y1 * n + y2]);
    return s;
}

/// Exact area of the lambda square on which the two hit orders realize
/// different (x1, x2), using the joint flash law only.
inline double exact_flash_divergence(const std::vector<C>& psi, const std::vector<std::vector<double>>& g) {
    std::size_t n = g.size();
    std::vector<std::vector<double>> j(n, std::vector<double>(n));
    std::vector<double> p1(n, 0), p2(n, 0);
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            j[x1][x2] = joint_flash(psi, g, x1, x2);
            p1[x1] += j[x1][x2];
            p2[x2] += j[x1][x2];
        }
    auto cumulative = [](const std::vector<double>& p) {
        std::vector<double> c(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) c[i + 1] = c[i] + p[i];
        return c;
    };
    auto c1 = cumulative(p1);
    auto c2 = cumulative(p2);
    double area = 0;
    // first coordinate interval from order 1-then-2 (x1 from l1) crossed with
    // order 2-then-1 (x2 from l1): l1 in [c1[a], c1[a+1]) and [c2[b], c2[b+1])
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double lo = std::max(c1[a], c2[b]);
            double hi = std::min(c1[a + 1], c2[b + 1]);
            if (hi <= lo) continue;
            // order 12: x1 = a; x2 ~ j[a][.] / p1[a] with l2
            // order 21: x2 = b; x1 ~ j[.][b] / p2[b] with l2
            std::vector<double> cond12(n), cond21(n);
            for (std::size_t k = 0; k < n; ++k) {
                cond12[k] = p1[a] > 0 ? j[a][k] / p1[a] : 0;
                cond21[k] = p2[b] > 0 ? j[k][b] / p2[b] : 0;
            }
            auto d12 = cumulative(cond12);
            auto d21 = cumulative(cond21);
            double same = 0;
            // realized pairs coincide iff (a, x2) == (x1, b): x2 == b and x1 == a
            double lo2 = std::max(d12[b], d21[a]);
            double hi2 = std::min(d12[b + 1], d21[a + 1]);
            if (hi2 > lo2) same = hi2 - lo2;
            area += (hi - lo) * (1.0 - same);
        }
    }
    return area;
}

}  // namespace oracle

#endif
