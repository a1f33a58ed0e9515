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

#include "chronobell/simplex.hpp"

#include <cmath>
#include <limits>

#include "chronobell/errors.hpp"

namespace chronobell::lp {

namespace {

// Tableau with m constraint rows and one objective row. Column `cols` is the
// right-hand side. The objective row stores reduced costs; its rhs holds the
// negated objective value.
class Tableau {
   public:
    Tableau(std::size_t m, std::size_t cols) : m_(m), cols_(cols), t_((m + 1) * (cols + 1), 0.0), basis_(m, 0) {}

    double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    std::size_t obj() const { return m_; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        double pv = at(r, c);
        for (std::size_t k = 0; k <= cols_; ++k) {
            at(r, k) /= pv;
        }
        at(r, c) = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) {
                continue;
            }
            double f = at(i, c);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t k = 0; k <= cols_; ++k) {
                at(i, k) -= f * at(r, k);
            }
            at(i, c) = 0.0;
        }
        basis_[r] = c;
    }

    // Bland's rule over the columns marked allowed. Returns false when optimal.
    // Sets `unbounded` if the entering column has no positive entry.
    bool step(const std::vector<bool>& allowed, double tol, bool& unbounded) {
        std::size_t enter = cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (allowed[c] && at(obj(), c) < -tol) {
                enter = c;
                break;
            }
        }
        if (enter == cols_) {
            return false;
        }
        std::size_t leave = m_;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m_; ++r) {
            double a = at(r, enter);
            if (a > tol) {
                double ratio = rhs(r) / a;
                if (leave == m_ || ratio < best - tol ||
                    (std::abs(ratio - best) <= tol && basis_[r] < basis_[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave == m_) {
            unbounded = true;
            return false;
        }
        pivot(leave, enter);
        return true;
    }

   private:
    std::size_t m_;
    std::size_t cols_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

Result minimize(
    std::span<const std::vector<double>> rows,
    std::span<const double> b,
    std::span<const double> c,
    const Options& options) {
    const std::size_t m = rows.size();
    const std::size_t n = c.size();
    if (b.size() != m) {
        throw ParameterError("lp: rhs length does not match row count");
    }
    for (const auto& row : rows) {
        if (row.size() != n) {
            throw ParameterError("lp: constraint row length does not match objective length");
        }
    }

    // Columns: n structural, then m artificials.
    Tableau t(m, n + m);
    for (std::size_t r = 0; r < m; ++r) {
        double s = b[r] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            t.at(r, j) = s * rows[r][j];
        }
        t.at(r, n + r) = 1.0;
        t.rhs(r) = s * b[r];
        t.basis()[r] = n + r;
    }

    Result res;
    const double tol = options.pivot_tolerance;

    // Phase one: minimize the sum of artificials. Reduced costs are -(column sums).
    for (std::size_t j = 0; j <= n + m; ++j) {
        if (j >= n && j < n + m) {
            continue;
        }
        double s = 0;
        for (std::size_t r = 0; r < m; ++r) {
            s += t.at(r, j);
        }
        t.at(t.obj(), j) = -s;
    }
    std::vector<bool> allowed(n + m, true);
    bool unbounded = false;
    while (t.step(allowed, tol, unbounded)) {
        if (++res.pivots > options.max_pivots) {
            throw Error("lp: pivot limit exceeded");
        }
    }
    res.infeasibility = std::max(0.0, -t.rhs(t.obj()));
    if (res.infeasibility > options.feasibility_tolerance) {
        res.status = Status::Infeasible;
        return res;
    }

    // Drive remaining artificials out of the basis; rows with no structural
    // pivot are redundant and stay parked on their (zero-valued) artificial.
    for (std::size_t r = 0; r < m; ++r) {
        if (t.basis()[r] < n) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(t.at(r, j)) > 1e-9) {
                t.pivot(r, j);
                ++res.pivots;
                break;
            }
        }
    }

    // Phase two over structural columns only.
    for (std::size_t j = n; j < n + m; ++j) {
        allowed[j] = false;
    }
    for (std::size_t j = 0; j <= n + m; ++j) {
        t.at(t.obj(), j) = j < n ? c[j] : 0.0;
    }
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t bj = t.basis()[r];
        double cb = bj < n ? c[bj] : 0.0;
        if (cb == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j <= n + m; ++j) {
            t.at(t.obj(), j) -= cb * t.at(r, j);
        }
    }
    unbounded = false;
    while (t.step(allowed, tol, unbounded)) {
        if (++res.pivots > options.max_pivots) {
            throw Error("lp: pivot limit exceeded");
        }
    }
    if (unbounded) {
        res.status = Status::Unbounded;
        return res;
    }

    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        if (t.basis()[r] < n) {
            res.x[t.basis()[r]] = std::max(0.0, t.rhs(r));
        }
    }
    res.objective = 0;
    for (std::size_t j = 0; j < n; ++j) {
        res.objective += c[j] * res.x[j];
    }
    res.status = Status::Optimal;
    return res;
}

}  // namespace chronobell::lp
