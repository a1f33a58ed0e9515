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

#include <gtest/gtest.h>

using namespace chronobell;

namespace {

lp::Result solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> c) {
    return lp::minimize(a, b, c);
}

}  // namespace

TEST(simplex, small_optimum) {
    // min -x - y  s.t. x + s1 = 2, y + s2 = 3
    auto r = solve({{1, 0, 1, 0}, {0, 1, 0, 1}}, {2, 3}, {-1, -1, 0, 0});
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_NEAR(r.objective, -5, 1e-12);
    EXPECT_NEAR(r.x[0], 2, 1e-12);
    EXPECT_NEAR(r.x[1], 3, 1e-12);
}

TEST(simplex, mixing_problem) {
    // min 2x + 3y  s.t. x + y = 4, x - y - s = 1
    auto r = solve({{1, 1, 0}, {1, -1, -1}}, {4, 1}, {2, 3, 0});
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_NEAR(r.objective, 8, 1e-12);
    EXPECT_NEAR(r.x[0], 4, 1e-12);
}

TEST(simplex, negative_rhs_is_handled) {
    auto r = solve({{-1, -1}}, {-1}, {1, 2});
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_NEAR(r.objective, 1, 1e-12);
}

TEST(simplex, infeasible) {
    auto r = solve({{1, 1}, {1, 1}}, {1, 2}, {0, 0});
    EXPECT_EQ(r.status, lp::Status::Infeasible);
    EXPECT_GT(r.infeasibility, 0.5);
}

TEST(simplex, unbounded) {
    // min -x  s.t. x - y = 1
    auto r = solve({{1, -1}}, {1}, {-1, 0});
    EXPECT_EQ(r.status, lp::Status::Unbounded);
}

TEST(simplex, redundant_rows) {
    auto r = solve({{1, 1, 1}, {2, 2, 2}, {1, 0, 0}}, {1, 2, 0.25}, {0, 1, 0});
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_NEAR(r.objective, 0, 1e-12);
    EXPECT_NEAR(r.x[0] + r.x[1] + r.x[2], 1, 1e-12);
    EXPECT_NEAR(r.x[0], 0.25, 1e-12);
}

TEST(simplex, degenerate_problem_terminates) {
    // Classic cycling example (Beale) in equality form with slacks.
    std::vector<std::vector<double>> a{
        {0.25, -8, -1, 9, 1, 0, 0},
        {0.5, -12, -0.5, 3, 0, 1, 0},
        {0, 0, 1, 0, 0, 0, 1},
    };
    auto r = solve(a, {0, 0, 1}, {-0.75, 20, -0.5, 6, 0, 0, 0});
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_NEAR(r.objective, -1.25, 1e-12);
}

TEST(simplex, zero_cost_feasibility) {
    auto r = solve({{1, 1, 1}}, {1}, {0, 0, 0});
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_NEAR(r.infeasibility, 0, 1e-12);
    for (double v : r.x) EXPECT_GE(v, 0);
}
