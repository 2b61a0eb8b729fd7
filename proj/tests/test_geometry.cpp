// SPDX-License-Identifier: Apache-2.0
//
// rismimo: RIS-assisted MIMO channel simulation and phase optimization
// Copyright (C) 2026 The rismimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "rismimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace rismimo;
using Catch::Approx;

namespace
{
LayoutSpec reference(std::size_t n_cells, ArrayAxis axis)
{
    LayoutSpec s;
    s.n_cells = n_cells;
    s.array_axis = axis;
    return s;
}
} // namespace

TEST_CASE("build_layout - reference transmit antennas along the RIS")
{
    const auto layout = build_layout(reference(16, ArrayAxis::along_ris));
    REQUIRE(layout.tx_positions.size() == 2);
    CHECK(layout.tx_positions[0].x == Approx(-0.55).margin(1e-15));
    CHECK(layout.tx_positions[0].y == Approx(-1.0).margin(1e-15));
    CHECK(layout.tx_positions[1].x == Approx(-0.45).margin(1e-15));
    CHECK(layout.tx_positions[1].y == Approx(-1.0).margin(1e-15));
    CHECK(layout.rx_positions[0].x == Approx(0.45).margin(1e-15));
    CHECK(layout.rx_positions[1].x == Approx(0.55).margin(1e-15));
}

TEST_CASE("build_layout - arrays normal to the RIS")
{
    const auto layout = build_layout(reference(16, ArrayAxis::normal_to_ris));
    CHECK(layout.tx_positions[0].x == Approx(-0.5).margin(1e-15));
    CHECK(layout.tx_positions[0].y == Approx(-1.05).margin(1e-15));
    CHECK(layout.tx_positions[1].y == Approx(-0.95).margin(1e-15));
    CHECK(layout.rx_positions[0].x == Approx(0.5).margin(1e-15));
    CHECK(layout.rx_positions[1].y == Approx(-0.95).margin(1e-15));
}

TEST_CASE("build_layout - single antenna sits at the array center")
{
    auto spec = reference(4, ArrayAxis::along_ris);
    spec.n_tx = 1;
    const auto layout = build_layout(spec);
    REQUIRE(layout.tx_positions.size() == 1);
    CHECK(layout.tx_positions[0] == Point2{-0.5, -1.0});
    CHECK(layout.tx_center == Point2{-0.5, -1.0});
}

TEST_CASE("build_layout - RIS cells span (N-1) d_x centered at the origin")
{
    const auto layout = build_layout(reference(16, ArrayAxis::normal_to_ris));
    REQUIRE(layout.ris_positions.size() == 16);
    const double half_span = 0.5 * 15 * 0.05;
    CHECK(layout.ris_positions.front().x == Approx(-half_span).margin(1e-15));
    CHECK(layout.ris_positions.back().x == Approx(half_span).margin(1e-15));
    CHECK(half_span == Approx(0.375));
    for (std::size_t i = 1; i < 16; ++i)
    {
        CHECK(distance(layout.ris_positions[i - 1], layout.ris_positions[i]) == Approx(0.05).margin(1e-15));
        CHECK(layout.ris_positions[i].y == 0.0);
    }
    CHECK(std::hypot(layout.ris_normal.x, layout.ris_normal.y) == 1.0);
    CHECK(layout.ris_normal.y < 0.0);
}

TEST_CASE("build_layout - adjacent antenna spacing")
{
    for (auto axis : {ArrayAxis::along_ris, ArrayAxis::normal_to_ris})
    {
        auto spec = reference(8, axis);
        spec.n_tx = 4;
        spec.n_rx = 3;
        spec.d_tx = 0.07;
        spec.d_rx = 0.11;
        const auto layout = build_layout(spec);
        for (std::size_t i = 1; i < 4; ++i)
            CHECK(distance(layout.tx_positions[i - 1], layout.tx_positions[i]) == Approx(0.07));
        for (std::size_t i = 1; i < 3; ++i)
            CHECK(distance(layout.rx_positions[i - 1], layout.rx_positions[i]) == Approx(0.11));
    }
}

TEST_CASE("build_layout - rejects bad specs")
{
    auto spec = reference(4, ArrayAxis::along_ris);
    spec.d_tx = 0.0;
    CHECK_THROWS_AS(build_layout(spec), std::invalid_argument);
    spec = reference(4, ArrayAxis::along_ris);
    spec.d_ris_y_tx = -1.0;
    CHECK_THROWS_AS(build_layout(spec), std::invalid_argument);
    spec = reference(0, ArrayAxis::along_ris);
    CHECK_THROWS_AS(build_layout(spec), std::invalid_argument);
    spec = reference(4, ArrayAxis::along_ris);
    spec.n_rx = 0;
    CHECK_THROWS_AS(build_layout(spec), std::invalid_argument);
    CHECK_THROWS_AS(array_axis_from_string("diagonal"), std::invalid_argument);
}

TEST_CASE("distance")
{
    CHECK(distance({0, 0}, {0, 0}) == 0.0);
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({-0.55, -1.0}, {-0.375, 0.0}) == Approx(std::hypot(0.175, 1.0)).epsilon(1e-15));
    CHECK(distance({-0.55, -1.0}, {-0.375, 0.0}) == Approx(1.01519).margin(1e-5));
}

TEST_CASE("incidence_angle")
{
    const double pi = std::numbers::pi;
    CHECK(incidence_angle({0, 0}, {0, -1}, {0, -1}) == 0.0);
    CHECK(incidence_angle({0, 0}, {0, -1}, {1, -1}) == Approx(pi / 4).epsilon(1e-15));
    CHECK(incidence_angle({0.375, 0}, {0, -1}, {-0.55, -1}) == Approx(std::atan2(0.925, 1.0)).epsilon(1e-14));
    CHECK(incidence_angle({0.375, 0}, {0, -1}, {-0.55, -1}) == Approx(0.74646).margin(1e-5));
    CHECK(incidence_angle({0, 0}, {0, -1}, {0, 2}) == Approx(pi));
    CHECK(incidence_angle({0, 0}, {0, -1}, {5, 0}) == Approx(pi / 2));
    CHECK_THROWS_AS(incidence_angle({1, 1}, {0, -1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("geometry - translation invariance of distances and angles")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i)
    {
        const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, shift{u(rng), u(rng)};
        const Point2 normal{0.0, -1.0};
        CHECK(distance(a + shift, b + shift) == Approx(distance(a, b)).epsilon(1e-12));
        CHECK(incidence_angle(a + shift, normal, b + shift) == Approx(incidence_angle(a, normal, b)).epsilon(1e-10));
    }
}

TEST_CASE("geometry - incidence angle range and normal ray")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double pi = std::numbers::pi;
    for (int i = 0; i < 500; ++i)
    {
        const Point2 cell{u(rng), 0.0};
        const Point2 ant{u(rng), u(rng)};
        const double theta = incidence_angle(cell, {0, -1}, ant);
        CHECK(theta >= 0.0);
        CHECK(theta <= pi);
        // On the normal ray: same x, below the surface.
        const Point2 on_ray{cell.x, -std::abs(u(rng)) - 0.1};
        CHECK(incidence_angle(cell, {0, -1}, on_ray) == 0.0);
    }
}

TEST_CASE("geometry - mirrored deployment gives equal tx and rx distance multisets")
{
    for (auto axis : {ArrayAxis::along_ris, ArrayAxis::normal_to_ris})
    {
        const auto layout = build_layout(reference(32, axis));
        std::vector<double> tx, rx;
        for (const auto &c : layout.ris_positions)
        {
            for (const auto &t : layout.tx_positions)
                tx.push_back(distance(t, c));
            for (const auto &r : layout.rx_positions)
                rx.push_back(distance(r, c));
        }
        std::sort(tx.begin(), tx.end());
        std::sort(rx.begin(), rx.end());
        REQUIRE(tx.size() == rx.size());
        for (std::size_t i = 0; i < tx.size(); ++i)
            CHECK(tx[i] == Approx(rx[i]).epsilon(1e-14));
    }
}
