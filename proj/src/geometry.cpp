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

#include "rismimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rismimo
{

std::string_view to_string(ArrayAxis axis)
{
    return axis == ArrayAxis::along_ris ? "along_ris" : "normal_to_ris";
}

ArrayAxis array_axis_from_string(std::string_view name)
{
    if (name == "along_ris")
        return ArrayAxis::along_ris;
    if (name == "normal_to_ris")
        return ArrayAxis::normal_to_ris;
    throw std::invalid_argument("Unknown array axis '" + std::string(name) + "' (expected along_ris or normal_to_ris).");
}

void LayoutSpec::validate() const
{
    const double dists[] = {d_ris_y_tx, d_ris_x_tx, d_rx_y_ris, d_rx_x_ris, d_tx, d_rx, d_x};
    for (double d : dists)
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("Layout distances must be positive and finite.");
    if (n_tx == 0 || n_rx == 0 || n_cells == 0)
        throw std::invalid_argument("Element counts must be at least 1.");
}

namespace
{
std::vector<Point2> linear_array(Point2 center, Point2 axis, double spacing, std::size_t count)
{
    std::vector<Point2> out;
    out.reserve(count);
    const double mid = 0.5 * double(count - 1);
    for (std::size_t i = 0; i < count; ++i)
    {
        const double offset = (double(i) - mid) * spacing;
        out.push_back({center.x + offset * axis.x, center.y + offset * axis.y});
    }
    return out;
}
} // namespace

Layout build_layout(const LayoutSpec &spec)
{
    spec.validate();

    const Point2 along_x{1.0, 0.0};
    const Point2 antenna_axis = spec.array_axis == ArrayAxis::along_ris ? along_x : Point2{0.0, 1.0};

    Layout layout;
    layout.ris_normal = {0.0, -1.0};
    layout.tx_center = {-spec.d_ris_x_tx, -spec.d_ris_y_tx};
    layout.rx_center = {spec.d_rx_x_ris, -spec.d_rx_y_ris};
    layout.ris_positions = linear_array({0.0, 0.0}, along_x, spec.d_x, spec.n_cells);
    layout.tx_positions = linear_array(layout.tx_center, antenna_axis, spec.d_tx, spec.n_tx);
    layout.rx_positions = linear_array(layout.rx_center, antenna_axis, spec.d_rx, spec.n_rx);

    // Antenna arrays may not touch each other or the RIS line.
    std::vector<Point2> all = layout.tx_positions;
    all.insert(all.end(), layout.rx_positions.begin(), layout.rx_positions.end());
    all.insert(all.end(), layout.ris_positions.begin(), layout.ris_positions.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (distance(all[i], all[j]) <= 0.0)
                throw std::invalid_argument("Layout places two elements at the same position.");
    return layout;
}

double distance(Point2 a, Point2 b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

double incidence_angle(Point2 cell, Point2 normal, Point2 antenna)
{
    const Point2 v = antenna - cell;
    const double len = std::hypot(v.x, v.y);
    if (len <= 0.0)
        throw std::invalid_argument("Incidence angle undefined for coincident cell and antenna.");
    const double cross = normal.x * v.y - normal.y * v.x;
    const double dot = normal.x * v.x + normal.y * v.y;
    return std::clamp(std::atan2(std::abs(cross), dot), 0.0, std::numbers::pi);
}

} // namespace rismimo
