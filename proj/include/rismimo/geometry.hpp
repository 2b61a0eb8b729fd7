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

#ifndef RISMIMO_GEOMETRY_HPP
#define RISMIMO_GEOMETRY_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace rismimo
{

/// Position in the horizontal plane, in meters.
struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }

/// Direction along which the elements of the transmit and receive arrays are spread.
///
/// `along_ris` lays the elements parallel to the RIS line (x-axis). `normal_to_ris` lays them
/// along the RIS broadside direction (y-axis), so the two arrays face each other side by side.
enum class ArrayAxis
{
    along_ris,
    normal_to_ris
};

std::string_view to_string(ArrayAxis axis);
ArrayAxis array_axis_from_string(std::string_view name); // throws std::invalid_argument

/// Distances (meters) and element counts that fix the top-view deployment.
///
/// The RIS center is the origin. The transmitter center sits at (-d_ris_x_tx, -d_ris_y_tx) and the
/// receiver center at (+d_rx_x_ris, -d_rx_y_ris).
struct LayoutSpec
{
    double d_ris_y_tx = 1.0;
    double d_ris_x_tx = 0.5;
    double d_rx_y_ris = 1.0;
    double d_rx_x_ris = 0.5;
    double d_tx = 0.1;  // transmit antenna spacing
    double d_rx = 0.1;  // receive antenna spacing
    double d_x = 0.05;  // macro unit cell width (RIS element pitch)
    std::size_t n_tx = 2;
    std::size_t n_rx = 2;
    std::size_t n_cells = 16;
    ArrayAxis array_axis = ArrayAxis::normal_to_ris;

    void validate() const; // throws std::invalid_argument
};

struct Layout
{
    std::vector<Point2> tx_positions;
    std::vector<Point2> rx_positions;
    std::vector<Point2> ris_positions;
    Point2 ris_normal{0.0, -1.0};
    Point2 tx_center;
    Point2 rx_center;
};

/// Places the RIS cells on the x-axis centered at the origin (normal -y) and both antenna arrays
/// symmetrically about their centers along `spec.array_axis`.
Layout build_layout(const LayoutSpec &spec);

double distance(Point2 a, Point2 b);

/// Angle in [0, pi] between `normal` and the direction from `cell` to `antenna`.
/// Throws std::invalid_argument when the two points coincide.
double incidence_angle(Point2 cell, Point2 normal, Point2 antenna);

} // namespace rismimo

#endif
