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

#ifndef RISMIMO_EXPERIMENT_HPP
#define RISMIMO_EXPERIMENT_HPP

#include "rismimo/channel.hpp"
#include "rismimo/geometry.hpp"
#include "rismimo/optimizer.hpp"

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rismimo
{

enum class OptimizerKind
{
    mca,
    random,
    exhaustive,
    fixed // all-zero phases, no search
};

std::string_view to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(std::string_view name); // throws std::invalid_argument

struct SweepSpec
{
    std::vector<double> alphas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<std::size_t> cell_counts{16, 32, 64};
    std::size_t trials = 1000;
    std::uint64_t base_seed = 1;
    SystemParams params; // alpha and n_cells are overwritten per grid point
    LayoutSpec layout;   // n_cells is overwritten per grid point
    McaParams mca;
    OptimizerKind optimizer = OptimizerKind::mca;
    std::size_t random_budget = 0; // 0 selects the MCA evaluation count
    unsigned jobs = 1;

    void validate() const; // throws std::invalid_argument
};

/// Layout and link parameters of one grid point, with the shared fields kept consistent.
struct PointSetup
{
    LayoutSpec layout;
    SystemParams params;
};
PointSetup point_setup(const SweepSpec &spec, double alpha, std::size_t n_cells);

struct TrialResult
{
    double alpha = 0.0;
    std::size_t n_cells = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double erank_before = 0.0; // one uniformly random configuration
    double erank_after = 0.0;  // optimized configuration
    std::optional<double> zf_rate; // empty when the optimized channel is rank deficient
    double capacity = 0.0;
    std::size_t evaluations = 0;
    PhaseConfig config;

    friend bool operator==(const TrialResult &, const TrialResult &) = default;
};

struct SweepPoint
{
    double alpha = 0.0;
    std::size_t n_cells = 0;
    std::size_t trials = 0;
    double erank_mean = 0.0;
    double erank_stderr = 0.0;
    double erank_before_mean = 0.0;
    double zf_rate_mean = 0.0;
    double zf_rate_stderr = 0.0;
    std::size_t zf_rate_trials = 0; // trials where the ZF rate is defined
    double capacity_mean = 0.0;
    double capacity_stderr = 0.0;
    double erank_min = 0.0;
    double erank_max = 0.0;
};

struct SweepResult
{
    std::vector<SweepPoint> points; // alpha-major, then N, in grid order
    std::uint64_t base_seed = 0;

    /// Throws std::out_of_range if the grid point is absent.
    const SweepPoint &at(double alpha, std::size_t n_cells) const;
};

/// Stable 64-bit mix of a base seed with a list of indices (splitmix64 finalizer chain).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices);

/// Seed of trial `trial` at grid point (alpha, n_cells). Keyed on the grid values rather than their
/// positions, so adding grid points leaves every other point's trials unchanged.
std::uint64_t trial_seed(std::uint64_t base, double alpha, std::size_t n_cells, std::size_t trial);

/// One Monte Carlo trial, deterministic given `trial_seed`. The NLoS draw, the reference random
/// configuration and the optimizer each use their own stream derived from the trial seed.
TrialResult run_trial(double alpha, std::size_t n_cells, std::uint64_t trial_seed, const SweepSpec &spec);

/// Erank objective over a frozen channel.
Objective erank_objective(const FrozenChannel &channel);

/// All trials of every grid point; `jobs` workers, reduced in trial order.
std::vector<TrialResult> run_trials(const SweepSpec &spec);
SweepResult aggregate(const SweepSpec &spec, const std::vector<TrialResult> &trials);
SweepResult run_sweep(const SweepSpec &spec);

/// CSV with header alpha,N,trials,erank_mean,erank_stderr,zf_rate_mean,zf_rate_stderr,
/// capacity_mean,capacity_stderr,seed. Numbers use the shortest round-trip form.
void emit_csv(const SweepResult &result, std::ostream &os);
void write_csv_file(const SweepResult &result, const std::string &path); // throws std::runtime_error

/// Shortest round-trip, locale-independent text for a double.
std::string format_double(double v);

} // namespace rismimo

#endif
