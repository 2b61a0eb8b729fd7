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

#ifndef RISMIMO_OPTIMIZER_HPP
#define RISMIMO_OPTIMIZER_HPP

#include "rismimo/channel.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rismimo
{

/// Score of a phase configuration, higher is better. Must be deterministic for the duration of a search.
using Objective = std::function<double(const PhaseConfig &)>;

inline constexpr std::size_t max_swap_count = 20;
inline constexpr unsigned max_exhaustive_bits = 20;

struct McaParams
{
    std::size_t pool_size = 160; // random initial configurations
    std::size_t swap_count = 4;  // leading cells whose phases are cross-swapped
    unsigned phase_bits = 1;
    std::size_t rounds = 1;
    // Swap a uniformly placed window of swap_count cells instead of the leading ones.
    bool random_window = false;

    void validate(std::size_t n_cells) const; // throws std::invalid_argument
    std::size_t evaluations() const { return pool_size + rounds * (std::size_t(1) << swap_count); }
};

struct McaTrace
{
    double best_parent_score = 0.0;   // parents of the final round
    double second_parent_score = 0.0;
    std::vector<double> offspring_scores; // final round, in pattern order
    std::size_t chosen_offspring = 0;
    std::size_t evaluations = 0;
    std::size_t rounds = 0;
};

struct SearchResult
{
    PhaseConfig config;
    double score = 0.0;
    std::size_t evaluations = 0;
};

struct McaResult
{
    PhaseConfig config;
    double score = 0.0;
    McaTrace trace;
};

PhaseConfig random_config(std::size_t n_cells, unsigned bits, Rng &rng);

struct ParentPair
{
    std::size_t best = 0;
    std::size_t second = 0;
};

/// Indices of the highest and second-highest scores; ties go to the lower index.
ParentPair select_parents(std::span<const double> scores);

/// All 2^swap_count crossovers of two parents. Offspring p takes cell (window_start + j) from
/// `second` when bit j of p is set and from `best` otherwise; every other cell comes from `best`.
/// Pattern 0 therefore reproduces `best`.
std::vector<PhaseConfig> cross_swap(const PhaseConfig &best, const PhaseConfig &second, std::size_t swap_count,
                                    std::size_t window_start = 0);

/// Maximum cross-swapping search: score pool_size random configurations, cross-swap the top two,
/// and return the best offspring. With rounds > 1 the offspring join the pool and parent selection
/// repeats.
McaResult run_mca(const Objective &objective, std::size_t n_cells, const McaParams &params, Rng &rng);

/// Global optimum over all 2^(bits N) configurations, ties to the lexicographically smallest.
/// Throws std::invalid_argument when bits * N exceeds max_exhaustive_bits.
SearchResult exhaustive_search(const Objective &objective, std::size_t n_cells, unsigned bits);

/// Best of `budget` random configurations, drawn in the same order run_mca draws its pool.
SearchResult random_search(const Objective &objective, std::size_t n_cells, unsigned bits, std::size_t budget,
                           Rng &rng);

} // namespace rismimo

#endif
