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

#include "rismimo/optimizer.hpp"

#include <stdexcept>
#include <string>

namespace rismimo
{

void McaParams::validate(std::size_t n_cells) const
{
    if (pool_size < 2)
        throw std::invalid_argument("MCA needs a pool of at least two configurations.");
    if (swap_count < 1 || swap_count > n_cells)
        throw std::invalid_argument("Swap count must lie in [1, N].");
    if (swap_count > max_swap_count)
        throw std::invalid_argument("Swap count above " + std::to_string(max_swap_count) + " is not enumerable.");
    if (phase_bits < 1 || phase_bits > 16)
        throw std::invalid_argument("Phase bits must lie in [1, 16].");
    if (rounds < 1)
        throw std::invalid_argument("MCA needs at least one round.");
}

PhaseConfig random_config(std::size_t n_cells, unsigned bits, Rng &rng)
{
    if (n_cells == 0)
        throw std::invalid_argument("Configuration needs at least one cell.");
    if (bits < 1 || bits > 16)
        throw std::invalid_argument("Phase bits must lie in [1, 16].");
    std::uniform_int_distribution<std::uint32_t> pick(0, (1u << bits) - 1);
    std::vector<std::uint32_t> symbols(n_cells);
    for (auto &s : symbols)
        s = pick(rng);
    return PhaseConfig(bits, std::move(symbols));
}

ParentPair select_parents(std::span<const double> scores)
{
    if (scores.size() < 2)
        throw std::invalid_argument("Parent selection needs at least two configurations.");
    ParentPair p{0, 1};
    if (scores[1] > scores[0])
        p = {1, 0};
    for (std::size_t i = 2; i < scores.size(); ++i)
    {
        if (scores[i] > scores[p.best])
        {
            p.second = p.best;
            p.best = i;
        }
        else if (scores[i] > scores[p.second])
            p.second = i;
    }
    return p;
}

std::vector<PhaseConfig> cross_swap(const PhaseConfig &best, const PhaseConfig &second, std::size_t swap_count,
                                    std::size_t window_start)
{
    if (best.size() != second.size())
        throw std::invalid_argument("Parent configurations differ in length.");
    if (best.bits() != second.bits())
        throw std::invalid_argument("Parent configurations use different alphabets.");
    if (swap_count > max_swap_count)
        throw std::invalid_argument("Swap count too large to enumerate.");
    if (window_start + swap_count > best.size())
        throw std::invalid_argument("Swap window exceeds the configuration length.");

    const std::size_t count = std::size_t(1) << swap_count;
    std::vector<PhaseConfig> offspring;
    offspring.reserve(count);
    for (std::size_t pattern = 0; pattern < count; ++pattern)
    {
        PhaseConfig child = best;
        for (std::size_t j = 0; j < swap_count; ++j)
            if ((pattern >> j) & 1u)
                child.set_symbol(window_start + j, second.symbol(window_start + j));
        offspring.push_back(std::move(child));
    }
    return offspring;
}

McaResult run_mca(const Objective &objective, std::size_t n_cells, const McaParams &params, Rng &rng)
{
    params.validate(n_cells);

    std::vector<PhaseConfig> pool;
    pool.reserve(params.pool_size);
    for (std::size_t t = 0; t < params.pool_size; ++t)
        pool.push_back(random_config(n_cells, params.phase_bits, rng));

    std::vector<double> scores;
    scores.reserve(pool.size());
    for (const auto &c : pool)
        scores.push_back(objective(c));

    McaResult result;
    result.trace.evaluations = pool.size();

    for (std::size_t round = 0; round < params.rounds; ++round)
    {
        std::size_t window = 0;
        if (params.random_window)
            window = std::uniform_int_distribution<std::size_t>(0, n_cells - params.swap_count)(rng);

        const ParentPair parents = select_parents(scores);
        // Copies; the pool grows below.
        const PhaseConfig best = pool[parents.best];
        const PhaseConfig second = pool[parents.second];
        result.trace.best_parent_score = scores[parents.best];
        result.trace.second_parent_score = scores[parents.second];

        auto offspring = cross_swap(best, second, params.swap_count, window);
        std::vector<double> child_scores;
        child_scores.reserve(offspring.size());
        for (const auto &c : offspring)
            child_scores.push_back(objective(c));
        result.trace.evaluations += offspring.size();

        std::size_t chosen = 0;
        for (std::size_t i = 1; i < child_scores.size(); ++i)
            if (child_scores[i] > child_scores[chosen])
                chosen = i;

        result.config = offspring[chosen];
        result.score = child_scores[chosen];
        result.trace.chosen_offspring = chosen;
        result.trace.offspring_scores = child_scores;
        result.trace.rounds = round + 1;

        if (round + 1 < params.rounds)
        {
            pool.insert(pool.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
            scores.insert(scores.end(), child_scores.begin(), child_scores.end());
        }
    }
    return result;
}

SearchResult exhaustive_search(const Objective &objective, std::size_t n_cells, unsigned bits)
{
    if (n_cells == 0)
        throw std::invalid_argument("Configuration needs at least one cell.");
    if (bits < 1 || bits * n_cells > max_exhaustive_bits)
        throw std::invalid_argument("Exhaustive search space 2^" + std::to_string(bits * n_cells) +
                                    " exceeds the 2^" + std::to_string(max_exhaustive_bits) + " limit.");

    const std::uint32_t levels = 1u << bits;
    PhaseConfig current = PhaseConfig::zeros(n_cells, bits);
    SearchResult best{current, objective(current), 1};

    // Odometer over cells with cell 0 most significant, i.e. lexicographic order.
    while (true)
    {
        std::size_t i = n_cells;
        while (i > 0)
        {
            --i;
            const std::uint32_t s = current.symbol(i) + 1;
            if (s < levels)
            {
                current.set_symbol(i, s);
                break;
            }
            current.set_symbol(i, 0);
            if (i == 0)
                return best;
        }
        const double score = objective(current);
        ++best.evaluations;
        if (score > best.score)
        {
            best.score = score;
            best.config = current;
        }
    }
}

SearchResult random_search(const Objective &objective, std::size_t n_cells, unsigned bits, std::size_t budget,
                           Rng &rng)
{
    if (budget < 1)
        throw std::invalid_argument("Random search needs a budget of at least one.");
    std::vector<PhaseConfig> samples;
    samples.reserve(budget);
    for (std::size_t i = 0; i < budget; ++i)
        samples.push_back(random_config(n_cells, bits, rng));

    SearchResult best{samples[0], objective(samples[0]), 1};
    for (std::size_t i = 1; i < budget; ++i)
    {
        const double score = objective(samples[i]);
        ++best.evaluations;
        if (score > best.score)
        {
            best.score = score;
            best.config = samples[i];
        }
    }
    return best;
}

} // namespace rismimo
