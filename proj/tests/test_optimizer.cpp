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

#include "rismimo/metrics.hpp"
#include "rismimo/optimizer.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <numbers>

using namespace rismimo;
using Catch::Approx;

namespace
{
constexpr double pi = std::numbers::pi;

struct ErankFixture
{
    SystemParams params;
    ChannelRealization channel;
    FrozenChannel frozen;

    ErankFixture(std::size_t n_cells, double alpha, std::uint64_t seed)
        : params(make_params(n_cells, alpha)), channel(realize_channel(build_layout(make_layout(n_cells)), params, seed)),
          frozen(channel, params)
    {
    }

    Objective objective() const
    {
        return [this](const PhaseConfig &c) { return effective_rank(frozen.evaluate(c)); };
    }

    static SystemParams make_params(std::size_t n, double alpha)
    {
        SystemParams p;
        p.n_cells = n;
        p.alpha = alpha;
        return p;
    }
    static LayoutSpec make_layout(std::size_t n)
    {
        LayoutSpec s;
        s.n_cells = n;
        return s;
    }
};

double count_zeros(const PhaseConfig &c)
{
    return double(std::count(c.symbols().begin(), c.symbols().end(), 0u));
}

// Independent enumeration of every crossover: build the child cell by cell from the mask.
std::vector<std::vector<std::uint32_t>> crossover_oracle(const std::vector<std::uint32_t> &a,
                                                         const std::vector<std::uint32_t> &b, std::size_t k)
{
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask)
    {
        std::vector<std::uint32_t> child;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            const bool from_b = i < k && (mask & (std::size_t(1) << i)) != 0;
            child.push_back(from_b ? b[i] : a[i]);
        }
        out.push_back(child);
    }
    return out;
}
} // namespace

TEST_CASE("random_config - 1-bit alphabet")
{
    Rng rng(1);
    for (int i = 0; i < 100; ++i)
    {
        const auto c = random_config(16, 1, rng);
        REQUIRE(c.size() == 16);
        for (double phi : c.phases())
            CHECK((phi == 0.0 || phi == Approx(pi)));
    }
}

TEST_CASE("random_config - uniform symbol frequencies")
{
    Rng rng(2);
    std::array<std::size_t, 4> counts{};
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i)
        ++counts[random_config(1, 2, rng).symbol(0)];
    for (auto c : counts)
        CHECK(double(c) / double(draws) == Approx(0.25).margin(0.01));
}

TEST_CASE("random_config - reproducible from the seed")
{
    Rng a(3), b(3);
    CHECK(random_config(64, 2, a) == random_config(64, 2, b));
    CHECK_THROWS_AS(random_config(0, 1, a), std::invalid_argument);
}

TEST_CASE("select_parents - examples")
{
    const std::vector<double> s1{1.2, 1.9, 1.5};
    auto p = select_parents(s1);
    CHECK(p.best == 1);
    CHECK(p.second == 2);

    const std::vector<double> s2{2.0, 2.0, 1.0};
    p = select_parents(s2);
    CHECK(p.best == 0);
    CHECK(p.second == 1);

    const std::vector<double> s3{1.0, 3.0, 3.0, 3.0};
    p = select_parents(s3);
    CHECK(p.best == 1);
    CHECK(p.second == 2);

    CHECK_THROWS_AS(select_parents(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("select_parents - matches a full stable sort")
{
    Rng rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> coarse(0, 20);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> scores(160);
        for (auto &s : scores)
            s = trial % 2 ? u(rng) : double(coarse(rng)); // odd trials include many ties
        std::vector<std::size_t> idx(scores.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
        const auto p = select_parents(scores);
        CHECK(p.best == idx[0]);
        CHECK(p.second == idx[1]);
    }
}

TEST_CASE("cross_swap - two leading cells")
{
    const PhaseConfig zeros(1, {0, 0, 0, 0}), ones(1, {1, 1, 1, 1});
    const auto kids = cross_swap(zeros, ones, 2);
    REQUIRE(kids.size() == 4);
    CHECK(kids[0].symbols() == std::vector<std::uint32_t>{0, 0, 0, 0});
    CHECK(kids[1].symbols() == std::vector<std::uint32_t>{1, 0, 0, 0});
    CHECK(kids[2].symbols() == std::vector<std::uint32_t>{0, 1, 0, 0});
    CHECK(kids[3].symbols() == std::vector<std::uint32_t>{1, 1, 0, 0});
}

TEST_CASE("cross_swap - zero swaps returns the best parent")
{
    const PhaseConfig a(2, {3, 1, 2}), b(2, {0, 0, 0});
    const auto kids = cross_swap(a, b, 0);
    REQUIRE(kids.size() == 1);
    CHECK(kids[0] == a);
}

TEST_CASE("cross_swap - full swap against an independent enumerator")
{
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial)
    {
        const std::size_t n = 3 + std::size_t(trial % 6);
        const std::size_t k = std::min<std::size_t>(n, 1 + std::size_t(trial % 5));
        const auto a = random_config(n, 2, rng);
        const auto b = random_config(n, 2, rng);
        const auto kids = cross_swap(a, b, k);
        const auto oracle = crossover_oracle(a.symbols(), b.symbols(), k);
        REQUIRE(kids.size() == oracle.size());
        for (std::size_t i = 0; i < kids.size(); ++i)
            CHECK(kids[i].symbols() == oracle[i]);
    }
    const PhaseConfig a(1, {0, 0, 0}), b(1, {1, 1, 1});
    const auto kids = cross_swap(a, b, 3);
    REQUIRE(kids.size() == 8);
    CHECK(kids.back() == b);
    CHECK(kids.front() == a);
}

TEST_CASE("cross_swap - shifted window")
{
    const PhaseConfig a(1, {0, 0, 0, 0, 0}), b(1, {1, 1, 1, 1, 1});
    const auto kids = cross_swap(a, b, 2, 2);
    REQUIRE(kids.size() == 4);
    CHECK(kids[1].symbols() == std::vector<std::uint32_t>{0, 0, 1, 0, 0});
    CHECK(kids[3].symbols() == std::vector<std::uint32_t>{0, 0, 1, 1, 0});
    CHECK_THROWS_AS(cross_swap(a, b, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(cross_swap(a, PhaseConfig(1, {0, 0}), 1), std::invalid_argument);
    CHECK_THROWS_AS(cross_swap(a, PhaseConfig(2, {0, 0, 0, 0, 0}), 1), std::invalid_argument);
}

TEST_CASE("run_mca - never below the best pool member")
{
    McaParams mp;
    mp.pool_size = 8;
    mp.swap_count = 4;
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        Rng rng(seed), pool_rng(seed);
        const auto result = run_mca(count_zeros, 4, mp, rng);
        double pool_best = 0.0;
        for (int i = 0; i < 8; ++i)
            pool_best = std::max(pool_best, count_zeros(random_config(4, 1, pool_rng)));
        CHECK(result.score >= pool_best);
        CHECK(result.trace.best_parent_score == pool_best);
        CHECK(result.score == count_zeros(result.config));
        CHECK(result.trace.offspring_scores[0] == result.trace.best_parent_score);
    }
}

TEST_CASE("run_mca - evaluation count")
{
    const ErankFixture fx(16, 0.5, 1);
    McaParams mp;
    Rng rng(6);
    std::size_t calls = 0;
    const Objective counted = [&](const PhaseConfig &c)
    {
        ++calls;
        return fx.objective()(c);
    };
    const auto result = run_mca(counted, 16, mp, rng);
    CHECK(result.trace.evaluations == 176);
    CHECK(calls == 176);
    CHECK(mp.evaluations() == 176);
    CHECK(result.trace.offspring_scores.size() == 16);
    CHECK(result.trace.rounds == 1);
}

TEST_CASE("run_mca - multiple rounds keep improving or hold")
{
    const ErankFixture fx(32, 0.7, 2);
    for (std::size_t rounds : {1u, 2u, 4u})
    {
        McaParams mp;
        mp.rounds = rounds;
        Rng rng(7);
        std::size_t calls = 0;
        const Objective counted = [&](const PhaseConfig &c)
        {
            ++calls;
            return fx.objective()(c);
        };
        const auto result = run_mca(counted, 32, mp, rng);
        CHECK(calls == 160 + rounds * 16);
        CHECK(result.trace.evaluations == calls);
        CHECK(result.trace.rounds == rounds);
        CHECK(result.score >= result.trace.best_parent_score);
    }
    McaParams one, four;
    four.rounds = 4;
    Rng r1(7), r4(7);
    CHECK(run_mca(fx.objective(), 32, four, r4).score >= run_mca(fx.objective(), 32, one, r1).score);
}

TEST_CASE("run_mca - random window")
{
    McaParams mp;
    mp.pool_size = 16;
    mp.swap_count = 3;
    mp.random_window = true;
    const PhaseConfig target(1, {1, 0, 1, 1, 0, 0, 1, 0, 1, 1});
    const Objective match = [&](const PhaseConfig &c)
    {
        double s = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            s += c.symbol(i) == target.symbol(i);
        return s;
    };
    Rng rng(8);
    const auto result = run_mca(match, 10, mp, rng);
    CHECK(result.score >= result.trace.best_parent_score);
    CHECK(result.trace.evaluations == 16 + 8);
}

TEST_CASE("run_mca - parameter validation")
{
    McaParams mp;
    Rng rng(9);
    mp.swap_count = 5;
    CHECK_THROWS_AS(run_mca(count_zeros, 4, mp, rng), std::invalid_argument);
    mp.swap_count = 2;
    mp.pool_size = 1;
    CHECK_THROWS_AS(run_mca(count_zeros, 4, mp, rng), std::invalid_argument);
    mp.pool_size = 4;
    mp.rounds = 0;
    CHECK_THROWS_AS(run_mca(count_zeros, 4, mp, rng), std::invalid_argument);
}

TEST_CASE("run_mca - deterministic per seed")
{
    const ErankFixture fx(16, 0.5, 3);
    McaParams mp;
    Rng a(10), b(10);
    const auto ra = run_mca(fx.objective(), 16, mp, a);
    const auto rb = run_mca(fx.objective(), 16, mp, b);
    CHECK(ra.config == rb.config);
    CHECK(ra.score == rb.score);
}

TEST_CASE("exhaustive_search - single cell favoring pi")
{
    const Objective favor_pi = [](const PhaseConfig &c) { return c.phase(0) > 3.0 ? 1.0 : 0.0; };
    const auto r = exhaustive_search(favor_pi, 1, 1);
    CHECK(r.config.symbols() == std::vector<std::uint32_t>{1});
    CHECK(r.evaluations == 2);
}

TEST_CASE("exhaustive_search - two cells against a manual table")
{
    // Scores for [s0, s1]: 00 -> 0.3, 01 -> 0.9, 10 -> 0.5, 11 -> 0.1
    const Objective table = [](const PhaseConfig &c)
    {
        const double t[2][2] = {{0.3, 0.9}, {0.5, 0.1}};
        return t[c.symbol(0)][c.symbol(1)];
    };
    const auto r = exhaustive_search(table, 2, 1);
    CHECK(r.config.symbols() == std::vector<std::uint32_t>{0, 1});
    CHECK(r.score == 0.9);
    CHECK(r.evaluations == 4);
}

TEST_CASE("exhaustive_search - ties resolve to the lexicographically smallest")
{
    const Objective flat = [](const PhaseConfig &) { return 1.0; };
    CHECK(exhaustive_search(flat, 5, 1).config == PhaseConfig::zeros(5, 1));
    const Objective last_two = [](const PhaseConfig &c) { return c.symbol(2) == 3 ? 1.0 : 0.0; };
    const auto r = exhaustive_search(last_two, 3, 2);
    CHECK(r.config.symbols() == std::vector<std::uint32_t>{0, 0, 3});
    CHECK(r.evaluations == 64);
}

TEST_CASE("exhaustive_search - search space guard")
{
    CHECK_THROWS_AS(exhaustive_search(count_zeros, 21, 1), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_search(count_zeros, 11, 2), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_search(count_zeros, 0, 1), std::invalid_argument);
}

TEST_CASE("exhaustive_search - dominates random sampling on a frozen channel")
{
    const ErankFixture fx(8, 0.5, 4);
    const auto best = exhaustive_search(fx.objective(), 8, 1);
    CHECK(best.evaluations == 256);
    Rng rng(11);
    double sampled_max = 0.0;
    for (int i = 0; i < 10000; ++i)
        sampled_max = std::max(sampled_max, fx.objective()(random_config(8, 1, rng)));
    CHECK(best.score >= sampled_max);
    CHECK(best.score == fx.objective()(best.config));
}

TEST_CASE("random_search - contracts")
{
    const ErankFixture fx(16, 0.5, 5);

    SECTION("budget one returns the single sample")
    {
        Rng a(12), b(12);
        const auto r = random_search(fx.objective(), 16, 1, 1, a);
        CHECK(r.config == random_config(16, 1, b));
        CHECK(r.evaluations == 1);
    }
    SECTION("budget T matches the best parent of MCA")
    {
        McaParams mp;
        Rng a(13), b(13);
        const auto r = random_search(fx.objective(), 16, 1, mp.pool_size, a);
        const auto m = run_mca(fx.objective(), 16, mp, b);
        CHECK(r.score == m.trace.best_parent_score);
        CHECK(r.evaluations == 160);
    }
    SECTION("never beats exhaustive")
    {
        const ErankFixture small(8, 0.5, 6);
        const double opt = exhaustive_search(small.objective(), 8, 1).score;
        Rng a(14);
        CHECK(random_search(small.objective(), 8, 1, 512, a).score <= opt);
    }
    SECTION("zero budget")
    {
        Rng a(15);
        CHECK_THROWS_AS(random_search(fx.objective(), 16, 1, 0, a), std::invalid_argument);
    }
}

TEST_CASE("objective - repeatable on a frozen realization")
{
    const ErankFixture fx(16, 0.5, 7);
    Rng rng(16);
    for (int i = 0; i < 20; ++i)
    {
        const auto c = random_config(16, 1, rng);
        CHECK(std::abs(fx.objective()(c) - fx.objective()(c)) <= 1e-12);
    }
}
