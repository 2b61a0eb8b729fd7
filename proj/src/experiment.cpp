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

#include "rismimo/experiment.hpp"
#include "rismimo/metrics.hpp"

#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <locale>
#include <sstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace rismimo
{

std::string_view to_string(OptimizerKind kind)
{
    switch (kind)
    {
    case OptimizerKind::mca:
        return "mca";
    case OptimizerKind::random:
        return "random";
    case OptimizerKind::exhaustive:
        return "exhaustive";
    case OptimizerKind::fixed:
        return "fixed";
    }
    return "?";
}

OptimizerKind optimizer_from_string(std::string_view name)
{
    if (name == "mca")
        return OptimizerKind::mca;
    if (name == "random")
        return OptimizerKind::random;
    if (name == "exhaustive")
        return OptimizerKind::exhaustive;
    if (name == "fixed" || name == "fixed-config")
        return OptimizerKind::fixed;
    throw std::invalid_argument("Unknown optimizer '" + std::string(name) +
                                "' (expected mca, random, exhaustive or fixed).");
}

void SweepSpec::validate() const
{
    if (trials < 1)
        throw std::invalid_argument("Need at least one trial per grid point.");
    if (alphas.empty() || cell_counts.empty())
        throw std::invalid_argument("Sweep grids must be non-empty.");
    for (double a : alphas)
        if (!(a >= 0.0 && a <= 1.0))
            throw std::invalid_argument("Grid alpha values must lie in [0, 1].");
    if (jobs < 1)
        throw std::invalid_argument("Need at least one worker.");
    for (std::size_t n : cell_counts)
    {
        const auto setup = point_setup(*this, alphas.front(), n);
        setup.layout.validate();
        setup.params.validate();
        if (optimizer == OptimizerKind::mca)
        {
            McaParams m = mca;
            m.phase_bits = params.phase_bits;
            m.validate(n);
        }
        if (optimizer == OptimizerKind::exhaustive && params.phase_bits * n > max_exhaustive_bits)
            throw std::invalid_argument("Exhaustive search is limited to bits * N <= 20.");
    }
}

PointSetup point_setup(const SweepSpec &spec, double alpha, std::size_t n_cells)
{
    PointSetup s{spec.layout, spec.params};
    s.params.alpha = alpha;
    s.params.n_cells = n_cells;
    s.layout.n_cells = n_cells;
    s.layout.n_tx = s.params.n_tx;
    s.layout.n_rx = s.params.n_rx;
    s.layout.d_x = s.params.cell_width;
    return s;
}

const SweepPoint &SweepResult::at(double alpha, std::size_t n_cells) const
{
    for (const auto &p : points)
        if (std::abs(p.alpha - alpha) < 1e-12 && p.n_cells == n_cells)
            return p;
    throw std::out_of_range("No sweep point at alpha=" + format_double(alpha) + ", N=" + std::to_string(n_cells));
}

namespace
{
std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
} // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices)
{
    std::uint64_t h = splitmix64(base);
    for (auto i : indices)
        h = splitmix64(h ^ splitmix64(i + 0x632BE59BD9B4E019ull));
    return h;
}

std::uint64_t trial_seed(std::uint64_t base, double alpha, std::size_t n_cells, std::size_t trial)
{
    const double a = alpha == 0.0 ? 0.0 : alpha; // folds -0.0
    return derive_seed(base, {std::bit_cast<std::uint64_t>(a), n_cells, trial});
}

Objective erank_objective(const FrozenChannel &channel)
{
    return [&channel](const PhaseConfig &c) { return effective_rank(channel.evaluate(c)); };
}

TrialResult run_trial(double alpha, std::size_t n_cells, std::uint64_t trial_seed, const SweepSpec &spec)
{
    const auto setup = point_setup(spec, alpha, n_cells);
    const Layout layout = build_layout(setup.layout);
    const SystemParams &params = setup.params;
    const unsigned bits = params.phase_bits;

    const ChannelRealization channel = realize_channel(layout, params, derive_seed(trial_seed, {0}));
    const FrozenChannel frozen(channel, params);
    const Objective objective = erank_objective(frozen);

    TrialResult r;
    r.alpha = alpha;
    r.n_cells = n_cells;
    r.seed = trial_seed;

    Rng reference_rng(derive_seed(trial_seed, {1}));
    r.erank_before = objective(random_config(n_cells, bits, reference_rng));

    Rng search_rng(derive_seed(trial_seed, {2}));
    switch (spec.optimizer)
    {
    case OptimizerKind::mca: {
        McaParams m = spec.mca;
        m.phase_bits = bits;
        auto res = run_mca(objective, n_cells, m, search_rng);
        r.config = std::move(res.config);
        r.erank_after = res.score;
        r.evaluations = res.trace.evaluations;
        break;
    }
    case OptimizerKind::random: {
        const std::size_t budget =
            spec.random_budget ? spec.random_budget : spec.mca.pool_size + (std::size_t(1) << spec.mca.swap_count);
        auto res = random_search(objective, n_cells, bits, budget, search_rng);
        r.config = std::move(res.config);
        r.erank_after = res.score;
        r.evaluations = res.evaluations;
        break;
    }
    case OptimizerKind::exhaustive: {
        auto res = exhaustive_search(objective, n_cells, bits);
        r.config = std::move(res.config);
        r.erank_after = res.score;
        r.evaluations = res.evaluations;
        break;
    }
    case OptimizerKind::fixed:
        r.config = PhaseConfig::zeros(n_cells, bits);
        r.erank_after = objective(r.config);
        r.evaluations = 1;
        break;
    }

    const ComplexMatrix h = frozen.evaluate(r.config);
    r.capacity = capacity_equal_power(h, params.snr);
    try
    {
        r.zf_rate = zf_rate(h, params.snr);
    }
    catch (const RankDeficientError &)
    {
        r.zf_rate.reset();
    }
    return r;
}

std::vector<TrialResult> run_trials(const SweepSpec &spec)
{
    spec.validate();
    const std::size_t n_alpha = spec.alphas.size();
    const std::size_t n_n = spec.cell_counts.size();
    const std::size_t total = n_alpha * n_n * spec.trials;

    std::vector<TrialResult> results(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (std::size_t task = next++; task < total; task = next++)
        {
            const std::size_t t = task % spec.trials;
            const std::size_t point = task / spec.trials;
            const std::size_t ni = point % n_n;
            const std::size_t ai = point / n_n;
            try
            {
                const auto seed = trial_seed(spec.base_seed, spec.alphas[ai], spec.cell_counts[ni], t);
                results[task] = run_trial(spec.alphas[ai], spec.cell_counts[ni], seed, spec);
                results[task].trial = t;
            }
            catch (...)
            {
                errors[task] = std::current_exception();
            }
        }
    };

    const unsigned workers = std::min<std::size_t>(spec.jobs, total);
    if (workers <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return results;
}

namespace
{
struct Moments
{
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double v)
    {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    double mean() const { return n ? sum / double(n) : std::numeric_limits<double>::quiet_NaN(); }
    double stderr_of_mean() const
    {
        if (n < 2)
            return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sum_sq - double(n) * m * m) / double(n - 1));
        return std::sqrt(var / double(n));
    }
};
} // namespace

SweepResult aggregate(const SweepSpec &spec, const std::vector<TrialResult> &trials)
{
    const std::size_t n_points = spec.alphas.size() * spec.cell_counts.size();
    if (trials.size() != n_points * spec.trials)
        throw std::invalid_argument("Trial count does not match the sweep grid.");

    SweepResult out;
    out.base_seed = spec.base_seed;
    for (std::size_t p = 0; p < n_points; ++p)
    {
        Moments erank, before, zf, cap;
        SweepPoint sp;
        sp.alpha = spec.alphas[p / spec.cell_counts.size()];
        sp.n_cells = spec.cell_counts[p % spec.cell_counts.size()];
        sp.trials = spec.trials;
        sp.erank_min = std::numeric_limits<double>::infinity();
        sp.erank_max = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < spec.trials; ++t)
        {
            const auto &r = trials[p * spec.trials + t];
            erank.add(r.erank_after);
            before.add(r.erank_before);
            cap.add(r.capacity);
            if (r.zf_rate)
                zf.add(*r.zf_rate);
            sp.erank_min = std::min(sp.erank_min, r.erank_after);
            sp.erank_max = std::max(sp.erank_max, r.erank_after);
        }
        sp.erank_mean = erank.mean();
        sp.erank_stderr = erank.stderr_of_mean();
        sp.erank_before_mean = before.mean();
        sp.zf_rate_mean = zf.mean();
        sp.zf_rate_stderr = zf.stderr_of_mean();
        sp.zf_rate_trials = zf.n;
        sp.capacity_mean = cap.mean();
        sp.capacity_stderr = cap.stderr_of_mean();
        out.points.push_back(sp);
    }
    return out;
}

SweepResult run_sweep(const SweepSpec &spec)
{
    return aggregate(spec, run_trials(spec));
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void emit_csv(const SweepResult &result, std::ostream &out)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "alpha,N,trials,erank_mean,erank_stderr,zf_rate_mean,zf_rate_stderr,capacity_mean,capacity_stderr,seed\n";
    for (const auto &p : result.points)
    {
        os << format_double(p.alpha) << ',' << p.n_cells << ',' << p.trials << ',' << format_double(p.erank_mean) << ','
           << format_double(p.erank_stderr) << ',' << format_double(p.zf_rate_mean) << ','
           << format_double(p.zf_rate_stderr) << ',' << format_double(p.capacity_mean) << ','
           << format_double(p.capacity_stderr) << ',' << result.base_seed << '\n';
    }
    out << os.str();
}

void write_csv_file(const SweepResult &result, const std::string &path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("Cannot open '" + path + "' for writing.");
    emit_csv(result, f);
    f.flush();
    if (!f)
        throw std::runtime_error("Failed writing '" + path + "'.");
}

} // namespace rismimo
