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

#include "rismimo/cli.hpp"
#include "rismimo/config.hpp"
#include "rismimo/metrics.hpp"
#include "rismimo/units.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <locale>
#include <sstream>

namespace rismimo
{

SweepSpec resolve_spec(const SweepOverrides &o)
{
    SweepSpec spec;
    if (!o.config_path.empty())
        spec = load_sweep_config(o.config_path);
    if (o.seed)
        spec.base_seed = *o.seed;
    if (o.jobs)
        spec.jobs = *o.jobs;
    if (o.trials)
        spec.trials = *o.trials;
    if (o.rounds)
        spec.mca.rounds = *o.rounds;
    if (o.alpha)
        apply_setting(spec, "alpha", *o.alpha);
    if (o.n_cells)
        apply_setting(spec, "n_cells", *o.n_cells);
    if (o.optimizer)
        apply_setting(spec, "optimizer", *o.optimizer);
    if (o.raw_eq1)
        spec.params.mixing = Mixing::raw_eq1;
    try
    {
        spec.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    return spec;
}

int cmd_sweep(const SweepOverrides &overrides, const std::string &out_path, std::ostream &out, std::ostream &err)
{
    SweepSpec spec;
    try
    {
        spec = resolve_spec(overrides);
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    }
    err << "# resolved sweep\n" << describe(spec);

    try
    {
        const auto result = run_sweep(spec);
        if (out_path.empty())
            emit_csv(result, out);
        else
            write_csv_file(result, out_path);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

namespace
{
std::string zf_text(const ComplexMatrix &h, double rho)
{
    try
    {
        return format_double(zf_rate(h, rho));
    }
    catch (const RankDeficientError &)
    {
        return "undefined";
    }
}
} // namespace

int cmd_optimize(const SweepOverrides &overrides, std::ostream &out, std::ostream &err)
{
    SweepSpec spec;
    try
    {
        spec = resolve_spec(overrides);
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    }
    err << "# resolved run\n" << describe(spec);

    const double alpha = spec.alphas.front();
    const std::size_t n_cells = spec.cell_counts.front();
    if (spec.alphas.size() > 1 || spec.cell_counts.size() > 1)
        err << "note: optimize uses the first grid point (alpha=" << format_double(alpha) << ", N=" << n_cells << ")\n";
    if (alpha == 0.0)
        err << "warning: alpha = 0, the reflection phases do not affect the channel\n";

    try
    {
        const auto setup = point_setup(spec, alpha, n_cells);
        const Layout layout = build_layout(setup.layout);
        const SystemParams &params = setup.params;
        const std::uint64_t seed = spec.base_seed;
        const ChannelRealization channel = realize_channel(layout, params, derive_seed(seed, {0}));
        const FrozenChannel frozen(channel, params);
        const Objective objective = erank_objective(frozen);
        Rng rng(derive_seed(seed, {2}));

        PhaseConfig config;
        std::optional<McaTrace> trace;
        std::size_t evaluations = 0;
        switch (spec.optimizer)
        {
        case OptimizerKind::mca: {
            McaParams m = spec.mca;
            m.phase_bits = params.phase_bits;
            auto r = run_mca(objective, n_cells, m, rng);
            config = r.config;
            evaluations = r.trace.evaluations;
            trace = r.trace;
            break;
        }
        case OptimizerKind::random: {
            const std::size_t budget =
                spec.random_budget ? spec.random_budget : spec.mca.pool_size + (std::size_t(1) << spec.mca.swap_count);
            auto r = random_search(objective, n_cells, params.phase_bits, budget, rng);
            config = r.config;
            evaluations = r.evaluations;
            break;
        }
        case OptimizerKind::exhaustive: {
            auto r = exhaustive_search(objective, n_cells, params.phase_bits);
            config = r.config;
            evaluations = r.evaluations;
            break;
        }
        case OptimizerKind::fixed:
            config = PhaseConfig::zeros(n_cells, params.phase_bits);
            evaluations = 1;
            break;
        }

        const ComplexMatrix h = frozen.evaluate(config);
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os << "config =";
        for (auto s : config.symbols())
            os << ' ' << s;
        os << '\n';
        os << "erank = " << format_double(effective_rank(h)) << '\n';
        os << "zf_rate = " << zf_text(h, params.snr) << '\n';
        os << "capacity = " << format_double(capacity_equal_power(h, params.snr)) << '\n';
        os << "evaluations = " << evaluations << '\n';
        if (trace)
        {
            os << "best_parent_erank = " << format_double(trace->best_parent_score) << '\n';
            os << "second_parent_erank = " << format_double(trace->second_parent_score) << '\n';
            os << "chosen_offspring = " << trace->chosen_offspring << '\n';
            os << "offspring = " << trace->offspring_scores.size() << '\n';
            os << "rounds = " << trace->rounds << '\n';
        }
        out << os.str();
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------------------------

namespace
{
CheckResult near(std::string name, double got, double want, double tol)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(10);
    os << "got " << got << ", expected " << want << " +/- " << tol;
    return {std::move(name), std::abs(got - want) <= tol, os.str()};
}

ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    ComplexMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto &row : rows)
    {
        Eigen::Index c = 0;
        for (double v : row)
            m(r, c++) = v;
        ++r;
    }
    return m;
}
} // namespace

std::vector<CheckResult> run_crosschecks()
{
    std::vector<CheckResult> out;
    out.push_back(near("erank(I2) = 2", effective_rank(ComplexMatrix::Identity(2, 2)), 2.0, 1e-12));
    out.push_back(near("erank(diag(1,0)) = 1", effective_rank(real_matrix({{1, 0}, {0, 0}})), 1.0, 1e-12));
    out.push_back(near("erank(diag(3,1)) closed form", effective_rank(real_matrix({{3, 0}, {0, 1}})),
                       std::exp(0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0)), 1e-4));
    {
        const auto s = singular_values(real_matrix({{1, 1}, {0, 1}})).values;
        const double phi = 0.5 * (1.0 + std::sqrt(5.0));
        out.push_back(near("golden-ratio singular values", std::abs(s[0] - phi) + std::abs(s[1] - 1.0 / phi), 0.0, 1e-12));
    }
    out.push_back(near("zf_rate(diag(2,1), 10)", zf_rate(real_matrix({{2, 0}, {0, 1}}), 10.0),
                       std::log2(41.0) + std::log2(11.0), 1e-12));
    out.push_back(near("capacity(diag(3,1), 10)", capacity_equal_power(real_matrix({{3, 0}, {0, 1}}), 10.0),
                       std::log2(91.0) + std::log2(11.0), 1e-12));
    {
        const double a[] = {db_to_linear(26.6), db_to_linear(27.1)};
        out.push_back(near("measured rate, 26.6/27.1 dB streams", rate_from_stream_snrs(a), 17.7, 0.2));
        const double e[] = {db_to_linear(30.2), db_to_linear(30.4)};
        out.push_back(near("measured rate, 30.2/30.4 dB streams", rate_from_stream_snrs(e), 20.1, 0.2));
    }
    {
        // Closed-form cascade power against a Monte Carlo estimate on the default deployment.
        SweepSpec spec;
        const auto setup = point_setup(spec, 0.5, 16);
        const Layout layout = build_layout(setup.layout);
        const auto ris_tx = build_H_ris_tx(layout, setup.params);
        const auto rx_ris = build_H_rx_ris(layout, setup.params);
        Rng rng(7);
        const double exact = cascade_power(ris_tx, rx_ris);
        const double mc = empirical_cascade_power(ris_tx, rx_ris, 1, 4000, rng);
        out.push_back(near("cascade power closed form vs Monte Carlo (relative)", mc / exact, 1.0, 0.05));
    }
    {
        // MCA against the exhaustive optimum on 8 one-bit cells.
        SweepSpec spec;
        McaParams mca;
        mca.pool_size = 32;
        mca.swap_count = 4;
        std::size_t close = 0;
        bool ordered = true;
        for (std::size_t t = 0; t < 10; ++t)
        {
            const std::uint64_t seed = trial_seed(spec.base_seed, 0.5, 8, t);
            const auto setup = point_setup(spec, 0.5, 8);
            const Layout layout = build_layout(setup.layout);
            const auto channel = realize_channel(layout, setup.params, derive_seed(seed, {0}));
            const FrozenChannel frozen(channel, setup.params);
            const auto objective = erank_objective(frozen);
            const auto best = exhaustive_search(objective, 8, 1);
            Rng rng(derive_seed(seed, {2}));
            const auto res = run_mca(objective, 8, mca, rng);
            Rng pool_rng(derive_seed(seed, {2}));
            const auto pool_best = random_search(objective, 8, 1, mca.pool_size, pool_rng);
            if (res.score >= 0.95 * best.score)
                ++close;
            if (!(best.score >= res.score && res.score >= pool_best.score))
                ordered = false;
        }
        out.push_back({"exhaustive >= MCA >= pool best (N=8, 10 seeds)", ordered,
                       std::to_string(close) + "/10 seeds within 95% of the optimum"});
    }
    return out;
}

int cmd_crosscheck(std::ostream &out, std::ostream &err)
{
    std::vector<CheckResult> checks;
    try
    {
        checks = run_crosschecks();
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    bool all = true;
    for (const auto &c : checks)
    {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
        all = all && c.passed;
    }
    return all ? exit_ok : exit_runtime;
}

// ---------------------------------------------------------------------------------------------

ComplexMatrix parse_matrix(std::istream &in)
{
    std::vector<std::vector<Complex>> rows;
    std::string line;
    while (std::getline(in, line))
    {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        ls.imbue(std::locale::classic());
        std::vector<Complex> row;
        std::string token;
        while (ls >> token)
        {
            const auto comma = token.find(',');
            try
            {
                std::size_t used = 0;
                const std::string re_text = token.substr(0, comma);
                const double re = std::stod(re_text, &used);
                if (used != re_text.size())
                    throw std::invalid_argument(token);
                double im = 0.0;
                if (comma != std::string::npos)
                {
                    const std::string im_text = token.substr(comma + 1);
                    im = std::stod(im_text, &used);
                    if (used != im_text.size())
                        throw std::invalid_argument(token);
                }
                row.emplace_back(re, im);
            }
            catch (const std::logic_error &)
            {
                throw std::invalid_argument("Bad matrix entry '" + token + "'.");
            }
        }
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::invalid_argument("Matrix has no rows.");
    for (const auto &r : rows)
        if (r.size() != rows.front().size())
            throw std::invalid_argument("Matrix rows differ in length.");
    ComplexMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(Eigen::Index(r), Eigen::Index(c)) = rows[r][c];
    return m;
}

namespace
{
ComplexMatrix read_matrix(const std::string &path)
{
    if (path == "-")
        return parse_matrix(std::cin);
    std::ifstream f(path);
    if (!f)
        throw ConfigError("Cannot read matrix file '" + path + "'.");
    return parse_matrix(f);
}
} // namespace

int cmd_erank(const std::string &matrix_path, std::ostream &out, std::ostream &err)
{
    ComplexMatrix h;
    try
    {
        h = read_matrix(matrix_path);
    }
    catch (const std::exception &e)
    {
        err << "input error: " << e.what() << '\n';
        return exit_usage;
    }
    try
    {
        const auto spectrum = singular_values(h);
        out << "erank = " << format_double(effective_rank(spectrum)) << '\n';
        out << "singular_values =";
        for (double s : spectrum.values)
            out << ' ' << format_double(s);
        out << '\n';
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

int cmd_rates(const std::optional<std::string> &snr_db_list, const std::optional<std::string> &matrix_path,
              double rho_db, std::ostream &out, std::ostream &err)
{
    if (!snr_db_list && !matrix_path)
    {
        err << "rates needs --snr-db or --matrix\n";
        return exit_usage;
    }
    try
    {
        if (snr_db_list)
        {
            std::vector<double> snrs;
            for (double db : parse_real_list(*snr_db_list))
                snrs.push_back(db_to_linear(db));
            out << "measured_rate = " << format_double(rate_from_stream_snrs(snrs)) << '\n';
        }
        if (matrix_path)
        {
            const ComplexMatrix h = read_matrix(*matrix_path);
            const double rho = db_to_linear(rho_db);
            out << "zf_rate = " << zf_text(h, rho) << '\n';
            out << "capacity = " << format_double(capacity_equal_power(h, rho)) << '\n';
        }
    }
    catch (const ConfigError &e)
    {
        err << "input error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::invalid_argument &e)
    {
        err << "input error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------------------------

namespace
{
void add_sweep_flags(CLI::App *cmd, SweepOverrides &o)
{
    cmd->add_option("--config", o.config_path, "Flat key = value configuration file");
    cmd->add_option("--seed", o.seed, "Base seed (trial seed for optimize)");
    cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", o.alpha, "Comma-separated power ratios");
    cmd->add_option("--n-cells", o.n_cells, "Comma-separated RIS sizes");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per grid point");
    cmd->add_option("--optimizer", o.optimizer, "mca | random | exhaustive | fixed");
    cmd->add_option("--rounds", o.rounds, "MCA cross-swapping rounds");
    cmd->add_flag("--raw-eq1", o.raw_eq1, "Mix the unnormalized RIS and direct terms");
}
} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"RIS-assisted MIMO channel simulation and effective-rank phase optimization", "rismimo"};
    app.require_subcommand(1);

    SweepOverrides sweep_opts;
    std::string out_path;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep over alpha and N, CSV output");
    add_sweep_flags(sweep, sweep_opts);
    sweep->add_option("--out", out_path, "CSV destination (standard output if omitted)");

    SweepOverrides opt_opts;
    auto *optimize = app.add_subcommand("optimize", "Optimize one frozen channel realization");
    add_sweep_flags(optimize, opt_opts);

    std::string erank_matrix;
    auto *erank = app.add_subcommand("erank", "Effective rank of a matrix read from a file ('-' for stdin)");
    erank->add_option("--matrix", erank_matrix, "Matrix file")->required();

    std::optional<std::string> snr_db;
    std::optional<std::string> rates_matrix;
    double rho_db = 50.0;
    auto *rates = app.add_subcommand("rates", "Rate from stream SNRs, or ZF rate and capacity of a matrix");
    rates->add_option("--snr-db", snr_db, "Comma-separated post-equalization stream SNRs in dB");
    rates->add_option("--matrix", rates_matrix, "Matrix file");
    rates->add_option("--rho-db", rho_db, "Transmit SNR in dB for --matrix");

    auto *crosscheck = app.add_subcommand("crosscheck", "Run the built-in oracle checks");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*sweep)
            return cmd_sweep(sweep_opts, out_path, out, err);
        if (*optimize)
            return cmd_optimize(opt_opts, out, err);
        if (*erank)
            return cmd_erank(erank_matrix, out, err);
        if (*rates)
            return cmd_rates(snr_db, rates_matrix, rho_db, out, err);
        if (*crosscheck)
            return cmd_crosscheck(out, err);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_usage;
}

} // namespace rismimo
