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

#include "rismimo/config.hpp"
#include "rismimo/units.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <locale>
#include <map>
#include <sstream>
#include <type_traits>

namespace rismimo
{

namespace
{
std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_real(std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError("Expected a real number, got '" + std::string(text) + "'.");
    return v;
}

std::uint64_t parse_u64(std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ConfigError("Expected a non-negative integer, got '" + std::string(text) + "'.");
    return v;
}

bool parse_bool(std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw ConfigError("Expected a boolean, got '" + std::string(text) + "'.");
}

template <typename T, typename F> std::vector<T> parse_list(std::string_view text, F parse_one)
{
    std::vector<T> out;
    text = trim(text);
    if (text.empty())
        throw ConfigError("Empty list.");
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        out.push_back(parse_one(item));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

template <typename E, typename F> E parse_enum(std::string_view text, F from_string)
{
    try
    {
        return from_string(trim(text));
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
}

using Setter = std::function<void(SweepSpec &, std::string_view)>;

const std::vector<std::pair<std::string, Setter>> &setters()
{
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"alpha", [](SweepSpec &s, std::string_view v) { s.alphas = parse_real_list(v); }},
        {"n_cells", [](SweepSpec &s, std::string_view v) { s.cell_counts = parse_count_list(v); }},
        {"trials", [](SweepSpec &s, std::string_view v) { s.trials = parse_u64(v); }},
        {"seed", [](SweepSpec &s, std::string_view v) { s.base_seed = parse_u64(v); }},
        {"jobs", [](SweepSpec &s, std::string_view v) { s.jobs = unsigned(parse_u64(v)); }},
        {"optimizer",
         [](SweepSpec &s, std::string_view v) { s.optimizer = parse_enum<OptimizerKind>(v, optimizer_from_string); }},
        {"mixing", [](SweepSpec &s, std::string_view v) { s.params.mixing = parse_enum<Mixing>(v, mixing_from_string); }},
        {"frequency_hz", [](SweepSpec &s, std::string_view v) { s.params.frequency_hz = parse_real(v); }},
        {"gain_tx_db", [](SweepSpec &s, std::string_view v) { s.params.gain_tx = db_to_linear(parse_real(v)); }},
        {"gain_rx_db", [](SweepSpec &s, std::string_view v) { s.params.gain_rx = db_to_linear(parse_real(v)); }},
        {"rician_k_db", [](SweepSpec &s, std::string_view v) { s.params.rician_k = db_to_linear(parse_real(v)); }},
        {"snr_db", [](SweepSpec &s, std::string_view v) { s.params.snr = db_to_linear(parse_real(v)); }},
        {"cell_width", [](SweepSpec &s, std::string_view v) { s.params.cell_width = parse_real(v); }},
        {"cell_length", [](SweepSpec &s, std::string_view v) { s.params.cell_length = parse_real(v); }},
        {"phase_bits", [](SweepSpec &s, std::string_view v) { s.params.phase_bits = unsigned(parse_u64(v)); }},
        {"pattern_exponent", [](SweepSpec &s, std::string_view v) { s.params.pattern_exponent = parse_real(v); }},
        {"dual_pattern", [](SweepSpec &s, std::string_view v) { s.params.dual_pattern = parse_bool(v); }},
        {"n_tx", [](SweepSpec &s, std::string_view v) { s.params.n_tx = parse_u64(v); }},
        {"n_rx", [](SweepSpec &s, std::string_view v) { s.params.n_rx = parse_u64(v); }},
        {"d_ris_y_tx", [](SweepSpec &s, std::string_view v) { s.layout.d_ris_y_tx = parse_real(v); }},
        {"d_ris_x_tx", [](SweepSpec &s, std::string_view v) { s.layout.d_ris_x_tx = parse_real(v); }},
        {"d_rx_y_ris", [](SweepSpec &s, std::string_view v) { s.layout.d_rx_y_ris = parse_real(v); }},
        {"d_rx_x_ris", [](SweepSpec &s, std::string_view v) { s.layout.d_rx_x_ris = parse_real(v); }},
        {"d_tx", [](SweepSpec &s, std::string_view v) { s.layout.d_tx = parse_real(v); }},
        {"d_rx", [](SweepSpec &s, std::string_view v) { s.layout.d_rx = parse_real(v); }},
        {"array_axis",
         [](SweepSpec &s, std::string_view v) { s.layout.array_axis = parse_enum<ArrayAxis>(v, array_axis_from_string); }},
        {"pool_size", [](SweepSpec &s, std::string_view v) { s.mca.pool_size = parse_u64(v); }},
        {"swap_count", [](SweepSpec &s, std::string_view v) { s.mca.swap_count = parse_u64(v); }},
        {"rounds", [](SweepSpec &s, std::string_view v) { s.mca.rounds = parse_u64(v); }},
        {"random_window", [](SweepSpec &s, std::string_view v) { s.mca.random_window = parse_bool(v); }},
        {"random_budget", [](SweepSpec &s, std::string_view v) { s.random_budget = parse_u64(v); }},
    };
    return table;
}
} // namespace

std::vector<double> parse_real_list(std::string_view text)
{
    return parse_list<double>(text, parse_real);
}

std::vector<std::size_t> parse_count_list(std::string_view text)
{
    return parse_list<std::size_t>(text, [](std::string_view v) { return std::size_t(parse_u64(v)); });
}

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto &[name, _] : setters())
            k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_setting(SweepSpec &spec, std::string_view key, std::string_view value)
{
    key = trim(key);
    for (const auto &[name, set] : setters())
        if (name == key)
        {
            try
            {
                set(spec, value);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError("Key '" + name + "': " + e.what());
            }
            return;
        }
    throw ConfigError("Unknown configuration key '" + std::string(key) + "'.");
}

SweepSpec parse_sweep_config(std::istream &in, const std::string &origin, SweepSpec base)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != view.npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == view.npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'.");
        try
        {
            apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

SweepSpec load_sweep_config(const std::string &path, SweepSpec base)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("Cannot read configuration file '" + path + "'.");
    return parse_sweep_config(f, path, std::move(base));
}

std::string describe(const SweepSpec &spec)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    auto list = [](const auto &v) {
        std::string o;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if constexpr (std::is_floating_point_v<std::decay_t<decltype(v[i])>>)
                o += (i ? "," : "") + format_double(v[i]);
            else
                o += (i ? "," : "") + std::to_string(v[i]);
        }
        return o;
    };
    const auto f = [](double x) { return format_double(x); };
    const auto &p = spec.params;
    const auto &l = spec.layout;
    os << "alpha = " << list(spec.alphas) << '\n'
       << "n_cells = " << list(spec.cell_counts) << '\n'
       << "trials = " << spec.trials << '\n'
       << "seed = " << spec.base_seed << '\n'
       << "jobs = " << spec.jobs << '\n'
       << "optimizer = " << to_string(spec.optimizer) << '\n'
       << "mixing = " << to_string(p.mixing) << '\n'
       << "frequency_hz = " << f(p.frequency_hz) << '\n'
       << "wavelength_m = " << f(p.wavelength()) << '\n'
       << "gain_tx = " << f(p.gain_tx) << "  (" << f(linear_to_db(p.gain_tx)) << " dB)\n"
       << "gain_rx = " << f(p.gain_rx) << "  (" << f(linear_to_db(p.gain_rx)) << " dB)\n"
       << "rician_k = " << f(p.rician_k) << "  (" << f(linear_to_db(p.rician_k)) << " dB)\n"
       << "snr = " << f(p.snr) << "  (" << f(linear_to_db(p.snr)) << " dB)\n"
       << "cell_width = " << f(p.cell_width) << '\n'
       << "cell_length = " << f(p.cell_length) << '\n'
       << "phase_bits = " << p.phase_bits << '\n'
       << "pattern_exponent = " << f(p.pattern_exponent) << '\n'
       << "dual_pattern = " << (p.dual_pattern ? "true" : "false") << '\n'
       << "n_tx = " << p.n_tx << '\n'
       << "n_rx = " << p.n_rx << '\n'
       << "d_ris_y_tx = " << f(l.d_ris_y_tx) << '\n'
       << "d_ris_x_tx = " << f(l.d_ris_x_tx) << '\n'
       << "d_rx_y_ris = " << f(l.d_rx_y_ris) << '\n'
       << "d_rx_x_ris = " << f(l.d_rx_x_ris) << '\n'
       << "d_tx = " << f(l.d_tx) << '\n'
       << "d_rx = " << f(l.d_rx) << '\n'
       << "array_axis = " << to_string(l.array_axis) << '\n'
       << "pool_size = " << spec.mca.pool_size << '\n'
       << "swap_count = " << spec.mca.swap_count << '\n'
       << "rounds = " << spec.mca.rounds << '\n'
       << "random_window = " << (spec.mca.random_window ? "true" : "false") << '\n'
       << "random_budget = " << spec.random_budget << '\n';
    return os.str();
}

} // namespace rismimo
