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

#ifndef RISMIMO_CLI_HPP
#define RISMIMO_CLI_HPP

#include "rismimo/channel.hpp"
#include "rismimo/experiment.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rismimo
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_runtime = 1;
inline constexpr int exit_usage = 2;

/// Flags shared by `sweep` and `optimize`. Set flags override the config file.
struct SweepOverrides
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> jobs;
    std::optional<std::string> alpha;
    std::optional<std::string> n_cells;
    std::optional<std::size_t> trials;
    std::optional<std::string> optimizer;
    std::optional<std::size_t> rounds;
    bool raw_eq1 = false;
};

/// Config file (if any) with overrides applied and validated. Throws ConfigError.
SweepSpec resolve_spec(const SweepOverrides &overrides);

/// Runs the sweep and writes CSV to `out_path`, or to `out` when the path is empty.
int cmd_sweep(const SweepOverrides &overrides, const std::string &out_path, std::ostream &out, std::ostream &err);

/// Optimizes one frozen realization (first alpha, first N, trial seed = --seed) and prints the result.
int cmd_optimize(const SweepOverrides &overrides, std::ostream &out, std::ostream &err);

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> run_crosschecks();
int cmd_crosscheck(std::ostream &out, std::ostream &err);

/// Matrix text: one row per line, entries `re` or `re,im` separated by whitespace; `#` comments.
ComplexMatrix parse_matrix(std::istream &in);

int cmd_erank(const std::string &matrix_path, std::ostream &out, std::ostream &err);
int cmd_rates(const std::optional<std::string> &snr_db_list, const std::optional<std::string> &matrix_path,
              double rho_db, std::ostream &out, std::ostream &err);

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace rismimo

#endif
