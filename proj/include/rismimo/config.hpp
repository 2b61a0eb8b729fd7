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

#ifndef RISMIMO_CONFIG_HPP
#define RISMIMO_CONFIG_HPP

#include "rismimo/experiment.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rismimo
{

/// Malformed configuration: unknown key, unparsable value, unreadable file, or invalid spec.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Applies one `key = value` setting. Keys ending in `_db` are converted to linear on the way in.
/// Throws ConfigError for unknown keys and bad values.
void apply_setting(SweepSpec &spec, std::string_view key, std::string_view value);

/// Parses flat `key = value` text; `#` starts a comment. `origin` names the source in messages.
SweepSpec parse_sweep_config(std::istream &in, const std::string &origin, SweepSpec base = {});
SweepSpec load_sweep_config(const std::string &path, SweepSpec base = {});

/// The keys apply_setting understands, in documentation order.
const std::vector<std::string> &config_keys();

/// Resolved spec as `key = value` lines, including derived and linearized values.
std::string describe(const SweepSpec &spec);

/// Comma-separated lists, e.g. "0,0.1,0.5" or "16,32".
std::vector<double> parse_real_list(std::string_view text);
std::vector<std::size_t> parse_count_list(std::string_view text);

} // namespace rismimo

#endif
