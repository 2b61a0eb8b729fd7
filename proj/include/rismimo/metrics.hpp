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

#ifndef RISMIMO_METRICS_HPP
#define RISMIMO_METRICS_HPP

#include "rismimo/channel.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace rismimo
{

inline constexpr double default_rank_tol = 1e-12;

/// Raised by zf_rate when H^H H is singular to working precision.
class RankDeficientError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Singular values sorted non-increasing, length min(rows, cols).
struct SingularSpectrum
{
    std::vector<double> values;

    /// Count of values above rank_tol * values[0].
    std::size_t numerical_rank(double rank_tol = default_rank_tol) const;
};

/// Two-sided Jacobi SVD. Throws std::invalid_argument on non-finite entries.
SingularSpectrum singular_values(const ComplexMatrix &h);

/// exp of the Shannon entropy of the singular values normalized to unit sum, restricted to the
/// numerical rank. Lies in [1, rank]. Throws std::domain_error for the all-zero matrix.
double effective_rank(const ComplexMatrix &h, double rank_tol = default_rank_tol);
double effective_rank(const SingularSpectrum &spectrum, double rank_tol = default_rank_tol);

/// Sum over streams of log2(1 + rho / [(H^H H)^-1]_ii), in bit/s/Hz.
/// Throws RankDeficientError unless H has full column rank.
double zf_rate(const ComplexMatrix &h, double rho, double rank_tol = default_rank_tol);

/// Sum over the numerical rank of log2(1 + sigma_i^2 rho), in bit/s/Hz.
double capacity_equal_power(const ComplexMatrix &h, double rho, double rank_tol = default_rank_tol);

/// Sum of log2(1 + snr_i) over post-equalization stream SNRs (linear).
double rate_from_stream_snrs(std::span<const double> snrs);

} // namespace rismimo

#endif
