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

#include "rismimo/metrics.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace rismimo
{

std::size_t SingularSpectrum::numerical_rank(double rank_tol) const
{
    if (values.empty() || !(values.front() > 0.0))
        return 0;
    const double floor = rank_tol * values.front();
    std::size_t r = 0;
    for (double s : values)
        if (s > floor)
            ++r;
    return r;
}

SingularSpectrum singular_values(const ComplexMatrix &h)
{
    if (!h.allFinite())
        throw std::invalid_argument("Matrix has non-finite entries.");
    SingularSpectrum out;
    if (h.size() == 0)
        return out;
    Eigen::JacobiSVD<ComplexMatrix> svd(h);
    const auto &s = svd.singularValues(); // already non-increasing
    out.values.assign(s.data(), s.data() + s.size());
    return out;
}

double effective_rank(const SingularSpectrum &spectrum, double rank_tol)
{
    const std::size_t rank = spectrum.numerical_rank(rank_tol);
    if (rank == 0)
        throw std::domain_error("Effective rank undefined for an all-zero matrix.");
    double total = 0.0;
    for (std::size_t i = 0; i < rank; ++i)
        total += spectrum.values[i];
    double entropy = 0.0;
    for (std::size_t i = 0; i < rank; ++i)
    {
        const double p = spectrum.values[i] / total;
        if (p > 0.0)
            entropy -= p * std::log(p);
    }
    return std::exp(entropy);
}

double effective_rank(const ComplexMatrix &h, double rank_tol)
{
    return effective_rank(singular_values(h), rank_tol);
}

double zf_rate(const ComplexMatrix &h, double rho, double rank_tol)
{
    if (!h.allFinite())
        throw std::invalid_argument("Matrix has non-finite entries.");
    if (h.rows() < h.cols() || h.cols() == 0)
        throw RankDeficientError("Zero forcing needs at least as many receive as transmit antennas.");

    // [(H^H H)^-1]_ii = sum_k |V_ik|^2 / sigma_k^2, which stays accurate when the Gram matrix is
    // badly conditioned.
    Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    if (!(s(0) > 0.0) || s(s.size() - 1) <= rank_tol * s(0))
        throw RankDeficientError("Channel Gram matrix is singular; zero-forcing rate undefined.");

    const Eigen::MatrixXd v2 = svd.matrixV().cwiseAbs2();
    const Eigen::VectorXd inv_s2 = s.array().square().inverse().matrix();
    const Eigen::VectorXd gram_inv_diag = v2 * inv_s2;

    double rate = 0.0;
    for (Eigen::Index i = 0; i < gram_inv_diag.size(); ++i)
        rate += std::log2(1.0 + rho / gram_inv_diag(i));
    return rate;
}

double capacity_equal_power(const ComplexMatrix &h, double rho, double rank_tol)
{
    const auto spectrum = singular_values(h);
    const std::size_t rank = spectrum.numerical_rank(rank_tol);
    double c = 0.0;
    for (std::size_t i = 0; i < rank; ++i)
        c += std::log2(1.0 + spectrum.values[i] * spectrum.values[i] * rho);
    return c;
}

double rate_from_stream_snrs(std::span<const double> snrs)
{
    if (snrs.empty())
        throw std::invalid_argument("Need at least one stream SNR.");
    double r = 0.0;
    for (double snr : snrs)
    {
        if (!(snr >= 0.0))
            throw std::invalid_argument("Stream SNR must be non-negative.");
        r += std::log2(1.0 + snr);
    }
    return r;
}

} // namespace rismimo
