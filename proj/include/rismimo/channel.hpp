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

#ifndef RISMIMO_CHANNEL_HPP
#define RISMIMO_CHANNEL_HPP

#include "rismimo/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace rismimo
{

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;
using Rng = std::mt19937_64;

/// How the RIS-assisted and direct terms are combined.
///
/// `power_ratio` scales each term by the inverse square root of its expected Frobenius power so that
/// alpha is the literal power share of the RIS-assisted term. `raw_eq1` mixes the unscaled matrices.
enum class Mixing
{
    power_ratio,
    raw_eq1
};

std::string_view to_string(Mixing mode);
Mixing mixing_from_string(std::string_view name); // throws std::invalid_argument

/// Every scalar of the link model. All values are linear; dB conversion happens at ingestion.
struct SystemParams
{
    double frequency_hz = 2.7e9;
    std::size_t n_cells = 16;
    std::size_t n_tx = 2;
    std::size_t n_rx = 2;
    double gain_tx = 3.9810717055349722; // 6 dB
    double gain_rx = 3.9810717055349722;
    double cell_width = 0.05;  // d_x
    double cell_length = 1.6;  // d_z
    double rician_k = 100.0;   // 20 dB
    double alpha = 0.5;
    unsigned phase_bits = 1;
    double snr = 1.0e5;        // 50 dB
    double pattern_exponent = 3.0;
    // Applies the pattern at the antenna end of every RIS link as well as at the cell.
    bool dual_pattern = false;
    Mixing mixing = Mixing::power_ratio;

    double wavelength() const;
    void validate() const; // throws std::invalid_argument
};

/// Vector of N reflection phases, each one of the 2^b points of the uniform b-bit alphabet.
///
/// Stored as alphabet indices, so an instance can never hold an off-grid phase.
class PhaseConfig
{
  public:
    PhaseConfig() = default;
    PhaseConfig(unsigned bits, std::vector<std::uint32_t> symbols);

    static PhaseConfig zeros(std::size_t n_cells, unsigned bits);

    /// Throws std::invalid_argument if any value is not (within 1e-9 rad) an alphabet point.
    static PhaseConfig from_radians(std::span<const double> phases, unsigned bits);

    std::size_t size() const { return symbols_.size(); }
    unsigned bits() const { return bits_; }
    std::uint32_t levels() const { return std::uint32_t(1) << bits_; }
    const std::vector<std::uint32_t> &symbols() const { return symbols_; }
    std::uint32_t symbol(std::size_t i) const { return symbols_[i]; }
    void set_symbol(std::size_t i, std::uint32_t s);

    double phase(std::size_t i) const;
    std::vector<double> phases() const;

    friend bool operator==(const PhaseConfig &, const PhaseConfig &) = default;

  private:
    unsigned bits_ = 1;
    std::vector<std::uint32_t> symbols_;
};

/// Alphabet point k of the b-bit phase alphabet, 2 pi k / 2^b.
double alphabet_phase(std::uint32_t symbol, unsigned bits);

/// exp(j alphabet_phase(symbol, bits)); exact at multiples of pi/2.
Complex alphabet_phasor(std::uint32_t symbol, unsigned bits);

/// Component matrices of one channel draw.
struct ChannelRealization
{
    ComplexMatrix ris_tx; // N x L, transmitter to RIS
    ComplexMatrix rx_ris; // Q x N, RIS to receiver
    ComplexMatrix los;    // Q x L
    ComplexMatrix nlos;   // Q x L
    double nlos_scale = 0.0; // path-loss amplitude applied to the unit-variance NLoS draw
    std::uint64_t seed = 0;
};

/// cos^q(theta) on [0, pi/2], zero behind the surface. Throws for theta outside [0, pi].
double radiation_pattern(double theta, double exponent);

/// Single transmitter-cell (or cell-receiver) coefficient:
/// sqrt(G F(theta) d_x d_z / (4 pi d^2)) exp(-j 2 pi d / lambda).
Complex ris_link_coefficient(Point2 antenna, Point2 cell, Point2 normal, const SystemParams &params,
                             double antenna_gain);

ComplexMatrix build_H_ris_tx(const Layout &layout, const SystemParams &params);
ComplexMatrix build_H_rx_ris(const Layout &layout, const SystemParams &params);
ComplexMatrix reflection_matrix(const PhaseConfig &config);
ComplexMatrix build_H_LoS(const Layout &layout, const SystemParams &params);

/// sqrt(G_tx G_rx) lambda / (4 pi d), d being the transmitter-center to receiver-center distance.
double nlos_scale(const Layout &layout, const SystemParams &params);

/// Q x L matrix of scale * (g_re + j g_im) / sqrt(2) with standard normal draws taken row-major.
ComplexMatrix build_H_NLoS(const Layout &layout, const SystemParams &params, Rng &rng);

/// Builds all four components; the NLoS draw uses a generator seeded with `seed`.
ChannelRealization realize_channel(const Layout &layout, const SystemParams &params, std::uint64_t seed);

/// Expected ||H_rx_ris Gamma H_ris_tx||_F^2 over uniformly random phases (any b >= 1):
/// sum_{q,l,n} |rx_ris(q,n)|^2 |ris_tx(n,l)|^2.
double cascade_power(const ComplexMatrix &ris_tx, const ComplexMatrix &rx_ris);

/// Monte Carlo estimate of the same quantity over `samples` random configurations.
double empirical_cascade_power(const ComplexMatrix &ris_tx, const ComplexMatrix &rx_ris, unsigned bits,
                               std::size_t samples, Rng &rng);

/// Expected ||sqrt(K/(1+K)) H_LoS + sqrt(1/(1+K)) H_NLoS||_F^2.
double direct_power(const ComplexMatrix &los, double nlos_scale, double rician_k);

struct MixingWeights
{
    double cascade = 0.0; // multiplies H_rx_ris Gamma H_ris_tx
    double direct = 0.0;  // multiplies sqrt(K/(1+K)) H_LoS + sqrt(1/(1+K)) H_NLoS
};

MixingWeights mixing_weights(const ChannelRealization &channel, const SystemParams &params);

/// Composite channel cascade_weight * H_rx_ris Gamma H_ris_tx + direct_weight * (Rician mix).
ComplexMatrix compose_channel(const ChannelRealization &channel, const ComplexMatrix &gamma,
                              const SystemParams &params, const MixingWeights &weights);

/// Same, with the weights derived from `params.alpha` and `params.mixing`.
ComplexMatrix compose_channel(const ChannelRealization &channel, const ComplexMatrix &gamma,
                              const SystemParams &params);

/// Channel realization frozen for optimization: evaluates H for a PhaseConfig in O(N Q L)
/// without forming Gamma.
class FrozenChannel
{
  public:
    FrozenChannel(const ChannelRealization &channel, const SystemParams &params, const MixingWeights &weights);
    FrozenChannel(const ChannelRealization &channel, const SystemParams &params);

    ComplexMatrix evaluate(const PhaseConfig &config) const;

    std::size_t n_cells() const { return std::size_t(per_cell_.cols()); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    unsigned phase_bits() const { return bits_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    unsigned bits_ = 1;
    Eigen::VectorXcd direct_;   // vec() of the weighted direct term
    Eigen::MatrixXcd per_cell_; // column n = vec(weight * rx_ris(:,n) ris_tx(n,:))
    std::vector<Complex> phasors_;
};

} // namespace rismimo

#endif
