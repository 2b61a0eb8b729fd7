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

#include "rismimo/channel.hpp"
#include "rismimo/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rismimo
{

namespace
{
constexpr double pi = std::numbers::pi;

// exp(-j 2 pi d / lambda) with the cycle count removed first, so whole wavelengths give exactly 1.
Complex propagation_phasor(double d, double lambda)
{
    const double cycles = std::fmod(d / lambda, 1.0);
    return std::polar(1.0, -2.0 * pi * cycles);
}

void require_counts(const Layout &layout, const SystemParams &params)
{
    if (layout.tx_positions.size() != params.n_tx || layout.rx_positions.size() != params.n_rx ||
        layout.ris_positions.size() != params.n_cells)
        throw std::invalid_argument("Layout element counts do not match the system parameters.");
}
} // namespace

std::string_view to_string(Mixing mode)
{
    return mode == Mixing::power_ratio ? "power_ratio" : "raw_eq1";
}

Mixing mixing_from_string(std::string_view name)
{
    if (name == "power_ratio")
        return Mixing::power_ratio;
    if (name == "raw_eq1")
        return Mixing::raw_eq1;
    throw std::invalid_argument("Unknown mixing mode '" + std::string(name) + "' (expected power_ratio or raw_eq1).");
}

double SystemParams::wavelength() const
{
    return speed_of_light / frequency_hz;
}

void SystemParams::validate() const
{
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("Frequency must be positive.");
    if (n_cells == 0 || n_tx == 0 || n_rx == 0)
        throw std::invalid_argument("Element counts must be at least 1.");
    if (!(gain_tx > 0.0) || !(gain_rx > 0.0))
        throw std::invalid_argument("Antenna gains must be positive.");
    if (!(cell_width > 0.0) || !(cell_length > 0.0))
        throw std::invalid_argument("Unit cell dimensions must be positive.");
    if (!(rician_k >= 0.0) || !std::isfinite(rician_k))
        throw std::invalid_argument("Rician factor must be finite and non-negative.");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("Power ratio alpha must lie in [0, 1].");
    if (phase_bits < 1 || phase_bits > 16)
        throw std::invalid_argument("Phase bits must lie in [1, 16].");
    if (!(snr >= 0.0))
        throw std::invalid_argument("SNR must be non-negative.");
    if (!(pattern_exponent >= 0.0))
        throw std::invalid_argument("Pattern exponent must be non-negative.");
}

// ---------------------------------------------------------------------------------------------

PhaseConfig::PhaseConfig(unsigned bits, std::vector<std::uint32_t> symbols)
    : bits_(bits), symbols_(std::move(symbols))
{
    if (bits_ < 1 || bits_ > 16)
        throw std::invalid_argument("Phase bits must lie in [1, 16].");
    for (auto s : symbols_)
        if (s >= levels())
            throw std::invalid_argument("Phase symbol outside the " + std::to_string(bits_) + "-bit alphabet.");
}

PhaseConfig PhaseConfig::zeros(std::size_t n_cells, unsigned bits)
{
    return PhaseConfig(bits, std::vector<std::uint32_t>(n_cells, 0));
}

PhaseConfig PhaseConfig::from_radians(std::span<const double> phases, unsigned bits)
{
    if (bits < 1 || bits > 16)
        throw std::invalid_argument("Phase bits must lie in [1, 16].");
    const double step = 2.0 * pi / double(1u << bits);
    std::vector<std::uint32_t> symbols;
    symbols.reserve(phases.size());
    for (double phi : phases)
    {
        const double k = std::round(phi / step);
        if (!std::isfinite(phi) || k < 0.0 || k >= double(1u << bits) || std::abs(phi - k * step) > 1e-9)
            throw std::invalid_argument("Phase " + std::to_string(phi) + " is not in the " + std::to_string(bits) +
                                        "-bit alphabet.");
        symbols.push_back(std::uint32_t(k));
    }
    return PhaseConfig(bits, std::move(symbols));
}

void PhaseConfig::set_symbol(std::size_t i, std::uint32_t s)
{
    if (s >= levels())
        throw std::invalid_argument("Phase symbol outside the alphabet.");
    symbols_.at(i) = s;
}

double PhaseConfig::phase(std::size_t i) const
{
    return alphabet_phase(symbols_[i], bits_);
}

std::vector<double> PhaseConfig::phases() const
{
    std::vector<double> out(symbols_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = phase(i);
    return out;
}

double alphabet_phase(std::uint32_t symbol, unsigned bits)
{
    return 2.0 * pi * double(symbol) / double(1u << bits);
}

Complex alphabet_phasor(std::uint32_t symbol, unsigned bits)
{
    const std::uint64_t levels = std::uint64_t(1) << bits;
    if ((4 * std::uint64_t(symbol)) % levels == 0)
    {
        switch ((4 * std::uint64_t(symbol) / levels) % 4)
        {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, alphabet_phase(symbol, bits));
}

// ---------------------------------------------------------------------------------------------

double radiation_pattern(double theta, double exponent)
{
    if (!(theta >= 0.0 && theta <= pi))
        throw std::invalid_argument("Radiation pattern angle must lie in [0, pi].");
    if (theta >= 0.5 * pi)
        return 0.0;
    return std::pow(std::cos(theta), exponent);
}

Complex ris_link_coefficient(Point2 antenna, Point2 cell, Point2 normal, const SystemParams &params,
                             double antenna_gain)
{
    const double d = distance(antenna, cell);
    if (!(d > 0.0))
        throw std::invalid_argument("RIS link coefficient undefined at zero distance.");

    double pattern = radiation_pattern(incidence_angle(cell, normal, antenna), params.pattern_exponent);
    if (params.dual_pattern)
    {
        // Antenna boresight faces the surface.
        const Point2 boresight{-normal.x, -normal.y};
        pattern *= radiation_pattern(incidence_angle(antenna, boresight, cell), params.pattern_exponent);
    }

    const double power = antenna_gain * pattern * params.cell_width * params.cell_length / (4.0 * pi * d * d);
    return std::sqrt(power) * propagation_phasor(d, params.wavelength());
}

ComplexMatrix build_H_ris_tx(const Layout &layout, const SystemParams &params)
{
    require_counts(layout, params);
    ComplexMatrix h(params.n_cells, params.n_tx);
    for (std::size_t n = 0; n < params.n_cells; ++n)
        for (std::size_t l = 0; l < params.n_tx; ++l)
            h(n, l) = ris_link_coefficient(layout.tx_positions[l], layout.ris_positions[n], layout.ris_normal, params,
                                           params.gain_tx);
    return h;
}

ComplexMatrix build_H_rx_ris(const Layout &layout, const SystemParams &params)
{
    require_counts(layout, params);
    ComplexMatrix h(params.n_rx, params.n_cells);
    for (std::size_t q = 0; q < params.n_rx; ++q)
        for (std::size_t n = 0; n < params.n_cells; ++n)
            h(q, n) = ris_link_coefficient(layout.rx_positions[q], layout.ris_positions[n], layout.ris_normal, params,
                                           params.gain_rx);
    return h;
}

ComplexMatrix reflection_matrix(const PhaseConfig &config)
{
    const auto n = Eigen::Index(config.size());
    ComplexMatrix gamma = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        gamma(i, i) = alphabet_phasor(config.symbol(std::size_t(i)), config.bits());
    return gamma;
}

ComplexMatrix build_H_LoS(const Layout &layout, const SystemParams &params)
{
    require_counts(layout, params);
    const double lambda = params.wavelength();
    const double gain = std::sqrt(params.gain_tx * params.gain_rx);
    ComplexMatrix h(params.n_rx, params.n_tx);
    for (std::size_t q = 0; q < params.n_rx; ++q)
        for (std::size_t l = 0; l < params.n_tx; ++l)
        {
            const double d = distance(layout.tx_positions[l], layout.rx_positions[q]);
            if (!(d > 0.0))
                throw std::invalid_argument("LoS coefficient undefined at zero distance.");
            h(q, l) = gain * lambda / (4.0 * pi * d) * propagation_phasor(d, lambda);
        }
    return h;
}

double nlos_scale(const Layout &layout, const SystemParams &params)
{
    const double d = distance(layout.tx_center, layout.rx_center);
    if (!(d > 0.0))
        throw std::invalid_argument("NLoS scale undefined for coincident array centers.");
    return std::sqrt(params.gain_tx * params.gain_rx) * params.wavelength() / (4.0 * pi * d);
}

ComplexMatrix build_H_NLoS(const Layout &layout, const SystemParams &params, Rng &rng)
{
    const double scale = nlos_scale(layout, params) / std::sqrt(2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix h(params.n_rx, params.n_tx);
    for (std::size_t q = 0; q < params.n_rx; ++q)
        for (std::size_t l = 0; l < params.n_tx; ++l)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            h(q, l) = Complex(scale * re, scale * im);
        }
    return h;
}

ChannelRealization realize_channel(const Layout &layout, const SystemParams &params, std::uint64_t seed)
{
    params.validate();
    ChannelRealization out;
    out.ris_tx = build_H_ris_tx(layout, params);
    out.rx_ris = build_H_rx_ris(layout, params);
    out.los = build_H_LoS(layout, params);
    Rng rng(seed);
    out.nlos = build_H_NLoS(layout, params, rng);
    out.nlos_scale = nlos_scale(layout, params);
    out.seed = seed;
    return out;
}

double cascade_power(const ComplexMatrix &ris_tx, const ComplexMatrix &rx_ris)
{
    if (rx_ris.cols() != ris_tx.rows())
        throw std::invalid_argument("Cascade dimension mismatch.");
    const Eigen::MatrixXd a = rx_ris.cwiseAbs2();
    const Eigen::MatrixXd b = ris_tx.cwiseAbs2();
    return (a * b).sum();
}

double empirical_cascade_power(const ComplexMatrix &ris_tx, const ComplexMatrix &rx_ris, unsigned bits,
                               std::size_t samples, Rng &rng)
{
    if (rx_ris.cols() != ris_tx.rows())
        throw std::invalid_argument("Cascade dimension mismatch.");
    if (samples == 0)
        throw std::invalid_argument("Need at least one sample.");
    std::uniform_int_distribution<std::uint32_t> pick(0, (1u << bits) - 1);
    const Eigen::Index n = ris_tx.rows();
    double acc = 0.0;
    Eigen::VectorXcd g(n);
    for (std::size_t s = 0; s < samples; ++s)
    {
        for (Eigen::Index i = 0; i < n; ++i)
            g(i) = alphabet_phasor(pick(rng), bits);
        acc += (rx_ris * g.asDiagonal() * ris_tx).squaredNorm();
    }
    return acc / double(samples);
}

double direct_power(const ComplexMatrix &los, double nlos_scale, double rician_k)
{
    const double entries = double(los.size());
    return rician_k / (1.0 + rician_k) * los.squaredNorm() +
           1.0 / (1.0 + rician_k) * entries * nlos_scale * nlos_scale;
}

MixingWeights mixing_weights(const ChannelRealization &channel, const SystemParams &params)
{
    const double a = params.alpha;
    if (!(a >= 0.0 && a <= 1.0))
        throw std::invalid_argument("Power ratio alpha must lie in [0, 1].");
    if (params.mixing == Mixing::raw_eq1)
        return {std::sqrt(a), std::sqrt(1.0 - a)};

    const double p_ris = cascade_power(channel.ris_tx, channel.rx_ris);
    const double p_direct = direct_power(channel.los, channel.nlos_scale, params.rician_k);
    MixingWeights w;
    if (a > 0.0)
    {
        if (!(p_ris > 0.0))
            throw std::domain_error("RIS-assisted term carries no power; cannot normalize it.");
        w.cascade = std::sqrt(a / p_ris);
    }
    if (a < 1.0)
    {
        if (!(p_direct > 0.0))
            throw std::domain_error("Direct term carries no power; cannot normalize it.");
        w.direct = std::sqrt((1.0 - a) / p_direct);
    }
    return w;
}

namespace
{
ComplexMatrix rician_mix(const ChannelRealization &channel, double rician_k)
{
    return std::sqrt(rician_k / (1.0 + rician_k)) * channel.los + std::sqrt(1.0 / (1.0 + rician_k)) * channel.nlos;
}

void check_shapes(const ChannelRealization &c)
{
    if (c.rx_ris.cols() != c.ris_tx.rows() || c.los.rows() != c.rx_ris.rows() || c.los.cols() != c.ris_tx.cols() ||
        c.nlos.rows() != c.los.rows() || c.nlos.cols() != c.los.cols())
        throw std::invalid_argument("Channel component dimensions are inconsistent.");
}
} // namespace

ComplexMatrix compose_channel(const ChannelRealization &channel, const ComplexMatrix &gamma,
                              const SystemParams &params, const MixingWeights &weights)
{
    check_shapes(channel);
    if (gamma.rows() != channel.ris_tx.rows() || gamma.cols() != channel.ris_tx.rows())
        throw std::invalid_argument("Reflection matrix dimension mismatch.");
    return weights.cascade * (channel.rx_ris * gamma * channel.ris_tx) +
           weights.direct * rician_mix(channel, params.rician_k);
}

ComplexMatrix compose_channel(const ChannelRealization &channel, const ComplexMatrix &gamma,
                              const SystemParams &params)
{
    return compose_channel(channel, gamma, params, mixing_weights(channel, params));
}

// ---------------------------------------------------------------------------------------------

FrozenChannel::FrozenChannel(const ChannelRealization &channel, const SystemParams &params,
                             const MixingWeights &weights)
    : rows_(std::size_t(channel.los.rows())), cols_(std::size_t(channel.los.cols())), bits_(params.phase_bits)
{
    check_shapes(channel);
    const ComplexMatrix direct = weights.direct * rician_mix(channel, params.rician_k);
    direct_ = Eigen::Map<const Eigen::VectorXcd>(direct.data(), direct.size());

    const Eigen::Index n = channel.ris_tx.rows();
    per_cell_.resize(Eigen::Index(rows_ * cols_), n);
    for (Eigen::Index c = 0; c < n; ++c)
    {
        const ComplexMatrix outer = weights.cascade * (channel.rx_ris.col(c) * channel.ris_tx.row(c));
        per_cell_.col(c) = Eigen::Map<const Eigen::VectorXcd>(outer.data(), outer.size());
    }

    phasors_.resize(std::size_t(1) << bits_);
    for (std::uint32_t s = 0; s < phasors_.size(); ++s)
        phasors_[s] = alphabet_phasor(s, bits_);
}

FrozenChannel::FrozenChannel(const ChannelRealization &channel, const SystemParams &params)
    : FrozenChannel(channel, params, mixing_weights(channel, params))
{
}

ComplexMatrix FrozenChannel::evaluate(const PhaseConfig &config) const
{
    if (config.size() != n_cells())
        throw std::invalid_argument("Phase configuration length does not match the RIS size.");
    if (config.bits() != bits_)
        throw std::invalid_argument("Phase configuration uses a different alphabet than the channel.");
    Eigen::VectorXcd g(Eigen::Index(config.size()));
    for (std::size_t i = 0; i < config.size(); ++i)
        g(Eigen::Index(i)) = phasors_[config.symbol(i)];
    Eigen::VectorXcd v = direct_ + per_cell_ * g;
    return Eigen::Map<const ComplexMatrix>(v.data(), Eigen::Index(rows_), Eigen::Index(cols_));
}

} // namespace rismimo
