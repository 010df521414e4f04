#pragma once

#include <array>
#include <cstdint>

#include "fmpkit/metrics.hpp"

namespace fmpkit {

enum class LinkClass { direct, bs_to_ris, ris_to_user };

struct Topology {
    std::array<double, 3> bs = {0.0, 0.0, 25.0};
    std::array<double, 3> ris = {140.0, 0.0, 15.0};
    std::array<double, 3> user_center = {130.0, 0.0, 1.5};
    double user_area_side = 20.0;
    double user_height = 1.5;
};

struct PathLossModel {
    double ref_loss_direct_db = 35.9;  // at 1 m
    double ref_loss_ris_db = 30.0;
    double gain_bs_db = 6.0;
    double gain_ris_db = 5.5;
    double exponent_los = 2.2;
    double exponent_nlos = 3.75;
    // Literal mode multiplies channel entries by 10^{PL/10} instead of the
    // amplitude convention 10^{PL/20}.
    bool literal_power_scaling = false;
};

struct ChannelParams {
    int users = 2;
    int bs_antennas = 4;
    int user_antennas = 3;
    int ris_elements = 20;
    double rician_factor = 3.0;
    double bandwidth_hz = 1.5e6;
    double noise_density_dbm_hz = -174.0;
    Topology topology;
    PathLossModel pathloss;
};

struct ChannelSet {
    std::vector<ComplexMatrix> direct;       // per user, N_u x N_BS
    ComplexMatrix bs_to_ris;                 // M x N_BS
    std::vector<ComplexMatrix> ris_to_user;  // per user, N_u x M
    double noise_power = 0.0;                // watts
    std::vector<std::array<double, 3>> user_positions;
};

/// Large-scale loss in dB (attenuation negative):
///   PL = -PL0 + iota0 - 10 tau log10(d / 1 m)
double pathloss_db(const PathLossModel& model, LinkClass link, double distance_m);

/// Linear factor applied to channel entries for a given link and distance.
double amplitude_gain(const PathLossModel& model, LinkClass link, double distance_m);

/// Uniform linear array response; entries exp(j 2 pi spacing (i-1) sin angle).
ComplexVector steering_vector(int n, double angle, double spacing_ratio = 0.5);

/// Thermal noise power in watts for a density given in dBm/Hz.
double noise_variance(double bandwidth_hz, double density_dbm_hz);

/// Draws one Monte Carlo channel realization. Deterministic per (seed,
/// trial): user positions, then the BS-RIS link, then per-user direct and
/// RIS links, all from the (seed, trial) substream. Direct links are
/// Rayleigh; RIS links are Rician with a rank-1 steering outer product as
/// the line-of-sight component.
ChannelSet generate(const ChannelParams& params, std::uint64_t seed, std::uint64_t trial);

/// Broadcast-channel state without RIS assistance. Channels are scaled by
/// 1/sigma so the noise covariance becomes the identity; all rate metrics
/// are invariant to this normalization and it keeps factorizations away
/// from the 1e-15 W noise floor. Beamformers start at zero.
NetworkState make_state(const ChannelSet& channels);

}  // namespace fmpkit
