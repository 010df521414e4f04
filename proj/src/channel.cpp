#include "fmpkit/channel.hpp"

#include <cmath>
#include <numbers>

namespace fmpkit {

namespace {

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

double pathloss_db(const PathLossModel& model, LinkClass link, double distance_m) {
    if (distance_m < 1.0) {
        throw BelowReferenceDistance("pathloss_db: distance below the 1 m reference");
    }
    double ref = 0.0, gain = 0.0, exponent = 0.0;
    switch (link) {
        case LinkClass::direct:
            ref = model.ref_loss_direct_db;
            gain = model.gain_bs_db;
            exponent = model.exponent_nlos;
            break;
        case LinkClass::bs_to_ris:
            ref = model.ref_loss_ris_db;
            gain = model.gain_bs_db;
            exponent = model.exponent_los;
            break;
        case LinkClass::ris_to_user:
            ref = model.ref_loss_ris_db;
            gain = model.gain_ris_db;
            exponent = model.exponent_los;
            break;
    }
    return -ref + gain - 10.0 * exponent * std::log10(distance_m);
}

double amplitude_gain(const PathLossModel& model, LinkClass link, double distance_m) {
    const double pl = pathloss_db(model, link, distance_m);
    return std::pow(10.0, pl / (model.literal_power_scaling ? 10.0 : 20.0));
}

ComplexVector steering_vector(int n, double angle, double spacing_ratio) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) {
        const double phase = 2.0 * std::numbers::pi * spacing_ratio * i * std::sin(angle);
        v[i] = Complex(std::cos(phase), std::sin(phase));
    }
    return v;
}

double noise_variance(double bandwidth_hz, double density_dbm_hz) {
    if (!(bandwidth_hz > 0.0)) throw OutOfRange("noise_variance: bandwidth must be positive");
    const double dbm = density_dbm_hz + 10.0 * std::log10(bandwidth_hz);
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

ChannelSet generate(const ChannelParams& params, std::uint64_t seed, std::uint64_t trial) {
    Rng rng = Rng(seed).substream(trial);
    ChannelSet out;
    const Topology& topo = params.topology;

    for (int k = 0; k < params.users; ++k) {
        const double x = topo.user_center[0] + topo.user_area_side * (rng.uniform() - 0.5);
        const double y = topo.user_center[1] + topo.user_area_side * (rng.uniform() - 0.5);
        out.user_positions.push_back({x, y, topo.user_height});
    }

    const double mix_los = std::sqrt(params.rician_factor / (1.0 + params.rician_factor));
    const double mix_nlos = std::sqrt(1.0 / (1.0 + params.rician_factor));
    const double two_pi = 2.0 * std::numbers::pi;

    // BS -> RIS link, Rician
    {
        const double amp =
            amplitude_gain(params.pathloss, LinkClass::bs_to_ris, distance(topo.bs, topo.ris));
        const double arrive = two_pi * rng.uniform();
        const double depart = two_pi * rng.uniform();
        const ComplexMatrix los = steering_vector(params.ris_elements, arrive) *
                                  steering_vector(params.bs_antennas, depart).adjoint();
        out.bs_to_ris =
            amp * (mix_los * los +
                   mix_nlos * rng.complex_gaussian_matrix(params.ris_elements, params.bs_antennas));
    }

    for (int k = 0; k < params.users; ++k) {
        const double d_direct = distance(topo.bs, out.user_positions[k]);
        const double amp_direct = amplitude_gain(params.pathloss, LinkClass::direct, d_direct);
        out.direct.push_back(amp_direct * rng.complex_gaussian_matrix(params.user_antennas,
                                                                      params.bs_antennas));

        const double d_ris = distance(topo.ris, out.user_positions[k]);
        const double amp_ris = amplitude_gain(params.pathloss, LinkClass::ris_to_user, d_ris);
        const double arrive = two_pi * rng.uniform();
        const double depart = two_pi * rng.uniform();
        const ComplexMatrix los = steering_vector(params.user_antennas, arrive) *
                                  steering_vector(params.ris_elements, depart).adjoint();
        out.ris_to_user.push_back(
            amp_ris * (mix_los * los +
                       mix_nlos * rng.complex_gaussian_matrix(params.user_antennas,
                                                              params.ris_elements)));
    }

    out.noise_power = noise_variance(params.bandwidth_hz, params.noise_density_dbm_hz);
    return out;
}

NetworkState make_state(const ChannelSet& channels) {
    NetworkState state;
    const double sigma = std::sqrt(channels.noise_power);
    for (const auto& h : channels.direct) {
        state.channels.push_back(h / sigma);
        state.noise_cov.push_back(hermitian_identity(h.rows()));
        state.beamformers.push_back(ComplexMatrix::Zero(h.cols(), 1));
    }
    return state;
}

}  // namespace fmpkit
