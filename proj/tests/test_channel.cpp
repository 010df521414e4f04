#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "fmpkit/channel.hpp"

using namespace fmpkit;

TEST_CASE("pathloss_db") {
    PathLossModel model;
    CHECK(pathloss_db(model, LinkClass::direct, 1.0) == doctest::Approx(-29.9));

    const double d = std::sqrt(140.0 * 140.0 + 10.0 * 10.0);
    CHECK(pathloss_db(model, LinkClass::bs_to_ris, d) ==
          doctest::Approx(-30.0 + 6.0 - 22.0 * std::log10(d)).epsilon(1e-12));
    CHECK(pathloss_db(model, LinkClass::bs_to_ris, d) == doctest::Approx(-71.24).epsilon(1e-3));

    const double drop = pathloss_db(model, LinkClass::ris_to_user, 10.0) -
                        pathloss_db(model, LinkClass::ris_to_user, 20.0);
    CHECK(drop == doctest::Approx(22.0 * std::log10(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(pathloss_db(model, LinkClass::direct, 0.5), BelowReferenceDistance);
}

TEST_CASE("amplitude convention") {
    PathLossModel model;
    const double pl = pathloss_db(model, LinkClass::direct, 50.0);
    CHECK(amplitude_gain(model, LinkClass::direct, 50.0) ==
          doctest::Approx(std::pow(10.0, pl / 20.0)));
    model.literal_power_scaling = true;
    CHECK(amplitude_gain(model, LinkClass::direct, 50.0) ==
          doctest::Approx(std::pow(10.0, pl / 10.0)));
}

TEST_CASE("steering_vector") {
    CHECK(steering_vector(1, 1.234).size() == 1);
    CHECK(std::abs(steering_vector(1, 1.234)[0] - Complex(1, 0)) <= 1e-15);

    ComplexVector broadside = steering_vector(4, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(broadside[i] - Complex(1, 0)) <= 1e-15);

    ComplexVector v = steering_vector(2, std::numbers::pi / 6.0);
    CHECK(std::abs(v[0] - Complex(1, 0)) <= 1e-12);
    CHECK(std::abs(v[1] - Complex(0, 1)) <= 1e-12);
}

TEST_CASE("noise_variance") {
    CHECK(noise_variance(1.5e6, -174.0) == doctest::Approx(5.97e-15).epsilon(1e-3));
    CHECK(noise_variance(1.0, -174.0) == doctest::Approx(3.98e-21).epsilon(1e-3));
    CHECK(noise_variance(1e6, -171.0) == doctest::Approx(2.0 * noise_variance(1e6, -174.0)));
}

TEST_CASE("generate determinism") {
    ChannelParams params;
    ChannelSet a = generate(params, 7, 3);
    ChannelSet b = generate(params, 7, 3);
    CHECK((a.bs_to_ris - b.bs_to_ris).norm() == 0.0);
    CHECK((a.direct[0] - b.direct[0]).norm() == 0.0);
    CHECK((a.ris_to_user[1] - b.ris_to_user[1]).norm() == 0.0);

    ChannelSet c = generate(params, 7, 4);
    CHECK((a.direct[0] - c.direct[0]).norm() > 0.0);
}

TEST_CASE("rician limit is the steering outer product") {
    ChannelParams params;
    params.rician_factor = 1e9;
    ChannelSet ch = generate(params, 11, 0);

    Eigen::JacobiSVD<ComplexMatrix> svd(ch.bs_to_ris);
    CHECK(svd.singularValues()[1] / svd.singularValues()[0] <= 1e-4);

    // the mixture deviates from a rank-1 product by at most the NLoS weight
    Eigen::JacobiSVD<ComplexMatrix> svd_user(ch.ris_to_user[0]);
    CHECK(svd_user.singularValues()[1] / svd_user.singularValues()[0] <= 1e-4);
}

TEST_CASE("los component is exactly rank one at finite rician factor") {
    // reconstruct the LoS part by subtracting two realizations that share
    // angles is not possible; instead check the construction directly
    ComplexVector a = steering_vector(5, 0.7);
    ComplexVector b = steering_vector(3, -1.1);
    ComplexMatrix los = a * b.adjoint();
    Eigen::JacobiSVD<ComplexMatrix> svd(los);
    CHECK(svd.singularValues()[1] <= 1e-12 * svd.singularValues()[0]);
}

TEST_CASE("direct-link second moment follows the squared amplitude") {
    ChannelParams params;
    params.users = 1;
    params.user_antennas = 2;
    params.bs_antennas = 2;
    double ratio_acc = 0.0;
    int entries = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        ChannelSet ch = generate(params, 21, trial);
        const double d = std::sqrt(std::pow(ch.user_positions[0][0], 2) +
                                   std::pow(ch.user_positions[0][1], 2) +
                                   std::pow(25.0 - ch.user_positions[0][2], 2));
        const double amp = amplitude_gain(params.pathloss, LinkClass::direct, d);
        ratio_acc += ch.direct[0].squaredNorm() / (amp * amp);
        entries += 4;
    }
    CHECK(ratio_acc / entries == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("make_state normalizes the noise floor") {
    ChannelParams params;
    ChannelSet ch = generate(params, 5, 0);
    NetworkState state = make_state(ch);
    REQUIRE(state.user_count() == params.users);
    CHECK(state.noise_cov[0].mat().isApprox(ComplexMatrix::Identity(3, 3)));
    const double sigma = std::sqrt(ch.noise_power);
    CHECK((state.channels[0] * sigma - ch.direct[0]).norm() <= 1e-12 * ch.direct[0].norm());
}
