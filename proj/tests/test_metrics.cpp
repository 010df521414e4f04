#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fmpkit/metrics.hpp"
#include "helpers.hpp"

using namespace fmpkit;
using testutil::random_state;

namespace {

// Scalar broadcast channel with unit channels and isotropic unit noise.
NetworkState scalar_state(const std::vector<double>& amplitudes) {
    NetworkState s;
    for (double a : amplitudes) {
        ComplexMatrix h(1, 1), w(1, 1);
        h(0, 0) = 1.0;
        w(0, 0) = a;
        s.channels.push_back(h);
        s.noise_cov.push_back(hermitian_identity(1));
        s.beamformers.push_back(w);
    }
    return s;
}

double qf_at(const QuadraticFunctional& f, const NetworkState& s) {
    return f.value(std::span<const ComplexMatrix>(s.beamformers.data(), s.beamformers.size()));
}

using TrueFn = std::function<double(const NetworkState&)>;

// Shared MM-condition harness: equality, bound direction over random feasible
// beamformers, and central-difference gradient match at the expansion point.
void check_mm_conditions(const QuadraticFunctional& bound, const TrueFn& truth,
                         const NetworkState& expansion, double power, bool is_lower,
                         Rng& rng, int samples) {
    const double at_exp = truth(expansion);
    CHECK(std::abs(qf_at(bound, expansion) - at_exp) <= 1e-9 * std::max(1.0, std::abs(at_exp)));

    for (int rep = 0; rep < samples; ++rep) {
        NetworkState probe = expansion;
        for (auto& w : probe.beamformers) {
            w = rng.complex_gaussian_matrix(w.rows(), w.cols());
        }
        const double scale = std::sqrt(power * rng.uniform() / total_transmit_power(probe));
        for (auto& w : probe.beamformers) w *= scale;
        const double gap = truth(probe) - qf_at(bound, probe);
        CHECK((is_lower ? gap : -gap) >= -1e-9);
    }

    std::vector<double> g_bound, g_true;
    for (size_t v = 0; v < expansion.beamformers.size(); ++v) {
        for (const auto& dir : testutil::complex_directions(expansion.beamformers[v].rows(),
                                                            expansion.beamformers[v].cols())) {
            auto probe_at = [&](double t) {
                NetworkState probe = expansion;
                probe.beamformers[v] += t * dir;
                return probe;
            };
            g_bound.push_back(
                testutil::central_difference([&](double t) { return qf_at(bound, probe_at(t)); }));
            g_true.push_back(
                testutil::central_difference([&](double t) { return truth(probe_at(t)); }));
        }
    }
    CHECK(testutil::gradient_mismatch(g_bound, g_true) <= 1e-4);
}

}  // namespace

TEST_CASE("qfunc_inv") {
    CHECK(std::abs(qfunc_inv(0.5)) <= 1e-8);
    CHECK(qfunc_inv(0.1586553) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::abs(qfunc_inv(1e-5) - 4.2649) <= 1e-3);
    CHECK(std::abs(qfunc(qfunc_inv(0.01)) - 0.01) <= 1e-10);
    CHECK(qfunc_inv(1e-3) > qfunc_inv(1e-2));
    CHECK_THROWS_AS(qfunc_inv(0.0), OutOfRange);
    CHECK_THROWS_AS(qfunc_inv(1.0), OutOfRange);
}

TEST_CASE("shannon_rate") {
    NetworkState off = scalar_state({0.0});
    CHECK(shannon_rate(0, off) == doctest::Approx(0.0));

    NetworkState single = scalar_state({1.0});
    CHECK(shannon_rate(0, single) == doctest::Approx(std::log(2.0)));

    NetworkState pair = scalar_state({1.0, 1.0});
    CHECK(shannon_rate(0, pair) == doctest::Approx(std::log(1.5)));
    CHECK(shannon_rate(1, pair) == doctest::Approx(std::log(1.5)));
}

TEST_CASE("dispersion") {
    CHECK(dispersion(0, scalar_state({0.0})) == doctest::Approx(0.0));
    CHECK(dispersion(0, scalar_state({1.0})) == doctest::Approx(1.0));
    CHECK(dispersion(0, scalar_state({3e4})) == doctest::Approx(2.0).epsilon(1e-6));

    Rng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        NetworkState s = random_state(2, 3, 4, 2, 5.0, rng);
        for (int k = 0; k < 2; ++k) {
            const double v = dispersion(k, s);
            CHECK(v >= 0.0);
            CHECK(v < 2.0 * 3);
        }
    }
}

TEST_CASE("fbl_rate") {
    SystemParams params;
    params.error_prob = 1e-5;
    params.blocklength = 256;
    NetworkState s = scalar_state({1.0});
    CHECK(fbl_rate(0, s, params) == doctest::Approx(0.4266).epsilon(2e-3));

    params.blocklength = 1e9;
    CHECK(std::abs(fbl_rate(0, s, params) - shannon_rate(0, s)) <= 1e-3);

    CHECK(fbl_rate(0, scalar_state({0.0}), params) == doctest::Approx(0.0));

    // monotone in the blocklength
    Rng rng(32);
    NetworkState r = random_state(2, 2, 3, 1, 4.0, rng);
    double prev = -1e9;
    for (double n : {64.0, 256.0, 1024.0, 65536.0}) {
        SystemParams p;
        p.blocklength = n;
        const double rate = fbl_rate(0, r, p);
        CHECK(rate >= prev);
        prev = rate;
    }

    // penalty is nonnegative, so the rate never exceeds the Shannon rate
    for (int rep = 0; rep < 30; ++rep) {
        NetworkState t = random_state(2, 2, 3, 2, 3.0, rng);
        SystemParams p;
        CHECK(fbl_rate(0, t, p) <= shannon_rate(0, t) + 1e-12);
    }
}

TEST_CASE("ee, gee, delay, mse, sinr") {
    SystemParams params;
    params.static_power = 1.0;
    params.amp_inefficiency = 1.0;

    NetworkState s = scalar_state({1.0});
    const double r = fbl_rate(0, s, params);
    CHECK(ee(0, s, params) == doctest::Approx(r / 2.0));
    CHECK(gee(s, params) == doctest::Approx(ee(0, s, params)));  // K = 1

    params.packet_bits = {256.0};
    CHECK(delay(0, s, params) ==
          doctest::Approx(256.0 * std::numbers::ln2 / r));

    NetworkState off = scalar_state({0.0});
    CHECK(mse(0, off) == doctest::Approx(1.0));  // Tr(I) for zero signal
    CHECK(sinr_single_stream(0, off) == doctest::Approx(0.0));
    CHECK_THROWS_AS(delay(0, off, params), NonPositiveRate);

    // literal MSE can dip below zero for strong signals
    NetworkState strong = scalar_state({10.0});
    CHECK(mse(0, strong, MseMode::literal) < 0.0);
    CHECK(mse(0, strong, MseMode::signal_inclusive) > 0.0);

    Rng rng(33);
    NetworkState multi = random_state(2, 2, 3, 2, 4.0, rng);
    CHECK_THROWS_AS(sinr_single_stream(0, multi), MultiStreamNotSupported);
}

TEST_CASE("gee is the ratio of sums, not the sum of ratios") {
    SystemParams params;
    NetworkState s = scalar_state({2.0, 0.3});
    const double sum_of_ratios = ee(0, s, params) + ee(1, s, params);
    CHECK(std::abs(gee(s, params) - sum_of_ratios) > 1e-3);
}

TEST_CASE("rate_concave_lb satisfies the surrogate conditions") {
    Rng rng(34);
    SystemParams params;
    params.error_prob = 1e-5;
    params.blocklength = 256;
    const double power = 6.0;
    for (int rep = 0; rep < 3; ++rep) {
        NetworkState exp_state = random_state(2, 2, 3, 2, power, rng);
        for (int k = 0; k < 2; ++k) {
            QuadraticFunctional f = rate_concave_lb(k, exp_state, params);
            check_mm_conditions(
                f, [&](const NetworkState& s) { return fbl_rate(k, s, params); }, exp_state,
                power, /*is_lower=*/true, rng, 70);
        }
    }
}

TEST_CASE("dispersion_ub satisfies the surrogate conditions") {
    Rng rng(35);
    const double power = 6.0;
    for (int rep = 0; rep < 3; ++rep) {
        NetworkState exp_state = random_state(2, 2, 3, 2, power, rng);
        for (int k = 0; k < 2; ++k) {
            QuadraticFunctional f = dispersion_ub(k, exp_state);
            check_mm_conditions(
                f, [&](const NetworkState& s) { return dispersion(k, s); }, exp_state, power,
                /*is_lower=*/false, rng, 70);
        }
    }

    // zero beamformers: the upper bound stays above the vanished dispersion
    NetworkState exp_state = random_state(2, 2, 3, 1, 4.0, rng);
    QuadraticFunctional f = dispersion_ub(0, exp_state);
    NetworkState zero = exp_state;
    for (auto& w : zero.beamformers) w.setZero();
    CHECK(qf_at(f, zero) >= -1e-12);
}

TEST_CASE("mse_ub satisfies the surrogate conditions") {
    Rng rng(36);
    const double power = 6.0;
    for (MseMode mode : {MseMode::literal, MseMode::signal_inclusive}) {
        NetworkState exp_state = random_state(2, 2, 3, 2, power, rng);
        for (int k = 0; k < 2; ++k) {
            QuadraticFunctional f = mse_ub(k, exp_state, mode);
            check_mm_conditions(
                f, [&](const NetworkState& s) { return mse(k, s, mode); }, exp_state, power,
                /*is_lower=*/false, rng, 100);
        }
    }

    // scalar expansion with unit signal and noise, probe doubles the power
    NetworkState bar = scalar_state({1.0});
    QuadraticFunctional f = mse_ub(0, bar, MseMode::literal);
    NetworkState probe = scalar_state({std::sqrt(2.0)});
    CHECK(qf_at(f, probe) >= mse(0, probe, MseMode::literal));
}

TEST_CASE("sinr_concave_lb satisfies the surrogate conditions") {
    Rng rng(37);
    const double power = 6.0;
    for (int rep = 0; rep < 2; ++rep) {
        NetworkState exp_state = random_state(3, 2, 3, 1, power, rng);
        for (int k = 0; k < 3; ++k) {
            QuadraticFunctional f = sinr_concave_lb(k, exp_state);
            check_mm_conditions(
                f, [&](const NetworkState& s) { return sinr_single_stream(k, s); }, exp_state,
                power, /*is_lower=*/true, rng, 85);
        }
    }

    // no interference: reduces to the scalar ratio tangent
    NetworkState lone = scalar_state({1.3});
    QuadraticFunctional f = sinr_concave_lb(0, lone);
    RatioTangent t = ratio_quadratic_lb(Complex(1.3, 0.0), 1.0);
    NetworkState probe = scalar_state({0.7});
    CHECK(qf_at(f, probe) == doctest::Approx(t.value(Complex(0.7, 0.0), 1.0)));
}

TEST_CASE("power_quadratic") {
    Rng rng(38);
    NetworkState s = random_state(2, 2, 3, 2, 4.0, rng);
    SystemParams params;
    params.static_power = 1.5;
    params.amp_inefficiency = 2.0;
    QuadraticFunctional f = power_quadratic(1, s, params);
    CHECK(qf_at(f, s) == doctest::Approx(1.5 + 2.0 * s.beamformers[1].squaredNorm()));
}

TEST_CASE("snapshot") {
    Rng rng(39);
    NetworkState s = random_state(2, 2, 3, 1, 4.0, rng);
    SystemParams params;
    params.packet_bits = {128.0, 64.0};
    MetricSnapshot snap = snapshot(s, params);
    REQUIRE(snap.rate.size() == 2);
    CHECK(snap.rate[0] == doctest::Approx(fbl_rate(0, s, params)));
    CHECK(snap.rate[0] <= snap.shannon[0]);
    CHECK(snap.gee == doctest::Approx(gee(s, params)));
    CHECK(snap.sinr.size() == 2);
}
