#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "fmpkit/bounds.hpp"
#include "helpers.hpp"

using namespace fmpkit;
using testutil::complex_directions;
using testutil::hermitian_directions;
using testutil::gradient_mismatch;

namespace {

double qf_value(const QuadraticFunctional& f, const ComplexMatrix& gamma,
                const ComplexMatrix& omega) {
    std::array<ComplexMatrix, 2> vars = {gamma, omega};
    return f.value(std::span<const ComplexMatrix>(vars.data(), 2));
}

}  // namespace

TEST_CASE("logdet_lb: equality, direction, gradient") {
    Rng rng(21);
    for (int dim = 1; dim <= 4; ++dim) {
        const int cols = 1 + (dim % 3);
        ComplexMatrix gamma_bar = rng.complex_gaussian_matrix(dim, cols);
        HermitianMatrix omega_bar = testutil::random_pd(dim, rng, 0.5);
        QuadraticFunctional f = logdet_lb(gamma_bar, omega_bar);

        const double truth = testutil::logdet_ratio_true(gamma_bar, omega_bar.mat());
        const double at_exp = qf_value(f, gamma_bar, omega_bar.mat());
        CHECK(std::abs(at_exp - truth) <= 1e-10 * std::max(1.0, std::abs(truth)));

        // kernel PSD: Cholesky succeeds after tiny ridge
        ComplexMatrix ridge = f.kernels[0].left + 1e-12 * ComplexMatrix::Identity(dim, dim);
        CHECK_NOTHROW(cholesky_pd(HermitianMatrix(ComplexMatrix(0.5 * (ridge + ridge.adjoint().eval())))));

        for (int rep = 0; rep < 125; ++rep) {
            ComplexMatrix gamma = gamma_bar + 0.7 * rng.complex_gaussian_matrix(dim, cols);
            HermitianMatrix omega = testutil::random_pd(dim, rng, 0.4);
            const double lhs = qf_value(f, gamma, omega.mat());
            const double rhs = testutil::logdet_ratio_true(gamma, omega.mat());
            CHECK(rhs - lhs >= -1e-9);
        }

        // gradient match via central differences of bound vs true
        std::vector<double> g_bound, g_true;
        const double h = 1e-5;
        for (const auto& d : complex_directions(dim, cols)) {
            g_bound.push_back(testutil::central_difference(
                [&](double t) { return qf_value(f, gamma_bar + t * d, omega_bar.mat()); }, h));
            g_true.push_back(testutil::central_difference(
                [&](double t) {
                    return testutil::logdet_ratio_true(gamma_bar + t * d, omega_bar.mat());
                },
                h));
        }
        for (const auto& d : hermitian_directions(dim)) {
            g_bound.push_back(testutil::central_difference(
                [&](double t) { return qf_value(f, gamma_bar, omega_bar.mat() + t * d); }, h));
            g_true.push_back(testutil::central_difference(
                [&](double t) {
                    return testutil::logdet_ratio_true(gamma_bar, omega_bar.mat() + t * d);
                },
                h));
        }
        CHECK(gradient_mismatch(g_bound, g_true) <= 1e-4);
    }
}

TEST_CASE("logdet_lb scalar value") {
    ComplexMatrix one(1, 1);
    one(0, 0) = 1.0;
    QuadraticFunctional f = logdet_lb(one, HermitianMatrix(one));
    CHECK(qf_value(f, one, one) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("trace_ratio_lb: equality, direction, gradient") {
    Rng rng(22);
    for (int dim = 1; dim <= 4; ++dim) {
        const int cols = 1 + ((dim + 1) % 3);
        ComplexMatrix gamma_bar = rng.complex_gaussian_matrix(dim, cols);
        HermitianMatrix omega_bar = testutil::random_pd(dim, rng, 0.5);
        QuadraticFunctional f = trace_ratio_lb(gamma_bar, omega_bar);

        const double truth = testutil::trace_ratio_true(gamma_bar, omega_bar.mat());
        CHECK(std::abs(qf_value(f, gamma_bar, omega_bar.mat()) - truth) <=
              1e-10 * std::max(1.0, std::abs(truth)));

        for (int rep = 0; rep < 125; ++rep) {
            ComplexMatrix gamma = gamma_bar + 0.7 * rng.complex_gaussian_matrix(dim, cols);
            HermitianMatrix omega = testutil::random_pd(dim, rng, 0.4);
            CHECK(testutil::trace_ratio_true(gamma, omega.mat()) -
                      qf_value(f, gamma, omega.mat()) >=
                  -1e-9);
        }

        std::vector<double> g_bound, g_true;
        const double h = 1e-5;
        for (const auto& d : complex_directions(dim, cols)) {
            g_bound.push_back(testutil::central_difference(
                [&](double t) { return qf_value(f, gamma_bar + t * d, omega_bar.mat()); }, h));
            g_true.push_back(testutil::central_difference(
                [&](double t) {
                    return testutil::trace_ratio_true(gamma_bar + t * d, omega_bar.mat());
                },
                h));
        }
        for (const auto& d : hermitian_directions(dim)) {
            g_bound.push_back(testutil::central_difference(
                [&](double t) { return qf_value(f, gamma_bar, omega_bar.mat() + t * d); }, h));
            g_true.push_back(testutil::central_difference(
                [&](double t) {
                    return testutil::trace_ratio_true(gamma_bar, omega_bar.mat() + t * d);
                },
                h));
        }
        CHECK(gradient_mismatch(g_bound, g_true) <= 1e-4);
    }
}

TEST_CASE("trace_ratio_lb scalar example") {
    ComplexMatrix one(1, 1), two(1, 1);
    one(0, 0) = 1.0;
    two(0, 0) = 2.0;
    QuadraticFunctional f = trace_ratio_lb(one, HermitianMatrix(one));
    CHECK(qf_value(f, two, one) == doctest::Approx(3.0));
    CHECK(testutil::trace_ratio_true(two, one) == doctest::Approx(4.0));
}

TEST_CASE("gm_upper_bound") {
    RealVector ones(2);
    ones << 1.0, 1.0;
    AffineScalarFunctional f = gm_upper_bound(ones);
    CHECK(f.value(ones) == doctest::Approx(1.0));

    RealVector xb(2), x(2);
    xb << 1.0, 4.0;
    x << 2.0, 4.0;
    AffineScalarFunctional g = gm_upper_bound(xb);
    CHECK(g.value(x) == doctest::Approx(3.0));
    CHECK(g.value(x) >= std::sqrt(8.0));

    Rng rng(23);
    for (int rep = 0; rep < 1000; ++rep) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 4);  // K <= 5
        RealVector anchor(k), sample(k);
        for (int i = 0; i < k; ++i) {
            anchor[i] = 0.05 + 3.0 * rng.uniform();
            sample[i] = 0.05 + 3.0 * rng.uniform();
        }
        AffineScalarFunctional b = gm_upper_bound(anchor);
        double gm = 1.0;
        for (int i = 0; i < k; ++i) gm *= std::pow(sample[i], 1.0 / k);
        CHECK(b.value(sample) - gm >= -1e-9);
        CHECK(std::abs(b.value(anchor) - std::pow(gm, 0.0) * b.constant) <= 1e-12);
    }

    RealVector bad(2);
    bad << 1.0, 0.0;
    CHECK_THROWS_AS(gm_upper_bound(bad), NonPositiveInput);

    // gradient match against the true geometric mean
    RealVector a(3);
    a << 0.7, 1.3, 2.1;
    AffineScalarFunctional b = gm_upper_bound(a);
    for (int i = 0; i < 3; ++i) {
        double fd = testutil::central_difference([&](double t) {
            RealVector y = a;
            y[i] += t;
            double gm = 1.0;
            for (int j = 0; j < 3; ++j) gm *= std::pow(y[j], 1.0 / 3.0);
            return gm;
        });
        CHECK(std::abs(fd - b.coef[i]) <= 1e-4 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("prod_square_lb") {
    RealVector ones(2);
    ones << 1.0, 1.0;
    CHECK(prod_square_lb(ones).value(ones) == doctest::Approx(1.0));

    RealVector xb(2), x(2);
    xb << 1.0, 2.0;
    x << 1.0, 3.0;
    CHECK(prod_square_lb(xb).value(x) == doctest::Approx(8.0));

    RealVector zero_anchor(2);
    zero_anchor << 0.0, 1.0;
    AffineScalarFunctional z = prod_square_lb(zero_anchor);
    RealVector probe(2);
    probe << 5.0, 7.0;
    CHECK(z.value(probe) == doctest::Approx(0.0).epsilon(1e-14));

    // gradient match against the true product of squares
    RealVector a(3);
    a << 0.6, 1.4, 0.9;
    AffineScalarFunctional b = prod_square_lb(a);
    for (int i = 0; i < 3; ++i) {
        double fd = testutil::central_difference([&](double t) {
            RealVector y = a;
            y[i] += t;
            double p = 1.0;
            for (int j = 0; j < 3; ++j) p *= y[j] * y[j];
            return p;
        });
        CHECK(std::abs(fd - b.coef[i]) <= 1e-4 * std::max(1.0, std::abs(fd)));
    }

    // the bound holds along scalings of the anchor
    Rng rng(24);
    for (int rep = 0; rep < 500; ++rep) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 3);
        RealVector anchor(k);
        for (int i = 0; i < k; ++i) anchor[i] = 0.1 + 2.0 * rng.uniform();
        const double t = 2.5 * rng.uniform();
        RealVector sample = t * anchor;
        double prod = 1.0;
        for (int i = 0; i < k; ++i) prod *= sample[i] * sample[i];
        CHECK(prod - prod_square_lb(anchor).value(sample) >= -1e-9);
    }
}

TEST_CASE("prod_square_lb is a tangent, not a global minorant") {
    // The product of squares is not jointly convex, so the tangent plane
    // overshoots off the scaling ray. Pin one such point.
    RealVector anchor(2), sample(2);
    anchor << 1.0, 1.0;
    sample << 1.1, 0.9;
    const double truth = std::pow(1.1 * 0.9, 2.0);
    CHECK(prod_square_lb(anchor).value(sample) > truth);
}

TEST_CASE("sum_abs_sq_lb") {
    ComplexVector xb(1), x(1);
    xb[0] = 1.0;
    x[0] = 1.0;
    CHECK(sum_abs_sq_lb(xb).value(x) == doctest::Approx(1.0));
    x[0] = 2.0;
    CHECK(sum_abs_sq_lb(xb).value(x) == doctest::Approx(3.0));
    x[0] = Complex(0, 1);
    CHECK(sum_abs_sq_lb(xb).value(x) == doctest::Approx(-1.0));

    Rng rng(25);
    for (int rep = 0; rep < 500; ++rep) {
        const int k = 1 + static_cast<int>(rng.next_u64() % 4);
        ComplexVector anchor(k), sample(k);
        for (int i = 0; i < k; ++i) {
            anchor[i] = rng.complex_gaussian();
            sample[i] = rng.complex_gaussian();
        }
        CHECK(sample.squaredNorm() - sum_abs_sq_lb(anchor).value(sample) >= -1e-9);
    }
}

TEST_CASE("ratio_quadratic_lb") {
    RatioTangent t = ratio_quadratic_lb(Complex(2, 0), 1.0);
    CHECK(t.value(Complex(2, 0), 1.0) == doctest::Approx(4.0));

    RatioTangent u = ratio_quadratic_lb(Complex(1, 0), 1.0);
    CHECK(u.value(Complex(3, 0), 2.0) == doctest::Approx(4.0));
    CHECK(u.value(Complex(3, 0), 2.0) <= 4.5);

    CHECK_THROWS_AS(ratio_quadratic_lb(Complex(1, 0), 0.0), NonPositiveDenominator);

    Rng rng(26);
    for (int rep = 0; rep < 1000; ++rep) {
        Complex xb = rng.complex_gaussian();
        double yb = 0.05 + 2.0 * rng.uniform();
        Complex x = rng.complex_gaussian();
        double y = 0.05 + 2.0 * rng.uniform();
        RatioTangent b = ratio_quadratic_lb(xb, yb);
        CHECK(std::norm(x) / y - b.value(x, y) >= -1e-9);
        CHECK(std::abs(b.value(xb, yb) - std::norm(xb) / yb) <= 1e-10 * std::max(1.0, std::norm(xb) / yb));
    }
}

TEST_CASE("tangent_sqrt_ub") {
    SqrtTangent t4 = tangent_sqrt_ub(4.0);
    CHECK(t4.value(4.0) == doctest::Approx(2.0));
    SqrtTangent t1 = tangent_sqrt_ub(1.0);
    CHECK(t1.value(4.0) == doctest::Approx(2.5));
    CHECK(t1.value(0.0) == doctest::Approx(0.5));

    Rng rng(27);
    for (int rep = 0; rep < 500; ++rep) {
        double anchor = 3.0 * rng.uniform() + 1e-6;
        double x = 4.0 * rng.uniform();
        SqrtTangent t = tangent_sqrt_ub(anchor);
        CHECK(t.value(x) - std::sqrt(x) >= -1e-9);
    }

    // clamped anchor keeps the tangent finite
    SqrtTangent t0 = tangent_sqrt_ub(0.0);
    CHECK(std::isfinite(t0.slope));
    CHECK(t0.value(1.0) >= 1.0);
}
