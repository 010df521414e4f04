#include "fmpkit/bounds.hpp"

#include <cmath>

namespace fmpkit {

LogdetBoundParts logdet_lb_parts(const ComplexMatrix& gamma_bar, const HermitianMatrix& omega_bar) {
    const Eigen::Index n = omega_bar.dim();
    if (gamma_bar.rows() != n) {
        throw DimensionMismatch("logdet_lb: gamma/omega dimension mismatch");
    }
    const ComplexMatrix omega_inv = inverse_pd(omega_bar).mat();
    const ComplexMatrix ggh = gamma_bar * gamma_bar.adjoint();
    const HermitianMatrix total(ComplexMatrix(omega_bar.mat() + ggh));
    const ComplexMatrix total_inv = inverse_pd(total).mat();

    LogdetBoundParts parts;
    parts.gamma_coef = omega_inv * gamma_bar;
    parts.kernel = 0.5 * ((omega_inv - total_inv) + (omega_inv - total_inv).adjoint().eval());
    parts.constant = logdet_pd(total) - logdet_pd(omega_bar) - (omega_inv * ggh).trace().real();
    return parts;
}

QuadraticFunctional logdet_lb(const ComplexMatrix& gamma_bar, const HermitianMatrix& omega_bar) {
    const LogdetBoundParts parts = logdet_lb_parts(gamma_bar, omega_bar);
    QuadraticFunctional f;
    f.constant = parts.constant;
    f.linear.push_back({0, parts.gamma_coef});
    f.linear.push_back({1, -0.5 * parts.kernel});
    f.kernels.push_back({0, parts.kernel,
                         ComplexMatrix::Identity(gamma_bar.cols(), gamma_bar.cols()), -1.0});
    return f;
}

TraceRatioParts trace_ratio_lb_parts(const ComplexMatrix& gamma_bar,
                                     const HermitianMatrix& omega_bar) {
    if (gamma_bar.rows() != omega_bar.dim()) {
        throw DimensionMismatch("trace_ratio_lb: gamma/omega dimension mismatch");
    }
    const ComplexMatrix omega_inv = inverse_pd(omega_bar).mat();
    TraceRatioParts parts;
    parts.gamma_coef = omega_inv * gamma_bar;
    ComplexMatrix m = parts.gamma_coef * parts.gamma_coef.adjoint();
    parts.omega_kernel = 0.5 * (m + m.adjoint().eval());
    return parts;
}

QuadraticFunctional trace_ratio_lb(const ComplexMatrix& gamma_bar,
                                   const HermitianMatrix& omega_bar) {
    const TraceRatioParts parts = trace_ratio_lb_parts(gamma_bar, omega_bar);
    QuadraticFunctional f;
    f.linear.push_back({0, parts.gamma_coef});
    f.linear.push_back({1, -0.5 * parts.omega_kernel});
    return f;
}

AffineScalarFunctional gm_upper_bound(const RealVector& x_bar) {
    const Eigen::Index k = x_bar.size();
    if (k < 2) {
        throw DimensionMismatch("gm_upper_bound: needs at least two terms");
    }
    double log_gm = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!(x_bar[i] > 0.0)) {
            throw NonPositiveInput("gm_upper_bound: anchor must be positive");
        }
        log_gm += std::log(x_bar[i]);
    }
    const double gm = std::exp(log_gm / static_cast<double>(k));

    AffineScalarFunctional f;
    f.constant = gm;
    f.anchor = x_bar;
    f.coef = RealVector(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        f.coef[i] = gm / (static_cast<double>(k) * x_bar[i]);
    }
    return f;
}

AffineScalarFunctional prod_square_lb(const RealVector& x_bar) {
    const Eigen::Index k = x_bar.size();
    for (Eigen::Index i = 0; i < k; ++i) {
        if (x_bar[i] < 0.0) {
            throw NonPositiveInput("prod_square_lb: anchor must be nonnegative");
        }
    }
    AffineScalarFunctional f;
    f.anchor = x_bar;
    f.coef = RealVector(k);
    double prod = 1.0;
    for (Eigen::Index i = 0; i < k; ++i) prod *= x_bar[i] * x_bar[i];
    f.constant = prod;
    for (Eigen::Index i = 0; i < k; ++i) {
        double rest = 1.0;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (j != i) rest *= x_bar[j] * x_bar[j];
        }
        f.coef[i] = 2.0 * x_bar[i] * rest;
    }
    return f;
}

ComplexAffineFunctional sum_abs_sq_lb(const ComplexVector& x_bar) {
    ComplexAffineFunctional f;
    f.coef = x_bar;
    f.constant = -x_bar.squaredNorm();
    return f;
}

RatioTangent ratio_quadratic_lb(Complex x_bar, double y_bar) {
    if (!(y_bar > 0.0)) {
        throw NonPositiveDenominator("ratio_quadratic_lb: anchor denominator must be positive");
    }
    RatioTangent t;
    t.x_coef = x_bar / y_bar;
    t.y_coef = -std::norm(x_bar) / (y_bar * y_bar);
    return t;
}

SqrtTangent tangent_sqrt_ub(double x_bar) {
    SqrtTangent t;
    t.anchor = std::max(x_bar, 1e-8);
    t.root = std::sqrt(t.anchor);
    t.slope = 0.5 / t.root;
    return t;
}

}  // namespace fmpkit
