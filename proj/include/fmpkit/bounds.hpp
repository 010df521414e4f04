#pragma once

#include "fmpkit/functional.hpp"

namespace fmpkit {

/// Raw coefficients of the log-det lower bound around (gamma_bar, omega_bar):
///
///   ln|I + Omega^{-1} Gamma Gamma^H|
///     >= constant + 2 Re{Tr(gamma_coef^H Gamma)}
///        - Tr(kernel (Gamma Gamma^H + Omega))
///
/// `kernel` is Hermitian PSD; equality and gradient match hold at the
/// expansion point. Exposed separately so beamformer- and RIS-space
/// surrogates can be assembled from the same pieces.
struct LogdetBoundParts {
    double constant = 0.0;
    ComplexMatrix gamma_coef;  // omega_bar^{-1} gamma_bar
    ComplexMatrix kernel;      // omega_bar^{-1} - (gamma_bar gamma_bar^H + omega_bar)^{-1}
};

LogdetBoundParts logdet_lb_parts(const ComplexMatrix& gamma_bar, const HermitianMatrix& omega_bar);

/// Concave lower bound of ln|I + Omega^{-1} Gamma Gamma^H| as a functional in
/// variables (0 = Gamma, 1 = Omega).
QuadraticFunctional logdet_lb(const ComplexMatrix& gamma_bar, const HermitianMatrix& omega_bar);

/// Raw coefficients of the trace-ratio lower bound:
///
///   Tr(Omega^{-1} Gamma Gamma^H)
///     >= 2 Re{Tr(gamma_coef^H Gamma)} - Tr(omega_kernel Omega)
struct TraceRatioParts {
    ComplexMatrix gamma_coef;    // omega_bar^{-1} gamma_bar
    ComplexMatrix omega_kernel;  // omega_bar^{-1} gamma_bar gamma_bar^H omega_bar^{-1}, PSD
};

TraceRatioParts trace_ratio_lb_parts(const ComplexMatrix& gamma_bar,
                                     const HermitianMatrix& omega_bar);

/// Affine lower bound of Tr(Omega^{-1} Gamma Gamma^H) in variables
/// (0 = Gamma, 1 = Omega); equality at the expansion point.
QuadraticFunctional trace_ratio_lb(const ComplexMatrix& gamma_bar,
                                   const HermitianMatrix& omega_bar);

/// Tangent-plane upper bound of the geometric mean prod x_k^{1/K} on the
/// positive orthant. Requires all anchors positive and K > 1.
AffineScalarFunctional gm_upper_bound(const RealVector& x_bar);

/// Affine lower bound of prod x_k^2 on the nonnegative orthant.
AffineScalarFunctional prod_square_lb(const RealVector& x_bar);

/// Affine-in-x lower bound of sum |x_k|^2 for complex x.
struct ComplexAffineFunctional {
    double constant = 0.0;
    ComplexVector coef;
    double value(const ComplexVector& x) const {
        return constant + 2.0 * coef.dot(x).real();
    }
};

ComplexAffineFunctional sum_abs_sq_lb(const ComplexVector& x_bar);

/// Lower bound of |x|^2 / y for complex x and positive y:
///   value(x, y) = 2 Re{x_coef^* x} + y_coef * y
struct RatioTangent {
    Complex x_coef;
    double y_coef = 0.0;
    double value(Complex x, double y) const {
        return 2.0 * (std::conj(x_coef) * x).real() + y_coef * y;
    }
};

RatioTangent ratio_quadratic_lb(Complex x_bar, double y_bar);

/// Tangent upper bound of sqrt(x) at the (clamped) anchor:
///   value(x) = sqrt(anchor) + (x - anchor) / (2 sqrt(anchor)) >= sqrt(x)
struct SqrtTangent {
    double anchor = 1.0;
    double root = 1.0;
    double slope = 0.5;
    double value(double x) const { return root + (x - anchor) * slope; }
};

SqrtTangent tangent_sqrt_ub(double x_bar);

}  // namespace fmpkit
