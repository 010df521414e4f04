#pragma once

#include <span>
#include <vector>

#include "fmpkit/matrix.hpp"

namespace fmpkit {

/// One quadratic kernel term: weight * Tr(left * X_var * right * X_var^H),
/// with `left` and `right` Hermitian PSD. The sign of `weight` carries the
/// curvature: positive terms are convex in X_var, negative terms concave.
struct KernelTerm {
    int var = 0;
    ComplexMatrix left;
    ComplexMatrix right;
    double weight = 1.0;
};

/// One linear term: 2 Re{Tr(coef^H X_var)}.
struct LinearTerm {
    int var = 0;
    ComplexMatrix coef;
};

enum class Curvature { affine, convex, concave, indefinite };

/// Real-valued affine/quadratic functional over a list of complex matrix
/// variables:
///
///   value({X}) = constant + sum 2 Re{Tr(coef^H X)} + sum w Tr(L X R X^H)
///
/// Kept as structured coefficients so subproblem assembly can read off
/// convexity and Hessians instead of re-differentiating closures.
struct QuadraticFunctional {
    double constant = 0.0;
    std::vector<LinearTerm> linear;
    std::vector<KernelTerm> kernels;

    double value(std::span<const ComplexMatrix> vars) const;

    /// Conjugate (Wirtinger) gradient with respect to X_var, so that
    /// value(X + dX) ~ value(X) + 2 Re{Tr(grad^H dX)}.
    ComplexMatrix gradient(int var, std::span<const ComplexMatrix> vars) const;

    Curvature curvature() const;

    QuadraticFunctional& operator+=(const QuadraticFunctional& other);
    QuadraticFunctional& operator*=(double s);

    /// Re-maps variable indices, e.g. when embedding into a larger problem.
    void shift_vars(int offset);
};

QuadraticFunctional operator+(QuadraticFunctional a, const QuadraticFunctional& b);
QuadraticFunctional operator*(double s, QuadraticFunctional f);

/// Affine functional over real scalar coordinates:
///   value(x) = constant + sum coef_k (x_k - anchor_k)
struct AffineScalarFunctional {
    double constant = 0.0;
    RealVector coef;
    RealVector anchor;

    double value(const RealVector& x) const;
};

}  // namespace fmpkit
