#include "fmpkit/functional.hpp"

namespace fmpkit {

double QuadraticFunctional::value(std::span<const ComplexMatrix> vars) const {
    double acc = constant;
    for (const auto& term : linear) {
        acc += 2.0 * (term.coef.conjugate().cwiseProduct(vars[term.var])).sum().real();
    }
    for (const auto& k : kernels) {
        const ComplexMatrix& x = vars[k.var];
        acc += k.weight * (k.left * x * k.right * x.adjoint()).trace().real();
    }
    return acc;
}

ComplexMatrix QuadraticFunctional::gradient(int var, std::span<const ComplexMatrix> vars) const {
    ComplexMatrix g = ComplexMatrix::Zero(vars[var].rows(), vars[var].cols());
    for (const auto& term : linear) {
        if (term.var == var) g += term.coef;
    }
    for (const auto& k : kernels) {
        if (k.var == var) g += k.weight * (k.left * vars[var] * k.right);
    }
    return g;
}

Curvature QuadraticFunctional::curvature() const {
    bool has_pos = false;
    bool has_neg = false;
    for (const auto& k : kernels) {
        if (k.weight > 0) has_pos = true;
        if (k.weight < 0) has_neg = true;
    }
    if (has_pos && has_neg) return Curvature::indefinite;
    if (has_pos) return Curvature::convex;
    if (has_neg) return Curvature::concave;
    return Curvature::affine;
}

QuadraticFunctional& QuadraticFunctional::operator+=(const QuadraticFunctional& other) {
    constant += other.constant;
    linear.insert(linear.end(), other.linear.begin(), other.linear.end());
    kernels.insert(kernels.end(), other.kernels.begin(), other.kernels.end());
    return *this;
}

QuadraticFunctional& QuadraticFunctional::operator*=(double s) {
    constant *= s;
    for (auto& t : linear) t.coef *= s;
    for (auto& k : kernels) k.weight *= s;
    return *this;
}

void QuadraticFunctional::shift_vars(int offset) {
    for (auto& t : linear) t.var += offset;
    for (auto& k : kernels) k.var += offset;
}

QuadraticFunctional operator+(QuadraticFunctional a, const QuadraticFunctional& b) {
    a += b;
    return a;
}

QuadraticFunctional operator*(double s, QuadraticFunctional f) {
    f *= s;
    return f;
}

double AffineScalarFunctional::value(const RealVector& x) const {
    return constant + coef.dot(x - anchor);
}

}  // namespace fmpkit
