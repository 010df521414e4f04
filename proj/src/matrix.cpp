#include "fmpkit/matrix.hpp"

#include <cmath>
#include <numbers>

namespace fmpkit {

namespace {

constexpr double kPivotTolerance = 1e-14;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("hermitian matrix must be square");
    }
    const double scale = std::max(1.0, m.norm());
    const double asymmetry = (m - m.adjoint()).norm();
    if (!(asymmetry <= 1e-12 * scale) || !m.allFinite()) {
        throw DimensionMismatch("matrix is not Hermitian within tolerance");
    }
    m_ = 0.5 * (m + m.adjoint().eval());
}

HermitianMatrix hermitian_identity(Eigen::Index dim, double scale) {
    return HermitianMatrix(ComplexMatrix(scale * ComplexMatrix::Identity(dim, dim)));
}

namespace {

// Dense complex Cholesky with an explicit pivot gate; the single PD check
// used across the library.
ComplexMatrix cholesky_impl(const ComplexMatrix& a) {
    const Eigen::Index n = a.rows();
    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double diag = a(j, j).real();
        for (Eigen::Index k = 0; k < j; ++k) {
            diag -= std::norm(l(j, k));
        }
        if (!(diag > kPivotTolerance)) {
            throw NotPositiveDefinite("pivot " + std::to_string(j) + " is " + std::to_string(diag));
        }
        const double pivot = std::sqrt(diag);
        l(j, j) = pivot;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            Complex v = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) {
                v -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = v / pivot;
        }
    }
    return l;
}

}  // namespace

ComplexMatrix cholesky_pd(const HermitianMatrix& m) { return cholesky_impl(m.mat()); }

double logdet_pd(const HermitianMatrix& m) {
    const ComplexMatrix l = cholesky_impl(m.mat());
    double acc = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        acc += std::log(l(i, i).real());
    }
    return 2.0 * acc;
}

ComplexMatrix solve_pd(const HermitianMatrix& m, const ComplexMatrix& b) {
    if (m.dim() != b.rows()) {
        throw DimensionMismatch("solve_pd: incompatible dimensions");
    }
    const ComplexMatrix l = cholesky_impl(m.mat());
    ComplexMatrix y = l.triangularView<Eigen::Lower>().solve(b);
    return l.adjoint().triangularView<Eigen::Upper>().solve(y);
}

HermitianMatrix inverse_pd(const HermitianMatrix& m) {
    ComplexMatrix inv = solve_pd(m, ComplexMatrix::Identity(m.dim(), m.dim()));
    return HermitianMatrix(ComplexMatrix(0.5 * (inv + inv.adjoint().eval())));
}

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(mix64(seed + kGolden)) {}

Rng Rng::substream(std::uint64_t index) const {
    return Rng(mix64(seed_ + kGolden * (index + 1)));
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_gaussian() {
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return Complex(r * std::cos(phi), r * std::sin(phi));
}

ComplexMatrix Rng::complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            out(i, j) = complex_gaussian();
        }
    }
    return out;
}

ComplexMatrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) {
        throw DimensionMismatch("random_complex_gaussian: dimensions must be >= 1");
    }
    return Rng(seed).complex_gaussian_matrix(rows, cols);
}

}  // namespace fmpkit
