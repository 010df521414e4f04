#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "fmpkit/errors.hpp"

namespace fmpkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Hermitian matrix wrapper. Construction checks the entries against the
/// conjugate transpose (1e-12 relative) and stores the symmetrized form so
/// downstream factorizations see an exactly Hermitian operand.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& m);

    const ComplexMatrix& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

/// Identity helper for the common C = sigma^2 I covariances.
HermitianMatrix hermitian_identity(Eigen::Index dim, double scale = 1.0);

/// Natural log-determinant of a positive definite matrix via its Cholesky
/// factor. Throws NotPositiveDefinite when any pivot falls at or below 1e-14.
double logdet_pd(const HermitianMatrix& m);

/// Solves M X = B for positive definite M.
ComplexMatrix solve_pd(const HermitianMatrix& m, const ComplexMatrix& b);

/// Lower-triangular Cholesky factor of a positive definite matrix.
ComplexMatrix cholesky_pd(const HermitianMatrix& m);

/// Inverse of a positive definite matrix, returned as Hermitian.
HermitianMatrix inverse_pd(const HermitianMatrix& m);

/// Counter-based splittable generator (SplitMix64 core). Substreams derived
/// from (seed, index) reproduce identically regardless of draw order across
/// streams, so parallel trials match serial runs.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    Rng substream(std::uint64_t index) const;

    std::uint64_t next_u64();
    double uniform();            // [0, 1)
    double normal();             // standard normal, Box-Muller
    Complex complex_gaussian();  // proper complex, unit total variance
    ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

/// I.i.d. zero-mean proper complex Gaussian entries, variance 1/2 per
/// real/imaginary part. Deterministic for a fixed seed.
ComplexMatrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

}  // namespace fmpkit
