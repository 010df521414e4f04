#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <functional>
#include <vector>

#include "fmpkit/matrix.hpp"
#include "fmpkit/metrics.hpp"

namespace testutil {

using fmpkit::Complex;
using fmpkit::ComplexMatrix;
using fmpkit::HermitianMatrix;
using fmpkit::Rng;

inline HermitianMatrix random_pd(Eigen::Index dim, Rng& rng, double ridge = 0.1) {
    ComplexMatrix x = rng.complex_gaussian_matrix(dim, dim);
    ComplexMatrix m = x * x.adjoint() + ridge * ComplexMatrix::Identity(dim, dim);
    return HermitianMatrix(ComplexMatrix(0.5 * (m + m.adjoint().eval())));
}

// Independent oracle: Re log det via LU, valid for non-Hermitian arguments.
inline double logdet_lu(const ComplexMatrix& m) {
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    Complex det = lu.determinant();
    return std::log(std::abs(det));
}

inline double logdet_ratio_true(const ComplexMatrix& gamma, const ComplexMatrix& omega) {
    const Eigen::Index n = omega.rows();
    return logdet_lu(omega + gamma * gamma.adjoint()) - logdet_lu(omega);
    (void)n;
}

inline double trace_ratio_true(const ComplexMatrix& gamma, const ComplexMatrix& omega) {
    Eigen::PartialPivLU<ComplexMatrix> lu(omega);
    return (lu.solve(gamma * gamma.adjoint())).trace().real();
}

// Real coordinate directions spanning an arbitrary complex matrix.
inline std::vector<ComplexMatrix> complex_directions(Eigen::Index rows, Eigen::Index cols) {
    std::vector<ComplexMatrix> dirs;
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            ComplexMatrix e = ComplexMatrix::Zero(rows, cols);
            e(i, j) = Complex(1, 0);
            dirs.push_back(e);
            e(i, j) = Complex(0, 1);
            dirs.push_back(e);
        }
    }
    return dirs;
}

// Real coordinate directions spanning Hermitian matrices.
inline std::vector<ComplexMatrix> hermitian_directions(Eigen::Index dim) {
    std::vector<ComplexMatrix> dirs;
    for (Eigen::Index i = 0; i < dim; ++i) {
        ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
        e(i, i) = 1.0;
        dirs.push_back(e);
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
            e(i, j) = 1.0;
            e(j, i) = 1.0;
            dirs.push_back(e);
            e(i, j) = Complex(0, 1);
            e(j, i) = Complex(0, -1);
            dirs.push_back(e);
        }
    }
    return dirs;
}

inline double central_difference(const std::function<double(double)>& f, double h = 1e-5) {
    return (f(h) - f(-h)) / (2.0 * h);
}

// Random broadcast-channel state: Gaussian channels, isotropic noise, and
// beamformers scaled onto the power-ball boundary.
inline fmpkit::NetworkState random_state(int users, Eigen::Index n_rx, Eigen::Index n_tx,
                                         Eigen::Index streams, double power, Rng& rng,
                                         double noise_var = 1.0) {
    fmpkit::NetworkState state;
    for (int k = 0; k < users; ++k) {
        state.channels.push_back(rng.complex_gaussian_matrix(n_rx, n_tx));
        state.noise_cov.push_back(fmpkit::hermitian_identity(n_rx, noise_var));
        state.beamformers.push_back(rng.complex_gaussian_matrix(n_tx, streams));
    }
    double total = fmpkit::total_transmit_power(state);
    for (auto& w : state.beamformers) w *= std::sqrt(power / total);
    return state;
}

// Relative match of two gradient vectors.
inline double gradient_mismatch(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, norm = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        norm += b[i] * b[i];
    }
    return std::sqrt(diff) / std::max(std::sqrt(norm), 1e-6);
}

}  // namespace testutil
