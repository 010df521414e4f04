#include "fmpkit/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fmpkit {

namespace {

ComplexMatrix symmetrized(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint().eval()); }

double noise_variance_scalar(const HermitianMatrix& c) {
    return c.mat().trace().real() / static_cast<double>(c.dim());
}

}  // namespace

double SystemParams::packet_nats(int k) const { return packet_bit(k) * std::numbers::ln2; }

void SystemParams::validate(int users) const {
    if (!(total_power > 0.0)) throw OutOfRange("total_power must be positive");
    if (!(blocklength >= 1.0)) throw OutOfRange("blocklength must be >= 1");
    if (!(error_prob > 0.0 && error_prob < 0.5)) throw OutOfRange("error_prob must be in (0, 0.5)");
    if (!(amp_inefficiency >= 1.0)) throw OutOfRange("amp_inefficiency must be >= 1");
    for (int k = 0; k < users; ++k) {
        if (!(packet_bit(k) > 0.0)) throw OutOfRange("packet length must be positive");
        if (!std::isfinite(user_weight(k))) throw OutOfRange("weight must be finite");
    }
}

NetworkState NetworkState::with_beamformers(std::vector<ComplexMatrix> w) const {
    NetworkState out = *this;
    out.beamformers = std::move(w);
    return out;
}

double total_transmit_power(const NetworkState& state) {
    double p = 0.0;
    for (const auto& w : state.beamformers) p += w.squaredNorm();
    return p;
}

SignalCovariances signal_covariances(int k, const NetworkState& state) {
    const ComplexMatrix& h = state.channels[k];
    ComplexMatrix s = h * state.beamformers[k];
    ComplexMatrix d = state.noise_cov[k].mat();
    for (int j = 0; j < state.user_count(); ++j) {
        if (j == k) continue;
        ComplexMatrix x = h * state.beamformers[j];
        d += x * x.adjoint();
    }
    return {HermitianMatrix(symmetrized(s * s.adjoint())), HermitianMatrix(symmetrized(d))};
}

double qfunc(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double qfunc_inv(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw OutOfRange("qfunc_inv: argument must be in (0, 1)");
    double lo = -40.0, hi = 40.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (qfunc(mid) > eps) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double shannon_rate(int k, const NetworkState& state) {
    const auto cov = signal_covariances(k, state);
    const HermitianMatrix total(ComplexMatrix(cov.interference.mat() + cov.signal.mat()));
    return logdet_pd(total) - logdet_pd(cov.interference);
}

double dispersion(int k, const NetworkState& state) {
    const auto cov = signal_covariances(k, state);
    const HermitianMatrix total(ComplexMatrix(cov.interference.mat() + cov.signal.mat()));
    return 2.0 * solve_pd(total, cov.signal.mat()).trace().real();
}

double fbl_rate(int k, const NetworkState& state, const SystemParams& params) {
    const double penalty =
        qfunc_inv(params.error_prob) * std::sqrt(dispersion(k, state) / params.blocklength);
    return shannon_rate(k, state) - penalty;
}

double ee(int k, const NetworkState& state, const SystemParams& params) {
    const double p =
        params.static_power + params.amp_inefficiency * state.beamformers[k].squaredNorm();
    return fbl_rate(k, state, params) / p;
}

double gee(const NetworkState& state, const SystemParams& params) {
    double rates = 0.0, power = 0.0;
    for (int k = 0; k < state.user_count(); ++k) {
        rates += fbl_rate(k, state, params);
        power += params.static_power +
                 params.amp_inefficiency * state.beamformers[k].squaredNorm();
    }
    return rates / power;
}

double delay(int k, const NetworkState& state, const SystemParams& params) {
    const double r = fbl_rate(k, state, params);
    if (!(r > 0.0)) throw NonPositiveRate("delay: rate of user " + std::to_string(k));
    return params.packet_nats(k) / r;
}

double sinr_single_stream(int k, const NetworkState& state) {
    if (state.beamformers[k].cols() != 1) {
        throw MultiStreamNotSupported("sinr is defined for single-stream beamformers");
    }
    const ComplexMatrix& h = state.channels[k];
    double den = noise_variance_scalar(state.noise_cov[k]);
    for (int j = 0; j < state.user_count(); ++j) {
        if (j == k) continue;
        den += (h * state.beamformers[j]).squaredNorm();
    }
    return (h * state.beamformers[k]).squaredNorm() / den;
}

double mse(int k, const NetworkState& state, MseMode mode) {
    const auto cov = signal_covariances(k, state);
    const double nu = static_cast<double>(state.rx_dim(k));
    if (mode == MseMode::literal) {
        return nu - solve_pd(cov.interference, cov.signal.mat()).trace().real();
    }
    const HermitianMatrix total(ComplexMatrix(cov.interference.mat() + cov.signal.mat()));
    return nu - solve_pd(total, cov.signal.mat()).trace().real();
}

MetricSnapshot snapshot(const NetworkState& state, const SystemParams& params) {
    MetricSnapshot snap;
    const int users = state.user_count();
    bool single_stream = true;
    for (int k = 0; k < users; ++k) {
        if (state.beamformers[k].cols() != 1) single_stream = false;
    }
    const double qinv = qfunc_inv(params.error_prob);
    for (int k = 0; k < users; ++k) {
        snap.shannon.push_back(shannon_rate(k, state));
        snap.dispersion.push_back(dispersion(k, state));
        const double r =
            snap.shannon.back() - qinv * std::sqrt(snap.dispersion.back() / params.blocklength);
        snap.rate.push_back(r);
        snap.ee.push_back(r / (params.static_power +
                               params.amp_inefficiency * state.beamformers[k].squaredNorm()));
        snap.delay.push_back(r > 0.0 ? params.packet_nats(k) / r
                                     : std::numeric_limits<double>::infinity());
        snap.mse.push_back(mse(k, state, params.mse_mode));
        if (single_stream) snap.sinr.push_back(sinr_single_stream(k, state));
    }
    snap.gee = gee(state, params);
    return snap;
}

// ---- surrogate builders ---------------------------------------------------

QuadraticFunctional dispersion_ub(int k, const NetworkState& expansion) {
    const int users = expansion.user_count();
    const ComplexMatrix& h = expansion.channels[k];
    const double nu = static_cast<double>(expansion.rx_dim(k));
    const auto cov = signal_covariances(k, expansion);
    const HermitianMatrix omega_bar(ComplexMatrix(cov.interference.mat() + cov.signal.mat()));

    // Gamma stacks the noise square root with the interfering streams so that
    // Gamma Gamma^H equals the interference-plus-noise covariance.
    const ComplexMatrix noise_root = cholesky_pd(expansion.noise_cov[k]);
    std::vector<ComplexMatrix> blocks;
    Eigen::Index total_cols = noise_root.cols();
    blocks.push_back(noise_root);
    for (int j = 0; j < users; ++j) {
        if (j == k) continue;
        blocks.push_back(h * expansion.beamformers[j]);
        total_cols += blocks.back().cols();
    }
    ComplexMatrix gamma_bar(expansion.rx_dim(k), total_cols);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        gamma_bar.middleCols(at, b.cols()) = b;
        at += b.cols();
    }

    const TraceRatioParts parts = trace_ratio_lb_parts(gamma_bar, omega_bar);
    const ComplexMatrix kernel = symmetrized(h.adjoint() * parts.omega_kernel * h);

    QuadraticFunctional f;
    f.constant =
        2.0 * nu -
        4.0 * (parts.gamma_coef.leftCols(noise_root.cols()).conjugate().cwiseProduct(noise_root))
                  .sum()
                  .real() +
        2.0 * (parts.omega_kernel * expansion.noise_cov[k].mat()).trace().real();
    at = noise_root.cols();
    for (int j = 0; j < users; ++j) {
        if (j == k) continue;
        const Eigen::Index cols = expansion.beamformers[j].cols();
        f.linear.push_back({j, -2.0 * (h.adjoint() * parts.gamma_coef.middleCols(at, cols))});
        at += cols;
    }
    for (int j = 0; j < users; ++j) {
        const Eigen::Index dj = expansion.beamformers[j].cols();
        f.kernels.push_back({j, kernel, ComplexMatrix::Identity(dj, dj), 2.0});
    }
    return f;
}

QuadraticFunctional rate_concave_lb(int k, const NetworkState& expansion,
                                    const SystemParams& params) {
    const int users = expansion.user_count();
    const ComplexMatrix& h = expansion.channels[k];
    const auto cov = signal_covariances(k, expansion);
    const ComplexMatrix gamma_bar = h * expansion.beamformers[k];
    const LogdetBoundParts ld = logdet_lb_parts(gamma_bar, cov.interference);
    const ComplexMatrix kernel = symmetrized(h.adjoint() * ld.kernel * h);

    QuadraticFunctional f;
    f.constant = ld.constant - (ld.kernel * expansion.noise_cov[k].mat()).trace().real();
    f.linear.push_back({k, h.adjoint() * ld.gamma_coef});
    for (int j = 0; j < users; ++j) {
        const Eigen::Index dj = expansion.beamformers[j].cols();
        f.kernels.push_back({j, kernel, ComplexMatrix::Identity(dj, dj), -1.0});
    }

    const double v_bar = dispersion(k, expansion);
    const SqrtTangent tangent = tangent_sqrt_ub(v_bar);
    const double scale = qfunc_inv(params.error_prob) / std::sqrt(params.blocklength);

    QuadraticFunctional v_ub = dispersion_ub(k, expansion);
    v_ub *= -scale * tangent.slope;
    f += v_ub;
    f.constant -= scale * (tangent.root - tangent.anchor * tangent.slope);
    return f;
}

QuadraticFunctional mse_ub(int k, const NetworkState& expansion, MseMode mode) {
    const int users = expansion.user_count();
    const ComplexMatrix& h = expansion.channels[k];
    const double nu = static_cast<double>(expansion.rx_dim(k));
    const auto cov = signal_covariances(k, expansion);
    const HermitianMatrix omega_bar =
        mode == MseMode::literal
            ? cov.interference
            : HermitianMatrix(ComplexMatrix(cov.interference.mat() + cov.signal.mat()));

    const ComplexMatrix gamma_bar = h * expansion.beamformers[k];
    const TraceRatioParts parts = trace_ratio_lb_parts(gamma_bar, omega_bar);
    const ComplexMatrix kernel = symmetrized(h.adjoint() * parts.omega_kernel * h);

    QuadraticFunctional f;
    f.constant = nu + (parts.omega_kernel * expansion.noise_cov[k].mat()).trace().real();
    f.linear.push_back({k, -(h.adjoint() * parts.gamma_coef)});
    for (int j = 0; j < users; ++j) {
        if (mode == MseMode::literal && j == k) continue;
        const Eigen::Index dj = expansion.beamformers[j].cols();
        f.kernels.push_back({j, kernel, ComplexMatrix::Identity(dj, dj), 1.0});
    }
    return f;
}

QuadraticFunctional sinr_concave_lb(int k, const NetworkState& expansion) {
    const int users = expansion.user_count();
    for (int j = 0; j < users; ++j) {
        if (expansion.beamformers[j].cols() != 1) {
            throw MultiStreamNotSupported("sinr surrogate needs single-stream beamformers");
        }
    }
    const ComplexMatrix& h = expansion.channels[k];
    const double sigma2 = noise_variance_scalar(expansion.noise_cov[k]);
    double den = sigma2;
    for (int j = 0; j < users; ++j) {
        if (j == k) continue;
        den += (h * expansion.beamformers[j]).squaredNorm();
    }
    const double num = (h * expansion.beamformers[k]).squaredNorm();
    const ComplexMatrix gram = symmetrized(h.adjoint() * h);

    QuadraticFunctional f;
    f.constant = -(num / (den * den)) * sigma2;
    f.linear.push_back({k, (h.adjoint() * (h * expansion.beamformers[k])) / den});
    for (int j = 0; j < users; ++j) {
        if (j == k) continue;
        f.kernels.push_back({j, gram, ComplexMatrix::Identity(1, 1), -num / (den * den)});
    }
    return f;
}

QuadraticFunctional power_quadratic(int k, const NetworkState& shape,
                                    const SystemParams& params) {
    const Eigen::Index rows = shape.beamformers[k].rows();
    const Eigen::Index cols = shape.beamformers[k].cols();
    QuadraticFunctional f;
    f.constant = params.static_power;
    f.kernels.push_back({k, ComplexMatrix::Identity(rows, rows),
                         ComplexMatrix::Identity(cols, cols), params.amp_inefficiency});
    return f;
}

}  // namespace fmpkit
