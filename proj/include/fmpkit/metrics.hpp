#pragma once

#include <vector>

#include "fmpkit/bounds.hpp"
#include "fmpkit/functional.hpp"

namespace fmpkit {

/// Reading of the per-user MSE: `literal` uses the interference-plus-noise
/// covariance in the inverse; `signal_inclusive` adds the desired-signal
/// covariance (the estimator-consistent variant). Literal is the default and
/// can be negative for strong signals.
enum class MseMode { literal, signal_inclusive };

struct SystemParams {
    double total_power = 10.0;      // watts
    double static_power = 1.0;      // watts, per user
    double amp_inefficiency = 1.0;  // >= 1
    double blocklength = 256.0;     // channel uses
    double error_prob = 1e-5;       // in (0, 0.5)
    std::vector<double> packet_bits;   // per user; empty = 256 bits each
    std::vector<double> rate_floors;   // nats/use per user; empty = none
    double tradeoff_alpha = 0.5;       // spectral-vs-energy weight in [0, 1]
    std::vector<double> user_weights;  // empty = all ones
    MseMode mse_mode = MseMode::literal;

    double packet_bit(int k) const { return packet_bits.empty() ? 256.0 : packet_bits.at(k); }
    double packet_nats(int k) const;
    double rate_floor(int k) const { return rate_floors.empty() ? 0.0 : rate_floors.at(k); }
    double user_weight(int k) const { return user_weights.empty() ? 1.0 : user_weights.at(k); }
    void validate(int users) const;
};

/// Channels, noise covariances and beamformers of one broadcast-channel
/// snapshot. H_k is N_u x N_BS, W_k is N_BS x d_k.
struct NetworkState {
    std::vector<ComplexMatrix> channels;
    std::vector<HermitianMatrix> noise_cov;
    std::vector<ComplexMatrix> beamformers;

    int user_count() const { return static_cast<int>(channels.size()); }
    Eigen::Index rx_dim(int k) const { return channels[k].rows(); }
    NetworkState with_beamformers(std::vector<ComplexMatrix> w) const;
};

double total_transmit_power(const NetworkState& state);

/// Desired-signal and interference-plus-noise covariances of user k.
struct SignalCovariances {
    HermitianMatrix signal;        // S_k
    HermitianMatrix interference;  // D_k
};
SignalCovariances signal_covariances(int k, const NetworkState& state);

double qfunc(double x);
/// Inverse Gaussian tail function, bisected on erfc to 1e-10 interval width.
double qfunc_inv(double eps);

double shannon_rate(int k, const NetworkState& state);
double dispersion(int k, const NetworkState& state);
double fbl_rate(int k, const NetworkState& state, const SystemParams& params);
double ee(int k, const NetworkState& state, const SystemParams& params);
double gee(const NetworkState& state, const SystemParams& params);
double delay(int k, const NetworkState& state, const SystemParams& params);
double sinr_single_stream(int k, const NetworkState& state);
double mse(int k, const NetworkState& state, MseMode mode = MseMode::literal);

struct MetricSnapshot {
    std::vector<double> shannon;     // nats/use
    std::vector<double> dispersion;  // dimensionless
    std::vector<double> rate;        // nats/use
    std::vector<double> ee;          // nats/use/watt
    std::vector<double> delay;       // channel uses (+inf when rate <= 0)
    std::vector<double> mse;
    std::vector<double> sinr;  // filled only for single-stream states
    double gee = 0.0;
};
MetricSnapshot snapshot(const NetworkState& state, const SystemParams& params);

// ---- surrogates in the beamformers ---------------------------------------
// Variable index j of each functional corresponds to W_j. All satisfy
// equality, bound direction and gradient match at the expansion state.

/// Concave lower bound of fbl_rate(k): log-det bound on the Shannon part
/// composed with the sqrt tangent of the dispersion upper bound.
QuadraticFunctional rate_concave_lb(int k, const NetworkState& expansion,
                                    const SystemParams& params);

/// Convex upper bound of dispersion(k).
QuadraticFunctional dispersion_ub(int k, const NetworkState& expansion);

/// Convex upper bound of mse(k).
QuadraticFunctional mse_ub(int k, const NetworkState& expansion, MseMode mode = MseMode::literal);

/// Concave lower bound of sinr_single_stream(k).
QuadraticFunctional sinr_concave_lb(int k, const NetworkState& expansion);

/// Consumed power of user k, P_s + eta Tr(W_k W_k^H), as a convex functional.
QuadraticFunctional power_quadratic(int k, const NetworkState& shape, const SystemParams& params);

}  // namespace fmpkit
