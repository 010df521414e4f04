#pragma once

#include "fmpkit/channel.hpp"
#include "fmpkit/problems.hpp"

namespace fmpkit {

/// Feasibility sets for the reflection coefficients: D caps the modulus at
/// one (convex), D1 pins it to one, D2 ties the amplitude to the phase
/// through a deterministic profile, D3 restricts phases to a finite grid.
enum class RisSetKind { D, D1, D2, D3 };

std::string to_string(RisSetKind set);
std::optional<RisSetKind> parse_ris_set(const std::string& name);

struct RisConfig {
    int elements = 20;
    RisSetKind set = RisSetKind::D;
    double min_modulus = 0.2;   // amplitude floor of the phase profile (D2)
    double sharpness = 1.0;     // profile exponent (D2)
    double phase_offset = 0.0;  // profile phase shift, radians (D2)
    int phase_count = 8;        // grid size (D3)
    std::vector<double> phase_grid_override;  // explicit grid; empty = i*2pi/I
    double relax_slack = 0.05;  // slack of the linearized unit-modulus bound
};

struct RisState {
    ComplexVector theta;  // diagonal entries of the reflection matrix
};

/// Effective channel G_k Theta G + G_tilde_k for one user.
ComplexMatrix effective_channel(const ComplexVector& theta, const ComplexMatrix& bs_to_ris,
                                const ComplexMatrix& ris_to_user, const ComplexMatrix& direct);

std::vector<ComplexMatrix> effective_channels(const ComplexVector& theta,
                                              const ChannelSet& channels);

/// Noise-normalized state over the RIS-combined channels (zero beamformers).
NetworkState make_ris_state(const ChannelSet& channels, const ComplexVector& theta);

/// Amplitude-vs-phase profile of set D2.
double amplitude_profile(double phase, const RisConfig& config);

/// D3 grid: the configured override, or i*2pi/I for i = 1..I.
std::vector<double> phase_grid(const RisConfig& config);

/// Projection onto the target set. D clamps the modulus, D1 normalizes
/// (zero maps to one), D2 re-imposes the amplitude profile, D3 snaps to the
/// closest grid phase by circular distance with ties to the smaller phase.
ComplexVector project(RisSetKind set, const ComplexVector& theta, const RisConfig& config);

bool in_set(const ComplexVector& theta, const RisConfig& config, double tol = 1e-12);

/// Concave lower bound of fbl_rate(k) in the reflection coefficients at
/// fixed beamformers. The effective channels are affine in theta, so the
/// log-det and trace bounds compose exactly as in beamformer space.
QuadraticFunctional rate_lb_in_theta(int k, const ComplexVector& theta_expansion,
                                     const ChannelSet& channels, const VarList& beamformers,
                                     const SystemParams& params);

/// Optimization context whose single variable is theta (elements x 1) with
/// the beamformers held fixed; the feasible set is the relaxed convex
/// superset of the configured reflection set.
OptimizationContext theta_context(const ChannelSet& channels, const VarList& beamformers,
                                  const SystemParams& params, const RisConfig& config);

/// Solves one relaxed convex subproblem in theta and returns the candidate
/// (possibly outside the target set; the caller projects and accepts).
ComplexVector theta_step(ProblemKind kind, const RisConfig& config, const ChannelSet& channels,
                         const VarList& beamformers, const ComplexVector& theta_expansion,
                         const SystemParams& params);

/// Keeps the candidate only when it does not worsen the true objective;
/// ties accept the candidate.
ComplexVector monotone_accept(const std::function<double(const ComplexVector&)>& objective,
                              Direction dir, const ComplexVector& previous,
                              const ComplexVector& candidate);

enum class RisMode { optimized, random, off };

std::string to_string(RisMode mode);
std::optional<RisMode> parse_ris_mode(const std::string& name);

struct AoOptions {
    double tolerance = 1e-4;
    int max_iterations = 200;
    std::uint64_t theta_seed = 0;  // random-mode phases
    MmOptions w_options;           // inner beamformer steps
};

struct AoResult {
    VarList beamformers;
    ComplexVector theta;         // empty in off mode
    std::vector<double> trace;   // true objective after every half-step
    int w_updates = 0;
    bool converged = false;
    double objective = 0.0;
};

/// Alternating optimization: one beamformer majorization step and one
/// projected theta step per outer iteration, each accepted only when the
/// true objective does not regress.
AoResult ao_driver(ProblemKind kind, const RisConfig& config, RisMode mode,
                   const ChannelSet& channels, const SystemParams& params, int streams,
                   const AoOptions& options = {});

}  // namespace fmpkit
