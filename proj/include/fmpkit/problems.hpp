#pragma once

#include <memory>
#include <optional>

#include "fmpkit/channel.hpp"
#include "fmpkit/fmp.hpp"
#include "fmpkit/metrics.hpp"

namespace fmpkit {

enum class ProblemKind {
    sum_delay,
    gm_delay,
    sum_mse,
    maxmin_mse,
    see_gee,
    maxmin_see,
    wsee,
    gmee,
    wsum_sinr,
    maxmin_ee,
};

std::string to_string(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(const std::string& name);
Direction direction_of(ProblemKind kind);

/// Shared view of one optimization space. Both the beamformer problems and
/// the reflection-coefficient problems expose the same evaluators and
/// surrogate builders, so the catalogue below serves either space.
struct OptimizationContext {
    int users = 0;
    SystemParams params;
    std::function<NetworkState(const VarList&)> realize;
    std::function<QuadraticFunctional(int, const VarList&)> rate_lb;
    std::function<QuadraticFunctional(int, const VarList&)> mse_ub_fn;
    std::function<QuadraticFunctional(int, const VarList&)> sinr_lb;  // single-stream only
    std::function<QuadraticFunctional(int, const VarList&)> power_fn;
    FeasibleSet feasible;
};

/// Context whose variables are the beamformers of `channels`; the feasible
/// set is the transmit power ball.
OptimizationContext beamformer_context(const NetworkState& channels, const SystemParams& params);

FmpProblem make_problem(ProblemKind kind, OptimizationContext ctx);

/// Equal-power initialization along the leading right singular directions of
/// each user channel, scaled to meet the power ball with equality.
VarList initial_beamformers(const NetworkState& state, const SystemParams& params, int streams);

/// Rate floors used by the feasibility pre-phase of `kind` (QoS floors for
/// the energy-efficiency family, a small positive floor where positive rates
/// are structurally required, none otherwise).
std::vector<double> required_rate_floors(ProblemKind kind, const SystemParams& params, int users);

/// Runs the max-min rate pre-phase until the floors hold (at most 50
/// iterations); throws InfeasibleInit when they cannot be met.
VarList ensure_feasible_init(ProblemKind kind, const OptimizationContext& ctx, VarList init);

struct SolveSummary {
    VarList beamformers;
    MmTrace trace;
    double objective = 0.0;
};

/// Pre-phase + majorization-minimization for one kind in beamformer space.
SolveSummary solve_problem(ProblemKind kind, const NetworkState& channels,
                           const SystemParams& params, int streams, const MmOptions& options = {});

// ---- Dinkelbach-style baselines -------------------------------------------

struct BaselineResult {
    VarList beamformers;
    std::vector<double> trace;  // true objective after every outer iteration
    int updates = 0;            // number of beamformer updates (inner solves)
    double objective = 0.0;
};

/// Two-loop baseline for the max-min energy efficiency problem: an outer
/// bound refresh around the current iterate and an inner parametric loop
/// that alternates the level parameter with an epigraph solve.
BaselineResult gda_maxmin_ee(const OptimizationContext& ctx, const VarList& init, double delta1,
                             double delta2, int max_outer);

/// Two-loop baseline for global energy efficiency: classical single-ratio
/// parametric iteration nested in the same outer bound refresh.
BaselineResult dinkelbach_gee(const OptimizationContext& ctx, const VarList& init, double delta,
                              double delta2, int max_outer);

struct MethodRun {
    double objective = 0.0;
    int updates = 0;
    std::vector<double> trace;
};

struct ComparisonTrial {
    MethodRun framework;
    MethodRun baseline;
};

struct ComparisonReport {
    ProblemKind kind = ProblemKind::maxmin_ee;
    std::vector<ComparisonTrial> trials;

    double mean_framework_updates() const;
    double mean_baseline_updates() const;
    double mean_framework_objective() const;
    double mean_baseline_objective() const;
};

/// Runs framework and baseline on identical channels. `maxmin_ee` is paired
/// with the two-loop parametric baseline, `see_gee` (with alpha = 0) with
/// the single-ratio parametric baseline.
ComparisonReport compare_methods(ProblemKind kind, const ChannelParams& channel_params,
                                 const SystemParams& params, int trials, std::uint64_t seed,
                                 int streams, const MmOptions& options = {});

std::vector<ComparisonReport> compare_methods(const std::vector<ProblemKind>& kinds,
                                              const ChannelParams& channel_params,
                                              const SystemParams& params, int trials,
                                              std::uint64_t seed, int streams,
                                              const MmOptions& options = {});

}  // namespace fmpkit
