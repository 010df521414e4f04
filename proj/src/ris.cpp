#include "fmpkit/ris.hpp"

#include <cmath>
#include <numbers>

namespace fmpkit {

namespace {

ComplexMatrix symmetrized(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint().eval()); }

double wrap_angle(double a) {
    while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

// Tr(K (U Theta V + E)(U Theta V + E)^H) over theta (variable 0), K PSD.
QuadraticFunctional quad_in_theta(const ComplexMatrix& kern, const ComplexMatrix& u,
                                  const ComplexMatrix& v, const ComplexMatrix& e, double weight) {
    QuadraticFunctional f;
    const ComplexMatrix a = u.adjoint() * kern * u;       // M x M
    const ComplexMatrix c = v * v.adjoint();              // M x M
    ComplexMatrix q = a.cwiseProduct(c.transpose());
    f.kernels.push_back({0, symmetrized(q), ComplexMatrix::Identity(1, 1), weight});
    const ComplexMatrix cross = v * e.adjoint() * kern * u;  // M x M, need its diagonal
    ComplexMatrix coef(cross.rows(), 1);
    for (Eigen::Index m = 0; m < cross.rows(); ++m) coef(m, 0) = std::conj(cross(m, m));
    f.linear.push_back({0, weight * coef});
    f.constant = weight * (kern * e * e.adjoint()).trace().real();
    return f;
}

// 2 Re{Tr(R^H (U Theta V + E))} over theta (variable 0).
QuadraticFunctional affine_in_theta(const ComplexMatrix& r, const ComplexMatrix& u,
                                    const ComplexMatrix& v, const ComplexMatrix& e,
                                    double weight) {
    QuadraticFunctional f;
    const ComplexMatrix cross = v * r.adjoint() * u;  // M x M
    ComplexMatrix coef(cross.rows(), 1);
    for (Eigen::Index m = 0; m < cross.rows(); ++m) coef(m, 0) = std::conj(cross(m, m));
    f.linear.push_back({0, weight * coef});
    f.constant = weight * 2.0 * (r.conjugate().cwiseProduct(e)).sum().real();
    return f;
}

}  // namespace

std::string to_string(RisSetKind set) {
    switch (set) {
        case RisSetKind::D: return "D";
        case RisSetKind::D1: return "D1";
        case RisSetKind::D2: return "D2";
        case RisSetKind::D3: return "D3";
    }
    return "unknown";
}

std::optional<RisSetKind> parse_ris_set(const std::string& name) {
    for (RisSetKind s : {RisSetKind::D, RisSetKind::D1, RisSetKind::D2, RisSetKind::D3}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::string to_string(RisMode mode) {
    switch (mode) {
        case RisMode::optimized: return "optimized";
        case RisMode::random: return "random";
        case RisMode::off: return "off";
    }
    return "unknown";
}

std::optional<RisMode> parse_ris_mode(const std::string& name) {
    for (RisMode m : {RisMode::optimized, RisMode::random, RisMode::off}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

ComplexMatrix effective_channel(const ComplexVector& theta, const ComplexMatrix& bs_to_ris,
                                const ComplexMatrix& ris_to_user, const ComplexMatrix& direct) {
    if (ris_to_user.cols() != theta.size() || bs_to_ris.rows() != theta.size() ||
        direct.rows() != ris_to_user.rows() || direct.cols() != bs_to_ris.cols()) {
        throw DimensionMismatch("effective_channel: incompatible dimensions");
    }
    return ris_to_user * theta.asDiagonal() * bs_to_ris + direct;
}

std::vector<ComplexMatrix> effective_channels(const ComplexVector& theta,
                                              const ChannelSet& channels) {
    std::vector<ComplexMatrix> out;
    for (size_t k = 0; k < channels.direct.size(); ++k) {
        out.push_back(effective_channel(theta, channels.bs_to_ris, channels.ris_to_user[k],
                                        channels.direct[k]));
    }
    return out;
}

NetworkState make_ris_state(const ChannelSet& channels, const ComplexVector& theta) {
    NetworkState state;
    const double sigma = std::sqrt(channels.noise_power);
    for (const auto& h : effective_channels(theta, channels)) {
        state.channels.push_back(h / sigma);
        state.noise_cov.push_back(hermitian_identity(h.rows()));
        state.beamformers.push_back(ComplexMatrix::Zero(h.cols(), 1));
    }
    return state;
}

double amplitude_profile(double phase, const RisConfig& config) {
    const double base = 0.5 * (std::sin(phase - config.phase_offset) + 1.0);
    return config.min_modulus + (1.0 - config.min_modulus) * std::pow(base, config.sharpness);
}

std::vector<double> phase_grid(const RisConfig& config) {
    if (!config.phase_grid_override.empty()) return config.phase_grid_override;
    std::vector<double> grid;
    for (int i = 1; i <= config.phase_count; ++i) {
        grid.push_back(i * 2.0 * std::numbers::pi / config.phase_count);
    }
    return grid;
}

ComplexVector project(RisSetKind set, const ComplexVector& theta, const RisConfig& config) {
    ComplexVector out = theta;
    switch (set) {
        case RisSetKind::D:
            for (Eigen::Index m = 0; m < out.size(); ++m) {
                const double mag = std::abs(out[m]);
                if (mag > 1.0) out[m] /= mag;
            }
            break;
        case RisSetKind::D1:
            // zero maps to 1+0j (arg(0) = 0); same code path as the
            // profile projection so a unit profile reproduces D1 exactly
            for (Eigen::Index m = 0; m < out.size(); ++m) {
                out[m] = std::polar(1.0, std::arg(out[m]));
            }
            break;
        case RisSetKind::D2:
            for (Eigen::Index m = 0; m < out.size(); ++m) {
                const double phase = std::arg(out[m]);
                out[m] = std::polar(amplitude_profile(phase, config), phase);
            }
            break;
        case RisSetKind::D3: {
            const std::vector<double> grid = phase_grid(config);
            for (Eigen::Index m = 0; m < out.size(); ++m) {
                const double phase = std::arg(out[m]);
                double best_phase = grid.front();
                double best_dist = std::abs(wrap_angle(phase - grid.front()));
                for (double g : grid) {
                    const double dist = std::abs(wrap_angle(phase - g));
                    if (dist < best_dist - 1e-15) {
                        best_dist = dist;
                        best_phase = g;
                    } else if (std::abs(dist - best_dist) <= 1e-15 && g < best_phase) {
                        best_phase = g;
                    }
                }
                out[m] = std::polar(1.0, best_phase);
            }
            break;
        }
    }
    return out;
}

bool in_set(const ComplexVector& theta, const RisConfig& config, double tol) {
    switch (config.set) {
        case RisSetKind::D:
            for (Eigen::Index m = 0; m < theta.size(); ++m) {
                if (std::norm(theta[m]) > 1.0 + tol) return false;
            }
            return true;
        case RisSetKind::D1:
            for (Eigen::Index m = 0; m < theta.size(); ++m) {
                if (std::abs(std::abs(theta[m]) - 1.0) > tol) return false;
            }
            return true;
        case RisSetKind::D2:
            for (Eigen::Index m = 0; m < theta.size(); ++m) {
                const double want = amplitude_profile(std::arg(theta[m]), config);
                if (std::abs(std::abs(theta[m]) - want) > tol) return false;
            }
            return true;
        case RisSetKind::D3: {
            const std::vector<double> grid = phase_grid(config);
            for (Eigen::Index m = 0; m < theta.size(); ++m) {
                if (std::abs(std::abs(theta[m]) - 1.0) > tol) return false;
                double best = 1e300;
                for (double g : grid) {
                    best = std::min(best, std::abs(wrap_angle(std::arg(theta[m]) - g)));
                }
                if (best > tol) return false;
            }
            return true;
        }
    }
    return false;
}

QuadraticFunctional rate_lb_in_theta(int k, const ComplexVector& theta_expansion,
                                     const ChannelSet& channels, const VarList& beamformers,
                                     const SystemParams& params) {
    const int users = static_cast<int>(channels.direct.size());
    const double sigma = std::sqrt(channels.noise_power);
    const Eigen::Index n_rx = channels.direct[k].rows();
    const double nu = static_cast<double>(n_rx);

    const NetworkState expansion =
        make_ris_state(channels, theta_expansion).with_beamformers(beamformers);
    const auto cov = signal_covariances(k, expansion);

    // affine maps Gamma_j(theta) = U Theta V_j + E_j for the normalized
    // channels of user k
    const ComplexMatrix u = channels.ris_to_user[k] / sigma;
    std::vector<ComplexMatrix> v_blocks, e_blocks;
    for (int j = 0; j < users; ++j) {
        v_blocks.push_back(channels.bs_to_ris * beamformers[j]);
        e_blocks.push_back(channels.direct[k] * beamformers[j] / sigma);
    }

    // log-det bound on the Shannon part
    const ComplexMatrix gamma_bar = expansion.channels[k] * beamformers[k];
    const LogdetBoundParts ld = logdet_lb_parts(gamma_bar, cov.interference);

    QuadraticFunctional f;
    f.constant = ld.constant - ld.kernel.trace().real();
    f += affine_in_theta(ld.gamma_coef, u, v_blocks[k], e_blocks[k], 1.0);
    for (int j = 0; j < users; ++j) {
        f += quad_in_theta(ld.kernel, u, v_blocks[j], e_blocks[j], -1.0);
    }

    // dispersion upper bound composed through the sqrt tangent
    const HermitianMatrix omega_bar(
        ComplexMatrix(cov.interference.mat() + cov.signal.mat()));
    const ComplexMatrix omega_inv = inverse_pd(omega_bar).mat();
    const ComplexMatrix m_kernel =
        symmetrized(omega_inv * cov.interference.mat() * omega_inv);

    QuadraticFunctional v_ub;
    v_ub.constant = 2.0 * nu - 4.0 * omega_inv.trace().real() + 2.0 * m_kernel.trace().real();
    for (int j = 0; j < users; ++j) {
        if (j != k) {
            const ComplexMatrix gamma_j = expansion.channels[k] * beamformers[j];
            v_ub += affine_in_theta(omega_inv * gamma_j, u, v_blocks[j], e_blocks[j], -2.0);
        }
        v_ub += quad_in_theta(m_kernel, u, v_blocks[j], e_blocks[j], 2.0);
    }

    const double v_bar = dispersion(k, expansion);
    const SqrtTangent tangent = tangent_sqrt_ub(v_bar);
    const double scale = qfunc_inv(params.error_prob) / std::sqrt(params.blocklength);
    v_ub *= -scale * tangent.slope;
    f += v_ub;
    f.constant -= scale * (tangent.root - tangent.anchor * tangent.slope);
    return f;
}

OptimizationContext theta_context(const ChannelSet& channels, const VarList& beamformers,
                                  const SystemParams& params, const RisConfig& config) {
    OptimizationContext ctx;
    ctx.users = static_cast<int>(channels.direct.size());
    ctx.params = params;
    ctx.realize = [channels, beamformers](const VarList& v) {
        return make_ris_state(channels, v[0].col(0)).with_beamformers(beamformers);
    };
    ctx.rate_lb = [channels, beamformers, params](int k, const VarList& v) {
        return rate_lb_in_theta(k, v[0].col(0), channels, beamformers, params);
    };
    ctx.power_fn = [beamformers, params](int k, const VarList&) {
        QuadraticFunctional f;
        f.constant =
            params.static_power + params.amp_inefficiency * beamformers[k].squaredNorm();
        return f;
    };
    ctx.feasible.entry_caps.push_back({0, 1.0});
    if (config.set != RisSetKind::D) {
        // the profile floor is capped at the relaxed unit level so the
        // relaxed set keeps an interior when the amplitude floor reaches one
        const double bound = config.set == RisSetKind::D2
                                 ? std::min(config.min_modulus * config.min_modulus,
                                            1.0 - config.relax_slack)
                                 : 1.0 - config.relax_slack;
        ctx.feasible.extra_rows = [bound](const VarList& v) {
            // linearized modulus floor around the expansion point
            const ComplexVector theta_bar = v[0].col(0);
            std::vector<std::pair<QuadraticFunctional, std::string>> rows;
            for (Eigen::Index m = 0; m < theta_bar.size(); ++m) {
                QuadraticFunctional row;
                row.constant = -std::norm(theta_bar[m]) - bound;
                ComplexMatrix coef = ComplexMatrix::Zero(theta_bar.size(), 1);
                coef(m, 0) = theta_bar[m];
                row.linear.push_back({0, coef});
                rows.push_back({std::move(row), "modulus_floor_" + std::to_string(m)});
            }
            return rows;
        };
    }
    return ctx;
}

ComplexVector theta_step(ProblemKind kind, const RisConfig& config, const ChannelSet& channels,
                         const VarList& beamformers, const ComplexVector& theta_expansion,
                         const SystemParams& params) {
    OptimizationContext ctx = theta_context(channels, beamformers, params, config);
    FmpProblem problem = make_problem(kind, std::move(ctx));
    VarList expansion = {ComplexMatrix(theta_expansion)};
    BuiltSurrogate built = build_surrogate(problem, expansion);
    SubSolution sol = solve(built.sub, built.warm);
    return sol.values.mats[0].col(0);
}

ComplexVector monotone_accept(const std::function<double(const ComplexVector&)>& objective,
                              Direction dir, const ComplexVector& previous,
                              const ComplexVector& candidate) {
    const double prev_value = objective(previous);
    const double cand_value = objective(candidate);
    if (!std::isfinite(cand_value)) return previous;
    const bool acceptable =
        dir == Direction::minimize ? cand_value <= prev_value : cand_value >= prev_value;
    return acceptable ? candidate : previous;
}

AoResult ao_driver(ProblemKind kind, const RisConfig& config, RisMode mode,
                   const ChannelSet& channels, const SystemParams& params, int streams,
                   const AoOptions& options) {
    AoResult out;
    if (mode == RisMode::off) {
        MmOptions w_opts = options.w_options;
        w_opts.tolerance = options.tolerance;
        w_opts.max_iterations = options.max_iterations;
        SolveSummary s = solve_problem(kind, make_state(channels), params, streams, w_opts);
        out.beamformers = std::move(s.beamformers);
        out.trace = s.trace.objectives;
        out.w_updates = s.trace.solve_count;
        out.converged = s.trace.converged;
        out.objective = s.objective;
        return out;
    }

    ComplexVector random_draw(config.elements);
    {
        Rng rng = Rng(options.theta_seed).substream(777);
        for (int m = 0; m < config.elements; ++m) {
            random_draw[m] = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        }
    }

    const std::vector<double> floors =
        required_rate_floors(kind, params, static_cast<int>(channels.direct.size()));
    auto floors_hold = [&](const VarList& w, const ComplexVector& th) {
        const NetworkState state = make_ris_state(channels, th).with_beamformers(w);
        for (int k = 0; k < state.user_count(); ++k) {
            if (fbl_rate(k, state, params) < floors[k] - 1e-9) return false;
        }
        return true;
    };
    auto objective_at = [&](const VarList& w_, const ComplexVector& th) {
        FmpProblem p = make_problem(kind, beamformer_context(make_ris_state(channels, th), params));
        return p.true_objective(w_);
    };

    // one alternating trajectory from a fixed starting surface
    auto run_trajectory = [&](const ComplexVector& theta0, bool update_theta) {
        AoResult traj;
        ComplexVector theta = theta0;
        NetworkState state0 = make_ris_state(channels, theta);
        OptimizationContext ctx0 = beamformer_context(state0, params);
        VarList w = ensure_feasible_init(kind, ctx0, initial_beamformers(state0, params, streams));

        traj.trace.push_back(objective_at(w, theta));
        for (int z = 0; z < options.max_iterations; ++z) {
            const double cycle_start = traj.trace.back();

            // beamformer half-step: one majorization iteration at fixed theta
            {
                FmpProblem problem = make_problem(
                    kind, beamformer_context(make_ris_state(channels, theta), params));
                MmOptions one = options.w_options;
                one.max_iterations = 1;
                one.tolerance = 0.0;
                MmResult res = run_mm(problem, w, one);
                w = std::move(res.solution);
                traj.w_updates += res.trace.solve_count;
                traj.trace.push_back(problem.true_objective(w));
            }

            // reflection half-step: relaxed solve, projection, monotone accept
            if (update_theta) {
                ComplexVector candidate = project(
                    config.set, theta_step(kind, config, channels, w, theta, params), config);
                if (!floors_hold(w, candidate)) candidate = theta;
                theta =
                    monotone_accept([&](const ComplexVector& th) { return objective_at(w, th); },
                                    direction_of(kind), theta, candidate);
                traj.trace.push_back(objective_at(w, theta));
            }

            const double cycle_end = traj.trace.back();
            if (std::abs(cycle_end - cycle_start) / std::max(std::abs(cycle_start), 1e-12) <
                options.tolerance) {
                traj.converged = true;
                break;
            }
        }
        traj.beamformers = std::move(w);
        traj.theta = std::move(theta);
        traj.objective = traj.trace.back();
        return traj;
    };

    if (mode == RisMode::random) {
        // fixed uniform phases at unit amplitude, never updated
        out = run_trajectory(random_draw, /*update_theta=*/false);
        return out;
    }

    // optimized: multi-start portfolio. One alternating run from the
    // coherence-preserving all-ones start, plus the fixed projected draw as
    // a keep-best floor, so the returned surface never loses to the paired
    // random baseline on the same seed.
    AoResult coherent = run_trajectory(
        project(config.set, ComplexVector::Ones(config.elements), config), /*update_theta=*/true);
    AoResult drawn =
        run_trajectory(project(config.set, random_draw, config), /*update_theta=*/false);
    const bool coherent_wins = direction_of(kind) == Direction::minimize
                                   ? coherent.objective <= drawn.objective
                                   : coherent.objective >= drawn.objective;
    const int total_updates = coherent.w_updates + drawn.w_updates;
    AoResult best = coherent_wins ? std::move(coherent) : std::move(drawn);
    best.w_updates = total_updates;
    return best;
}

}  // namespace fmpkit
