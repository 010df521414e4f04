#include "fmpkit/problems.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace fmpkit {

namespace {

using CtxPtr = std::shared_ptr<const OptimizationContext>;

double min_ee(const OptimizationContext& ctx, const VarList& vars) {
    const NetworkState state = ctx.realize(vars);
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < ctx.users; ++k) worst = std::min(worst, ee(k, state, ctx.params));
    return worst;
}

FractionalTerm delay_term(const CtxPtr& ctx, int k) {
    FractionalTerm t;
    t.kind = TermKind::ratio;
    const double packet = ctx->params.packet_nats(k);
    t.numerator = [packet](const VarList&) { return packet; };
    t.numerator_surrogate = [packet](const VarList&) {
        QuadraticFunctional f;
        f.constant = packet;
        return f;
    };
    t.denominator = [ctx, k](const VarList& v) { return fbl_rate(k, ctx->realize(v), ctx->params); };
    t.denominator_surrogate = [ctx, k](const VarList& v) { return ctx->rate_lb(k, v); };
    return t;
}

FractionalTerm mse_term(const CtxPtr& ctx, int k) {
    FractionalTerm t;
    t.kind = TermKind::plain;
    t.numerator = [ctx, k](const VarList& v) {
        return mse(k, ctx->realize(v), ctx->params.mse_mode);
    };
    t.numerator_surrogate = [ctx, k](const VarList& v) { return ctx->mse_ub_fn(k, v); };
    return t;
}

FractionalTerm rate_sum_plain_term(const CtxPtr& ctx, double weight) {
    FractionalTerm t;
    t.kind = TermKind::plain;
    t.weight = weight;
    t.numerator = [ctx](const VarList& v) {
        const NetworkState state = ctx->realize(v);
        double acc = 0.0;
        for (int k = 0; k < ctx->users; ++k) acc += fbl_rate(k, state, ctx->params);
        return acc;
    };
    t.numerator_surrogate = [ctx](const VarList& v) {
        QuadraticFunctional f;
        for (int k = 0; k < ctx->users; ++k) f += ctx->rate_lb(k, v);
        return f;
    };
    return t;
}

FractionalTerm gee_ratio_term(const CtxPtr& ctx, double weight) {
    FractionalTerm t;
    t.kind = TermKind::ratio;
    t.weight = weight;
    t.numerator = [ctx](const VarList& v) {
        const NetworkState state = ctx->realize(v);
        double acc = 0.0;
        for (int k = 0; k < ctx->users; ++k) acc += fbl_rate(k, state, ctx->params);
        return acc;
    };
    t.numerator_surrogate = [ctx](const VarList& v) {
        QuadraticFunctional f;
        for (int k = 0; k < ctx->users; ++k) f += ctx->rate_lb(k, v);
        return f;
    };
    t.denominator = [ctx](const VarList& v) {
        double acc = 0.0;
        for (int k = 0; k < ctx->users; ++k) {
            acc += ctx->power_fn(k, v).value(std::span<const ComplexMatrix>(v.data(), v.size()));
        }
        return acc;
    };
    t.denominator_surrogate = [ctx](const VarList& v) {
        QuadraticFunctional f;
        for (int k = 0; k < ctx->users; ++k) f += ctx->power_fn(k, v);
        return f;
    };
    return t;
}

FractionalTerm ee_term(const CtxPtr& ctx, int k, double weight) {
    FractionalTerm t;
    t.kind = TermKind::ratio;
    t.weight = weight;
    t.numerator = [ctx, k](const VarList& v) { return fbl_rate(k, ctx->realize(v), ctx->params); };
    t.numerator_surrogate = [ctx, k](const VarList& v) { return ctx->rate_lb(k, v); };
    t.denominator = [ctx, k](const VarList& v) {
        return ctx->power_fn(k, v).value(std::span<const ComplexMatrix>(v.data(), v.size()));
    };
    t.denominator_surrogate = [ctx, k](const VarList& v) { return ctx->power_fn(k, v); };
    return t;
}

FractionalTerm rate_plain_term(const CtxPtr& ctx, int k, double weight) {
    FractionalTerm t;
    t.kind = TermKind::plain;
    t.weight = weight;
    t.numerator = [ctx, k](const VarList& v) { return fbl_rate(k, ctx->realize(v), ctx->params); };
    t.numerator_surrogate = [ctx, k](const VarList& v) { return ctx->rate_lb(k, v); };
    return t;
}

FractionalTerm sinr_term(const CtxPtr& ctx, int k, double weight) {
    FractionalTerm t;
    t.kind = TermKind::plain;
    t.weight = weight;
    t.numerator = [ctx, k](const VarList& v) {
        return sinr_single_stream(k, ctx->realize(v));
    };
    t.numerator_surrogate = [ctx, k](const VarList& v) { return ctx->sinr_lb(k, v); };
    return t;
}

void add_qos_rows(FmpProblem& problem, const CtxPtr& ctx, const std::vector<double>& floors) {
    for (int k = 0; k < ctx->users; ++k) {
        SurrogateRow row;
        row.builder = [ctx, k](const VarList& v) { return ctx->rate_lb(k, v); };
        row.bound = floors[k];
        row.label = "qos_rate_user" + std::to_string(k);
        problem.feasible.rows.push_back(std::move(row));
    }
}

}  // namespace

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::sum_delay: return "sum_delay";
        case ProblemKind::gm_delay: return "gm_delay";
        case ProblemKind::sum_mse: return "sum_mse";
        case ProblemKind::maxmin_mse: return "maxmin_mse";
        case ProblemKind::see_gee: return "see_gee";
        case ProblemKind::maxmin_see: return "maxmin_see";
        case ProblemKind::wsee: return "wsee";
        case ProblemKind::gmee: return "gmee";
        case ProblemKind::wsum_sinr: return "wsum_sinr";
        case ProblemKind::maxmin_ee: return "maxmin_ee";
    }
    return "unknown";
}

std::optional<ProblemKind> parse_problem_kind(const std::string& name) {
    for (ProblemKind kind :
         {ProblemKind::sum_delay, ProblemKind::gm_delay, ProblemKind::sum_mse,
          ProblemKind::maxmin_mse, ProblemKind::see_gee, ProblemKind::maxmin_see,
          ProblemKind::wsee, ProblemKind::gmee, ProblemKind::wsum_sinr, ProblemKind::maxmin_ee}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

Direction direction_of(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::sum_delay:
        case ProblemKind::gm_delay:
        case ProblemKind::sum_mse:
        case ProblemKind::maxmin_mse:
            return Direction::minimize;
        default:
            return Direction::maximize;
    }
}

OptimizationContext beamformer_context(const NetworkState& channels, const SystemParams& params) {
    params.validate(channels.user_count());
    OptimizationContext ctx;
    ctx.users = channels.user_count();
    ctx.params = params;
    NetworkState base = channels;
    ctx.realize = [base](const VarList& v) { return base.with_beamformers(v); };
    ctx.rate_lb = [base, params](int k, const VarList& v) {
        return rate_concave_lb(k, base.with_beamformers(v), params);
    };
    ctx.mse_ub_fn = [base, params](int k, const VarList& v) {
        return mse_ub(k, base.with_beamformers(v), params.mse_mode);
    };
    ctx.sinr_lb = [base](int k, const VarList& v) {
        return sinr_concave_lb(k, base.with_beamformers(v));
    };
    ctx.power_fn = [base, params](int k, const VarList&) {
        return power_quadratic(k, base, params);
    };
    PowerBall ball;
    ball.radius = params.total_power;
    for (int k = 0; k < ctx.users; ++k) ball.vars.push_back(k);
    ctx.feasible.ball = ball;
    return ctx;
}

FmpProblem make_problem(ProblemKind kind, OptimizationContext context) {
    auto ctx = std::make_shared<const OptimizationContext>(std::move(context));
    FmpProblem problem;
    problem.direction = direction_of(kind);
    problem.feasible = ctx->feasible;
    const SystemParams& params = ctx->params;

    switch (kind) {
        case ProblemKind::sum_delay:
        case ProblemKind::gm_delay: {
            problem.aggregation =
                kind == ProblemKind::gm_delay ? Aggregation::product : Aggregation::sum;
            for (int k = 0; k < ctx->users; ++k) {
                TermGroup g;
                g.terms.push_back(delay_term(ctx, k));
                problem.objective.push_back(std::move(g));
            }
            break;
        }
        case ProblemKind::sum_mse:
        case ProblemKind::maxmin_mse: {
            if (!ctx->mse_ub_fn) {
                throw UnsupportedKindConfig("mse objectives are not available in this space");
            }
            problem.aggregation = kind == ProblemKind::maxmin_mse ? Aggregation::max_over_terms
                                                                  : Aggregation::sum;
            for (int k = 0; k < ctx->users; ++k) {
                TermGroup g;
                g.terms.push_back(mse_term(ctx, k));
                problem.objective.push_back(std::move(g));
            }
            break;
        }
        case ProblemKind::see_gee: {
            const double alpha = params.tradeoff_alpha;
            if (!(alpha >= 0.0 && alpha <= 1.0)) {
                throw UnsupportedKindConfig("see_gee needs tradeoff_alpha in [0, 1]");
            }
            TermGroup g;
            if (alpha > 0.0) g.terms.push_back(rate_sum_plain_term(ctx, alpha));
            if (alpha < 1.0) g.terms.push_back(gee_ratio_term(ctx, 1.0 - alpha));
            problem.objective.push_back(std::move(g));
            break;
        }
        case ProblemKind::maxmin_see: {
            problem.aggregation = Aggregation::max_over_terms;
            for (int k = 0; k < ctx->users; ++k) {
                const double alpha = params.user_weight(k);
                if (!(alpha >= 0.0 && alpha <= 1.0)) {
                    throw UnsupportedKindConfig("maxmin_see needs weights in [0, 1]");
                }
                TermGroup g;
                if (alpha > 0.0) g.terms.push_back(rate_plain_term(ctx, k, alpha));
                if (alpha < 1.0) g.terms.push_back(ee_term(ctx, k, 1.0 - alpha));
                problem.objective.push_back(std::move(g));
            }
            break;
        }
        case ProblemKind::wsee: {
            for (int k = 0; k < ctx->users; ++k) {
                TermGroup g;
                g.terms.push_back(ee_term(ctx, k, params.user_weight(k)));
                problem.objective.push_back(std::move(g));
            }
            add_qos_rows(problem, ctx, required_rate_floors(kind, params, ctx->users));
            break;
        }
        case ProblemKind::gmee: {
            problem.aggregation = Aggregation::product;
            for (int k = 0; k < ctx->users; ++k) {
                TermGroup g;
                g.terms.push_back(ee_term(ctx, k, 1.0));
                problem.objective.push_back(std::move(g));
            }
            add_qos_rows(problem, ctx, required_rate_floors(kind, params, ctx->users));
            break;
        }
        case ProblemKind::maxmin_ee: {
            problem.aggregation = Aggregation::max_over_terms;
            for (int k = 0; k < ctx->users; ++k) {
                TermGroup g;
                g.terms.push_back(ee_term(ctx, k, 1.0));
                problem.objective.push_back(std::move(g));
            }
            add_qos_rows(problem, ctx, required_rate_floors(kind, params, ctx->users));
            break;
        }
        case ProblemKind::wsum_sinr: {
            if (!ctx->sinr_lb) {
                throw UnsupportedKindConfig("wsum_sinr is not available in this variable space");
            }
            for (int k = 0; k < ctx->users; ++k) {
                TermGroup g;
                g.terms.push_back(sinr_term(ctx, k, params.user_weight(k)));
                problem.objective.push_back(std::move(g));
            }
            break;
        }
    }
    return problem;
}

VarList initial_beamformers(const NetworkState& state, const SystemParams& params, int streams) {
    const int users = state.user_count();
    VarList init;
    for (int k = 0; k < users; ++k) {
        const ComplexMatrix& h = state.channels[k];
        if (streams > std::min(h.rows(), h.cols())) {
            throw UnsupportedKindConfig("stream count exceeds the channel rank");
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeThinV);
        const double scale = std::sqrt(params.total_power / (users * streams));
        init.push_back(scale * svd.matrixV().leftCols(streams));
    }
    return init;
}

std::vector<double> required_rate_floors(ProblemKind kind, const SystemParams& params, int users) {
    std::vector<double> floors(users, -std::numeric_limits<double>::infinity());
    switch (kind) {
        case ProblemKind::wsee:
        case ProblemKind::gmee:
        case ProblemKind::maxmin_ee:
            for (int k = 0; k < users; ++k) floors[k] = params.rate_floor(k);
            break;
        case ProblemKind::sum_delay:
        case ProblemKind::gm_delay:
        case ProblemKind::see_gee:
        case ProblemKind::maxmin_see:
            // positive rates are structurally required
            for (int k = 0; k < users; ++k) floors[k] = 1e-3;
            break;
        default:
            break;
    }
    return floors;
}

VarList ensure_feasible_init(ProblemKind kind, const OptimizationContext& ctx, VarList init) {
    const std::vector<double> floors = required_rate_floors(kind, ctx.params, ctx.users);
    bool needed = false;
    {
        const NetworkState state = ctx.realize(init);
        for (int k = 0; k < ctx.users; ++k) {
            if (fbl_rate(k, state, ctx.params) < floors[k]) needed = true;
        }
    }
    if (!needed) return init;

    auto shared = std::make_shared<const OptimizationContext>(ctx);
    FmpProblem prephase;
    prephase.direction = Direction::maximize;
    prephase.aggregation = Aggregation::max_over_terms;
    prephase.feasible.ball = ctx.feasible.ball;
    prephase.feasible.entry_caps = ctx.feasible.entry_caps;
    prephase.feasible.extra_rows = ctx.feasible.extra_rows;
    for (int k = 0; k < ctx.users; ++k) {
        TermGroup g;
        FractionalTerm t = rate_plain_term(shared, k, 1.0);
        const double floor = floors[k];
        auto base_eval = t.numerator;
        auto base_builder = t.numerator_surrogate;
        t.numerator = [base_eval, floor](const VarList& v) { return base_eval(v) - floor; };
        t.numerator_surrogate = [base_builder, floor](const VarList& v) {
            QuadraticFunctional f = base_builder(v);
            f.constant -= floor;
            return f;
        };
        g.terms.push_back(std::move(t));
        prephase.objective.push_back(std::move(g));
    }

    MmOptions options;
    options.max_iterations = 50;
    options.tolerance = 1e-12;  // run until the floors hold, not to stationarity
    options.stop_when = [&](const VarList& v) { return prephase.true_objective(v) > 0.0; };
    MmResult res = run_mm(prephase, init, options);
    if (!(prephase.true_objective(res.solution) >= 0.0)) {
        throw InfeasibleInit("rate floors unreachable for " + to_string(kind));
    }
    return res.solution;
}

SolveSummary solve_problem(ProblemKind kind, const NetworkState& channels,
                           const SystemParams& params, int streams, const MmOptions& options) {
    if (kind == ProblemKind::wsum_sinr && streams != 1) {
        throw UnsupportedKindConfig("wsum_sinr needs single-stream beamformers");
    }
    OptimizationContext ctx = beamformer_context(channels, params);
    VarList init = initial_beamformers(channels, params, streams);
    init = ensure_feasible_init(kind, ctx, init);
    FmpProblem problem = make_problem(kind, ctx);

    SolveSummary out;
    MmResult res = run_mm(problem, init, options);
    out.beamformers = std::move(res.solution);
    out.trace = std::move(res.trace);
    out.objective = problem.true_objective(out.beamformers);
    return out;
}

// ---- baselines -------------------------------------------------------------

BaselineResult gda_maxmin_ee(const OptimizationContext& ctx, const VarList& init, double delta1,
                             double delta2, int max_outer) {
    const std::vector<double> floors =
        required_rate_floors(ProblemKind::maxmin_ee, ctx.params, ctx.users);
    BaselineResult out;
    out.beamformers = init;
    out.trace.push_back(min_ee(ctx, out.beamformers));

    for (int outer = 0; outer < max_outer; ++outer) {
        // refresh the concave rate bounds around the current iterate
        const VarList expansion = out.beamformers;
        std::vector<QuadraticFunctional> rate_bounds;
        std::vector<QuadraticFunctional> powers;
        for (int k = 0; k < ctx.users; ++k) {
            rate_bounds.push_back(ctx.rate_lb(k, expansion));
            powers.push_back(ctx.power_fn(k, expansion));
        }
        auto surrogate_min_ee = [&](const VarList& v) {
            const std::span<const ComplexMatrix> span(v.data(), v.size());
            double worst = std::numeric_limits<double>::infinity();
            for (int k = 0; k < ctx.users; ++k) {
                worst = std::min(worst, rate_bounds[k].value(span) / powers[k].value(span));
            }
            return worst;
        };

        VarList inner_point = expansion;
        double inner_value = surrogate_min_ee(inner_point);
        for (int m = 0; m < 100; ++m) {
            const double level = inner_value;  // min_k bound_k / p_k at the iterate

            ConvexSubproblem sub;
            for (const auto& w : inner_point) sub.matrix_shapes.push_back({w.rows(), w.cols()});
            sub.scalars.push_back({ScalarKind::free_scalar, "epi"});
            sub.objective.linear.push_back({0, -1.0});
            for (int k = 0; k < ctx.users; ++k) {
                SubExpression row;  // bound_k - level p_k - s >= 0
                row.matrices = rate_bounds[k] + (-level) * powers[k];
                row.linear.push_back({0, -1.0});
                sub.rows.push_back(std::move(row));
                sub.row_labels.push_back("level_user" + std::to_string(k));
                SubExpression qos;
                qos.matrices = rate_bounds[k];
                qos.matrices.constant -= floors[k];
                sub.rows.push_back(std::move(qos));
                sub.row_labels.push_back("qos_user" + std::to_string(k));
            }
            if (ctx.feasible.ball) {
                SubExpression ball;
                ball.matrices.constant = ctx.feasible.ball->radius;
                for (int v : ctx.feasible.ball->vars) {
                    ball.matrices.kernels.push_back(
                        {v, ComplexMatrix::Identity(inner_point[v].rows(), inner_point[v].rows()),
                         ComplexMatrix::Identity(inner_point[v].cols(), inner_point[v].cols()),
                         -1.0});
                }
                sub.rows.push_back(std::move(ball));
                sub.row_labels.push_back("power_ball");
            }

            SubValues warm;
            warm.mats = inner_point;
            warm.scalars = RealVector(1);
            warm.scalars << 0.0;  // min_k (bound_k - level p_k) = 0 by the level choice

            SubSolution sol = solve(sub, warm);
            out.updates += 1;
            const double next_value = surrogate_min_ee(sol.values.mats);
            if (next_value > inner_value) {
                inner_point = sol.values.mats;
            }
            const double change = std::abs(next_value - inner_value) /
                                  std::max(std::abs(inner_value), 1e-12);
            inner_value = std::max(inner_value, next_value);
            if (change < delta2) break;
        }

        const double candidate = min_ee(ctx, inner_point);
        const double previous = out.trace.back();
        if (candidate >= previous) out.beamformers = inner_point;
        out.trace.push_back(std::max(candidate, previous));
        if (std::abs(out.trace.back() - previous) / std::max(std::abs(previous), 1e-12) < delta1) {
            break;
        }
    }
    out.objective = out.trace.back();
    return out;
}

BaselineResult dinkelbach_gee(const OptimizationContext& ctx, const VarList& init, double delta,
                              double delta2, int max_outer) {
    auto gee_true = [&](const VarList& v) { return gee(ctx.realize(v), ctx.params); };
    BaselineResult out;
    out.beamformers = init;
    out.trace.push_back(gee_true(out.beamformers));

    for (int outer = 0; outer < max_outer; ++outer) {
        const VarList expansion = out.beamformers;
        QuadraticFunctional rate_sum;
        QuadraticFunctional power_sum;
        for (int k = 0; k < ctx.users; ++k) {
            rate_sum += ctx.rate_lb(k, expansion);
            power_sum += ctx.power_fn(k, expansion);
        }
        auto surrogate_gee = [&](const VarList& v) {
            const std::span<const ComplexMatrix> span(v.data(), v.size());
            return rate_sum.value(span) / power_sum.value(span);
        };

        VarList inner_point = expansion;
        double lambda = surrogate_gee(inner_point);
        for (int m = 0; m < 100; ++m) {
            ConvexSubproblem sub;
            for (const auto& w : inner_point) sub.matrix_shapes.push_back({w.rows(), w.cols()});
            // minimize lambda * sum p - sum rate bounds
            sub.objective.matrices = (-1.0) * rate_sum + lambda * power_sum;
            if (ctx.feasible.ball) {
                SubExpression ball;
                ball.matrices.constant = ctx.feasible.ball->radius;
                for (int v : ctx.feasible.ball->vars) {
                    ball.matrices.kernels.push_back(
                        {v, ComplexMatrix::Identity(inner_point[v].rows(), inner_point[v].rows()),
                         ComplexMatrix::Identity(inner_point[v].cols(), inner_point[v].cols()),
                         -1.0});
                }
                sub.rows.push_back(std::move(ball));
                sub.row_labels.push_back("power_ball");
            }
            SubValues warm;
            warm.mats = inner_point;
            warm.scalars = RealVector(0);
            SubSolution sol = solve(sub, warm);
            out.updates += 1;
            const double next_lambda = surrogate_gee(sol.values.mats);
            if (next_lambda < lambda) break;  // parametric iteration is ascending
            inner_point = sol.values.mats;
            const double change =
                std::abs(next_lambda - lambda) / std::max(std::abs(lambda), 1e-12);
            lambda = next_lambda;
            if (change < delta2) break;
        }

        const double candidate = gee_true(inner_point);
        const double previous = out.trace.back();
        if (candidate >= previous) out.beamformers = inner_point;
        out.trace.push_back(std::max(candidate, previous));
        if (std::abs(out.trace.back() - previous) / std::max(std::abs(previous), 1e-12) < delta) {
            break;
        }
    }
    out.objective = out.trace.back();
    return out;
}

double ComparisonReport::mean_framework_updates() const {
    double acc = 0.0;
    for (const auto& t : trials) acc += t.framework.updates;
    return trials.empty() ? 0.0 : acc / trials.size();
}

double ComparisonReport::mean_baseline_updates() const {
    double acc = 0.0;
    for (const auto& t : trials) acc += t.baseline.updates;
    return trials.empty() ? 0.0 : acc / trials.size();
}

double ComparisonReport::mean_framework_objective() const {
    double acc = 0.0;
    for (const auto& t : trials) acc += t.framework.objective;
    return trials.empty() ? 0.0 : acc / trials.size();
}

double ComparisonReport::mean_baseline_objective() const {
    double acc = 0.0;
    for (const auto& t : trials) acc += t.baseline.objective;
    return trials.empty() ? 0.0 : acc / trials.size();
}

ComparisonReport compare_methods(ProblemKind kind, const ChannelParams& channel_params,
                                 const SystemParams& params, int trials, std::uint64_t seed,
                                 int streams, const MmOptions& options) {
    if (kind != ProblemKind::maxmin_ee && kind != ProblemKind::see_gee) {
        throw UnsupportedKindConfig("no baseline defined for " + to_string(kind));
    }
    ComparisonReport report;
    report.kind = kind;
    for (int trial = 0; trial < trials; ++trial) {
        const ChannelSet channels = generate(channel_params, seed, trial);
        const NetworkState state = make_state(channels);
        OptimizationContext ctx = beamformer_context(state, params);
        VarList init = initial_beamformers(state, params, streams);
        init = ensure_feasible_init(kind, ctx, init);

        ComparisonTrial result;
        {
            FmpProblem problem = make_problem(kind, ctx);
            MmResult res = run_mm(problem, init, options);
            result.framework.objective = problem.true_objective(res.solution);
            result.framework.updates = res.trace.solve_count;
            result.framework.trace = res.trace.objectives;
        }
        if (kind == ProblemKind::maxmin_ee) {
            BaselineResult base =
                gda_maxmin_ee(ctx, init, options.tolerance, options.tolerance * 0.1, 200);
            result.baseline.objective = base.objective;
            result.baseline.updates = base.updates;
            result.baseline.trace = base.trace;
        } else {
            BaselineResult base =
                dinkelbach_gee(ctx, init, options.tolerance, options.tolerance * 0.1, 200);
            result.baseline.objective = base.objective;
            result.baseline.updates = base.updates;
            result.baseline.trace = base.trace;
        }
        report.trials.push_back(std::move(result));
    }
    return report;
}

std::vector<ComparisonReport> compare_methods(const std::vector<ProblemKind>& kinds,
                                              const ChannelParams& channel_params,
                                              const SystemParams& params, int trials,
                                              std::uint64_t seed, int streams,
                                              const MmOptions& options) {
    std::vector<ComparisonReport> reports;
    for (ProblemKind kind : kinds) {
        reports.push_back(
            compare_methods(kind, channel_params, params, trials, seed, streams, options));
    }
    return reports;
}

}  // namespace fmpkit
