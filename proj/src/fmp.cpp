#include "fmpkit/fmp.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "fmpkit/bounds.hpp"

namespace fmpkit {

namespace {

constexpr double kWarmFeasTol = 1e-8;
constexpr double kNumeratorSlack = 1e-9;

double checked_numerator(const FractionalTerm& term, const VarList& expansion) {
    double f = term.numerator(expansion);
    if (f < -kNumeratorSlack) {
        throw InfeasibleExpansion("ratio numerator is negative at the expansion point");
    }
    return std::max(f, 0.0);
}

double checked_denominator(const FractionalTerm& term, const VarList& expansion) {
    const double g = term.denominator(expansion);
    if (!(g > 0.0)) {
        throw InfeasibleExpansion("ratio denominator is non-positive at the expansion point");
    }
    return g;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> shapes_of(const VarList& vars) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> shapes;
    for (const auto& v : vars) shapes.push_back({v.rows(), v.cols()});
    return shapes;
}

void add_feasible_rows(ConvexSubproblem& sub, const FmpProblem& problem,
                       const VarList& expansion) {
    if (problem.feasible.ball) {
        SubExpression row;
        row.matrices.constant = problem.feasible.ball->radius;
        for (int v : problem.feasible.ball->vars) {
            row.matrices.kernels.push_back(
                {v, ComplexMatrix::Identity(expansion[v].rows(), expansion[v].rows()),
                 ComplexMatrix::Identity(expansion[v].cols(), expansion[v].cols()), -1.0});
        }
        sub.rows.push_back(std::move(row));
        sub.row_labels.push_back("power_ball");
    }
    for (const auto& cap : problem.feasible.entry_caps) {
        const Eigen::Index rows = expansion[cap.var].rows();
        const Eigen::Index cols = expansion[cap.var].cols();
        for (Eigen::Index c = 0; c < cols; ++c) {
            for (Eigen::Index r = 0; r < rows; ++r) {
                SubExpression row;
                row.matrices.constant = cap.cap_sq;
                ComplexMatrix left = ComplexMatrix::Zero(rows, rows);
                left(r, r) = 1.0;
                ComplexMatrix right = ComplexMatrix::Zero(cols, cols);
                right(c, c) = 1.0;
                row.matrices.kernels.push_back({cap.var, left, right, -1.0});
                sub.rows.push_back(std::move(row));
                sub.row_labels.push_back("entry_cap_v" + std::to_string(cap.var) + "_" +
                                         std::to_string(r) + "_" + std::to_string(c));
            }
        }
    }
    for (const auto& qos : problem.feasible.rows) {
        SubExpression row;
        row.matrices = qos.builder(expansion);
        row.matrices.constant -= qos.bound;
        sub.rows.push_back(std::move(row));
        sub.row_labels.push_back(qos.label.empty() ? "surrogate_row" : qos.label);
    }
    if (problem.feasible.extra_rows) {
        for (auto& [qf, label] : problem.feasible.extra_rows(expansion)) {
            SubExpression row;
            row.matrices = std::move(qf);
            sub.rows.push_back(std::move(row));
            sub.row_labels.push_back(label);
        }
    }
}

std::vector<double> group_weights(const FmpProblem& problem, const VarList& expansion) {
    if (problem.aggregation != Aggregation::product) {
        return std::vector<double>(problem.objective.size(), 1.0);
    }
    std::vector<double> values;
    values.reserve(problem.objective.size());
    for (const auto& g : problem.objective) values.push_back(g.value(expansion));
    return linearize_product(values, problem.direction);
}

void check_warm_feasible(const ConvexSubproblem& sub, const SubValues& warm) {
    const FeasibilityReport rep = check_feasibility(sub, warm);
    if (rep.max_violation > kWarmFeasTol) {
        const std::string label =
            rep.worst_row >= 0 && rep.worst_row < static_cast<int>(sub.row_labels.size())
                ? sub.row_labels[rep.worst_row]
                : "scalar bound";
        throw InfeasibleExpansion("warm start violates " + label + " by " +
                                  std::to_string(rep.max_violation));
    }
}

}  // namespace

double FractionalTerm::value(const VarList& vars) const {
    if (kind == TermKind::plain) return numerator(vars);
    return numerator(vars) / denominator(vars);
}

double TermGroup::value(const VarList& vars) const {
    double acc = 0.0;
    for (const auto& t : terms) acc += t.weight * t.value(vars);
    return acc;
}

double FmpProblem::true_objective(const VarList& vars) const {
    switch (aggregation) {
        case Aggregation::sum: {
            double acc = 0.0;
            for (const auto& g : objective) acc += g.value(vars);
            return acc;
        }
        case Aggregation::max_over_terms: {
            double worst = direction == Direction::minimize
                               ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
            for (const auto& g : objective) {
                const double v = g.value(vars);
                worst = direction == Direction::minimize ? std::max(worst, v)
                                                         : std::min(worst, v);
            }
            return worst;
        }
        case Aggregation::product: {
            double log_acc = 0.0;
            for (const auto& g : objective) {
                const double v = g.value(vars);
                if (!(v > 0.0)) {
                    return direction == Direction::minimize
                               ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
                }
                log_acc += std::log(v);
            }
            return std::exp(log_acc / static_cast<double>(objective.size()));
        }
    }
    return 0.0;
}

std::vector<double> linearize_product(const std::vector<double>& group_values, Direction dir) {
    const size_t k = group_values.size();
    if (k == 1) return {1.0};
    RealVector anchor(static_cast<Eigen::Index>(k));
    for (size_t i = 0; i < k; ++i) {
        if (dir == Direction::minimize && !(group_values[i] > 0.0)) {
            throw NonPositiveTermValue("product linearization needs positive term values");
        }
        anchor[static_cast<Eigen::Index>(i)] = group_values[i];
    }
    const AffineScalarFunctional f =
        dir == Direction::minimize ? gm_upper_bound(anchor) : prod_square_lb(anchor);
    std::vector<double> weights(k);
    for (size_t i = 0; i < k; ++i) weights[i] = f.coef[static_cast<Eigen::Index>(i)];
    return weights;
}

namespace {

// Shared assembly of one fractional term in either style. Minimization
// style introduces the (u, t) pair with the linearized square cap on the
// numerator; maximization style introduces t with the level coefficient on
// the denominator surrogate. `target_row` collects constraint contributions
// (budget rows take ratios negatively, floor rows take level terms
// positively); a null target routes the term into the canonical objective.
struct Assembler {
    ConvexSubproblem& sub;
    std::vector<double>& warm_scalars;
    const VarList& expansion;

    void add_min_style(const FractionalTerm& term, double weight, SubExpression* target_row) {
        if (term.kind == TermKind::plain) {
            QuadraticFunctional ub = term.numerator_surrogate(expansion);
            if (target_row != nullptr) {
                ub *= -weight;
                target_row->matrices += ub;
            } else {
                ub *= weight;
                sub.objective.matrices += ub;
            }
            return;
        }
        const double f_z = checked_numerator(term, expansion);
        const double g_z = checked_denominator(term, expansion);
        const int u = static_cast<int>(sub.scalars.size());
        sub.scalars.push_back({ScalarKind::nonneg, "u" + std::to_string(u)});
        warm_scalars.push_back(std::sqrt(f_z));
        const int t = static_cast<int>(sub.scalars.size());
        sub.scalars.push_back({ScalarKind::positive, "t" + std::to_string(t)});
        warm_scalars.push_back(g_z);

        SubExpression denom_row;  // concave lower bound of g stays above t
        denom_row.matrices = term.denominator_surrogate(expansion);
        denom_row.linear.push_back({t, -1.0});
        sub.rows.push_back(std::move(denom_row));
        sub.row_labels.push_back("denominator_floor");

        SubExpression numer_row;  // 2 sqrt(f^z) u - f^z >= convex ub of f
        numer_row.matrices = -1.0 * term.numerator_surrogate(expansion);
        numer_row.matrices.constant -= f_z;
        numer_row.linear.push_back({u, 2.0 * std::sqrt(f_z)});
        sub.rows.push_back(std::move(numer_row));
        sub.row_labels.push_back("numerator_cap");

        if (target_row != nullptr) {
            target_row->ratios.push_back({u, t, -weight});
        } else {
            sub.objective.ratios.push_back({u, t, weight});
        }
    }

    void add_max_style(const FractionalTerm& term, double weight, SubExpression* target_row) {
        if (term.kind == TermKind::plain) {
            QuadraticFunctional lb = term.numerator_surrogate(expansion);
            if (target_row != nullptr) {
                lb *= weight;
                target_row->matrices += lb;
            } else {
                lb *= -weight;
                sub.objective.matrices += lb;
            }
            return;
        }
        const double f_z = checked_numerator(term, expansion);
        const double g_z = checked_denominator(term, expansion);
        const double a = std::sqrt(f_z) / g_z;

        const int t = static_cast<int>(sub.scalars.size());
        sub.scalars.push_back({ScalarKind::nonneg, "t" + std::to_string(t)});
        warm_scalars.push_back(std::sqrt(f_z));

        SubExpression numer_row;  // concave lower bound of f dominates t^2
        numer_row.matrices = term.numerator_surrogate(expansion);
        numer_row.squares.push_back({t, -1.0});
        sub.rows.push_back(std::move(numer_row));
        sub.row_labels.push_back("numerator_floor");

        QuadraticFunctional g_ub = term.denominator_surrogate(expansion);
        if (target_row != nullptr) {
            target_row->linear.push_back({t, weight * 2.0 * a});
            g_ub *= -weight * a * a;
            target_row->matrices += g_ub;
        } else {
            sub.objective.linear.push_back({t, -weight * 2.0 * a});
            g_ub *= weight * a * a;
            sub.objective.matrices += g_ub;
        }
    }

    void add_constraint_groups(const FmpProblem& problem) {
        for (size_t c = 0; c < problem.ratio_constraints.size(); ++c) {
            const ConstraintGroup& group = problem.ratio_constraints[c];
            SubExpression row;
            if (group.sense == ConstraintSense::upper_budget) {
                row.matrices.constant = group.bound;  // bound - sum of ratios >= 0
                for (const auto& term : group.terms) {
                    add_min_style(term, term.weight, &row);
                }
                sub.rows.push_back(std::move(row));
                sub.row_labels.push_back("ratio_budget" + std::to_string(c));
            } else {
                for (const auto& term : group.terms) {  // sum of surrogates >= 0
                    add_max_style(term, term.weight, &row);
                }
                sub.rows.push_back(std::move(row));
                sub.row_labels.push_back("ratio_floor" + std::to_string(c));
            }
        }
    }
};

}  // namespace

BuiltSurrogate build_min_surrogate(const FmpProblem& problem, const VarList& expansion) {
    BuiltSurrogate built;
    built.sign = 1.0;
    ConvexSubproblem& sub = built.sub;
    sub.matrix_shapes = shapes_of(expansion);
    built.warm.mats = expansion;
    std::vector<double> warm_scalars;
    Assembler assembler{sub, warm_scalars, expansion};

    const std::vector<double> weights = group_weights(problem, expansion);

    int epigraph = -1;
    if (problem.aggregation == Aggregation::max_over_terms) {
        epigraph = static_cast<int>(sub.scalars.size());
        sub.scalars.push_back({ScalarKind::free_scalar, "epi"});
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& g : problem.objective) worst = std::max(worst, g.value(expansion));
        warm_scalars.push_back(worst);
        sub.objective.linear.push_back({epigraph, 1.0});
    }

    for (size_t g = 0; g < problem.objective.size(); ++g) {
        if (epigraph >= 0) {
            SubExpression row;  // epigraph dominates the group value
            row.linear.push_back({epigraph, 1.0});
            for (const auto& term : problem.objective[g].terms) {
                assembler.add_min_style(term, weights[g] * term.weight, &row);
            }
            sub.rows.push_back(std::move(row));
            sub.row_labels.push_back("epigraph_group" + std::to_string(g));
        } else {
            for (const auto& term : problem.objective[g].terms) {
                assembler.add_min_style(term, weights[g] * term.weight, nullptr);
            }
        }
    }

    assembler.add_constraint_groups(problem);
    add_feasible_rows(sub, problem, expansion);

    built.warm.scalars =
        Eigen::Map<RealVector>(warm_scalars.data(), static_cast<Eigen::Index>(warm_scalars.size()));
    check_warm_feasible(sub, built.warm);
    return built;
}

BuiltSurrogate build_max_surrogate(const FmpProblem& problem, const VarList& expansion) {
    BuiltSurrogate built;
    built.sign = -1.0;  // canonical subproblem minimizes the negated objective
    ConvexSubproblem& sub = built.sub;
    sub.matrix_shapes = shapes_of(expansion);
    built.warm.mats = expansion;
    std::vector<double> warm_scalars;
    Assembler assembler{sub, warm_scalars, expansion};

    const std::vector<double> weights = group_weights(problem, expansion);

    int epigraph = -1;
    if (problem.aggregation == Aggregation::max_over_terms) {
        epigraph = static_cast<int>(sub.scalars.size());
        sub.scalars.push_back({ScalarKind::free_scalar, "epi"});
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& g : problem.objective) worst = std::min(worst, g.value(expansion));
        warm_scalars.push_back(worst);
        sub.objective.linear.push_back({epigraph, -1.0});
    }

    for (size_t g = 0; g < problem.objective.size(); ++g) {
        if (epigraph >= 0) {
            SubExpression row;  // group surrogate dominates the epigraph scalar
            row.linear.push_back({epigraph, -1.0});
            for (const auto& term : problem.objective[g].terms) {
                assembler.add_max_style(term, weights[g] * term.weight, &row);
            }
            sub.rows.push_back(std::move(row));
            sub.row_labels.push_back("epigraph_group" + std::to_string(g));
        } else {
            for (const auto& term : problem.objective[g].terms) {
                assembler.add_max_style(term, weights[g] * term.weight, nullptr);
            }
        }
    }

    assembler.add_constraint_groups(problem);
    add_feasible_rows(sub, problem, expansion);

    built.warm.scalars =
        Eigen::Map<RealVector>(warm_scalars.data(), static_cast<Eigen::Index>(warm_scalars.size()));
    check_warm_feasible(sub, built.warm);
    return built;
}

BuiltSurrogate build_surrogate(const FmpProblem& problem, const VarList& expansion) {
    return problem.direction == Direction::minimize ? build_min_surrogate(problem, expansion)
                                                    : build_max_surrogate(problem, expansion);
}

MmResult run_mm(const FmpProblem& problem, const VarList& init, const MmOptions& options) {
    const Subsolver solver = options.subsolver
                                 ? options.subsolver
                                 : [](const ConvexSubproblem& s, const SubValues& w) {
                                       return solve(s, w);
                                   };
    MmResult result;
    result.solution = init;
    double current = problem.true_objective(init);
    result.trace.objectives.push_back(current);

    int no_progress = 0;
    for (int z = 0; z < options.max_iterations; ++z) {
        const auto started = std::chrono::steady_clock::now();
        BuiltSurrogate built;
        try {
            built = build_surrogate(problem, result.solution);
        } catch (const InfeasibleExpansion&) {
            if (z == 0) throw InfeasibleInit("initial point infeasible for the surrogate");
            throw;
        }
        SubSolution sol = solver(built.sub, built.warm);
        result.trace.solve_count += 1;

        VarList candidate = sol.values.mats;
        const double cand_obj = problem.true_objective(candidate);
        const bool improved =
            std::isfinite(cand_obj) && (problem.direction == Direction::minimize
                                            ? cand_obj <= current
                                            : cand_obj >= current);

        IterationRecord rec;
        rec.status = sol.status;
        rec.feasibility = sol.feasibility;
        rec.accepted = improved;
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();

        double rel_change = 0.0;
        if (improved) {
            rel_change = std::abs(cand_obj - current) / std::max(std::abs(current), 1e-12);
            result.solution = std::move(candidate);
            current = cand_obj;
            no_progress = 0;
        } else {
            ++no_progress;
        }
        rec.objective = current;
        result.trace.objectives.push_back(current);
        result.trace.iterations.push_back(rec);

        if (options.stop_when && options.stop_when(result.solution)) {
            result.trace.converged = true;
            break;
        }
        if (improved && rel_change < options.tolerance) {
            result.trace.converged = true;
            break;
        }
        if (no_progress >= 3) break;
    }
    return result;
}

}  // namespace fmpkit
