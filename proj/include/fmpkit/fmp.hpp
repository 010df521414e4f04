#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fmpkit/subproblem.hpp"

namespace fmpkit {

using VarList = std::vector<ComplexMatrix>;
using ScalarFn = std::function<double(const VarList&)>;
using SurrogateBuilder = std::function<QuadraticFunctional(const VarList&)>;

/// Expansion point of one majorization step: the variables plus the cached
/// per-term numerator/denominator values there.
struct ExpansionPoint {
    VarList vars;
    std::vector<double> numerators;
    std::vector<double> denominators;
};

enum class TermKind {
    ratio,  // f/g with direction-appropriate surrogates for both parts
    plain   // a bare function with a direction-appropriate surrogate
};

/// One fractional (or plain) term. The surrogate builders must satisfy the
/// equality / bound-direction / gradient-match conditions at any feasible
/// expansion point; for minimization the numerator surrogate is a convex
/// upper bound and the denominator surrogate a concave lower bound, for
/// maximization the reverse.
struct FractionalTerm {
    TermKind kind = TermKind::ratio;
    ScalarFn numerator;
    ScalarFn denominator;
    SurrogateBuilder numerator_surrogate;
    SurrogateBuilder denominator_surrogate;
    double weight = 1.0;

    double value(const VarList& vars) const;  // unweighted f/g (or f)
};

/// Aggregation unit: the objective is a sum / extremum / geometric mean over
/// groups, each group being a weighted sum of terms.
struct TermGroup {
    std::vector<FractionalTerm> terms;
    double value(const VarList& vars) const;
};

enum class Direction { minimize, maximize };
enum class Aggregation { sum, max_over_terms, product };

struct PowerBall {
    std::vector<int> vars;
    double radius = 1.0;  // sum of squared Frobenius norms <= radius
};

struct EntryCap {
    int var = 0;
    double cap_sq = 1.0;  // per-entry |x|^2 <= cap_sq
};

/// Constraint whose exact form is non-convex but admits a concave lower
/// bound: builder({X}) >= bound is imposed each iteration, which implies the
/// true constraint holds at every iterate.
struct SurrogateRow {
    SurrogateBuilder builder;
    double bound = 0.0;
    std::string label;
};

/// Expansion-dependent extra rows (each functional >= 0), e.g. linearized
/// modulus bounds of relaxed reflection-coefficient sets.
using RowListBuilder =
    std::function<std::vector<std::pair<QuadraticFunctional, std::string>>(const VarList&)>;

struct FeasibleSet {
    std::optional<PowerBall> ball;
    std::vector<EntryCap> entry_caps;
    std::vector<SurrogateRow> rows;
    RowListBuilder extra_rows;
};

/// Ratio constraint group. `upper_budget` imposes sum of weighted terms
/// <= bound (the natural sense for minimization); `lower_nonneg` imposes
/// sum >= 0 (the natural sense for maximization). Either sense may appear
/// under either objective direction; the surrogate builders of the terms
/// must then match the group sense (upper_budget terms carry convex-upper
/// numerator and concave-lower denominator surrogates, lower_nonneg terms
/// the reverse).
enum class ConstraintSense { upper_budget, lower_nonneg };

struct ConstraintGroup {
    std::vector<FractionalTerm> terms;
    double bound = 0.0;  // used by upper_budget
    ConstraintSense sense = ConstraintSense::upper_budget;
};

struct FmpProblem {
    Direction direction = Direction::minimize;
    Aggregation aggregation = Aggregation::sum;
    std::vector<TermGroup> objective;
    std::vector<ConstraintGroup> ratio_constraints;
    FeasibleSet feasible;

    double true_objective(const VarList& vars) const;
};

/// Product objectives are handled by re-weighting the groups each iteration:
/// minimization uses the geometric-mean tangent coefficients, maximization
/// the product-of-squares tangent. K = 1 degenerates to weight one.
std::vector<double> linearize_product(const std::vector<double>& group_values, Direction dir);

struct BuiltSurrogate {
    ConvexSubproblem sub;
    SubValues warm;
    double sign = 1.0;  // canonical objective = sign * aggregate (-1 for max)
};

BuiltSurrogate build_min_surrogate(const FmpProblem& problem, const VarList& expansion);
BuiltSurrogate build_max_surrogate(const FmpProblem& problem, const VarList& expansion);
BuiltSurrogate build_surrogate(const FmpProblem& problem, const VarList& expansion);

struct IterationRecord {
    double objective = 0.0;
    SolveStatus status = SolveStatus::fallback_warm_start;
    double feasibility = 0.0;
    double wall_ms = 0.0;
    bool accepted = false;
};

struct MmTrace {
    std::vector<double> objectives;  // true objective; entry 0 is the init
    std::vector<IterationRecord> iterations;
    int solve_count = 0;
    bool converged = false;
};

using Subsolver = std::function<SubSolution(const ConvexSubproblem&, const SubValues&)>;

struct MmOptions {
    double tolerance = 1e-4;
    int max_iterations = 200;
    std::function<bool(const VarList&)> stop_when;  // optional early exit
    Subsolver subsolver;                            // defaults to the interior-point solve
};

struct MmResult {
    VarList solution;
    MmTrace trace;
};

/// Majorization-minimization driver: builds the direction-appropriate
/// surrogate at the current iterate, solves it, accepts the candidate only
/// if the true objective does not regress, and stops on relative change
/// below tolerance (or three consecutive no-progress iterations).
MmResult run_mm(const FmpProblem& problem, const VarList& init, const MmOptions& options = {});

}  // namespace fmpkit
