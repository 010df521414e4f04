#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fmpkit/functional.hpp"

namespace fmpkit {

enum class ScalarKind { positive, nonneg, free_scalar };

struct ScalarSpec {
    ScalarKind kind = ScalarKind::free_scalar;
    std::string name;
};

struct LinearScalarTerm {
    int scalar = 0;
    double coef = 0.0;
};

struct SquareScalarTerm {
    int scalar = 0;
    double coef = 0.0;  // coef * s^2
};

struct RatioTermSpec {
    int u = 0;  // numerator scalar index
    int t = 0;  // denominator scalar index
    double coef = 0.0;  // coef * u^2 / t
};

/// Canonical expression: quadratic functional over the matrix variables plus
/// affine/quadratic scalar terms and u^2/t ratio terms.
struct SubExpression {
    QuadraticFunctional matrices;  // constant lives here
    std::vector<LinearScalarTerm> linear;
    std::vector<SquareScalarTerm> squares;
    std::vector<RatioTermSpec> ratios;
};

/// Canonical per-iteration surrogate problem, always stored in minimization
/// form: minimize a convex objective subject to concave rows >= 0 and the
/// scalar-kind lower bounds (t >= 1e-10, u >= 0).
struct ConvexSubproblem {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> matrix_shapes;
    std::vector<ScalarSpec> scalars;
    SubExpression objective;
    std::vector<SubExpression> rows;
    std::vector<std::string> row_labels;

    /// Sign sanity of the canonical form: convex objective, concave rows.
    void validate_curvature() const;
};

struct SubValues {
    std::vector<ComplexMatrix> mats;
    RealVector scalars;
};

struct FeasibilityReport {
    std::vector<double> row_values;  // signed; negative means violated
    double max_violation = 0.0;
    int worst_row = -1;
};

enum class SolveStatus { converged, max_iters, fallback_warm_start };

struct SubSolution {
    SubValues values;
    double objective = 0.0;
    double feasibility = 0.0;    // max constraint violation of the returned point
    double stationarity = 0.0;   // duality-gap proxy of the final barrier stage
    SolveStatus status = SolveStatus::fallback_warm_start;
};

struct SolveOptions {
    double gap_target = 1e-7;
    int max_outer = 50;
    int max_inner = 100;
    double t_floor = 1e-10;
};

double expression_value(const ConvexSubproblem& sub, const SubExpression& e, const SubValues& v);

/// Interior-point solve from a feasible warm start. Never throws on numeric
/// failure: if no interior point is reachable or the final point is worse
/// than the warm start, the warm start is returned with fallback status.
SubSolution solve(const ConvexSubproblem& sub, const SubValues& warm, const SolveOptions& = {});

FeasibilityReport check_feasibility(const ConvexSubproblem& sub, const SubValues& v);

/// Diagnostic text dump: dimensions, kernels and constraint rows.
void dump_subproblem(const ConvexSubproblem& sub, std::ostream& os);

}  // namespace fmpkit
