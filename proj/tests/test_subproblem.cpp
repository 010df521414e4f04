#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "fmpkit/subproblem.hpp"
#include "helpers.hpp"

using namespace fmpkit;

namespace {

ComplexMatrix scalar_mat(Complex v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

// minimize ||x - c||^2 over the unit ball, x complex 2x1
ConvexSubproblem ball_projection_problem(const ComplexVector& c) {
    ConvexSubproblem sub;
    sub.matrix_shapes.push_back({2, 1});
    sub.objective.matrices.constant = c.squaredNorm();
    sub.objective.matrices.linear.push_back({0, -ComplexMatrix(c)});
    sub.objective.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(1, 1), 1.0});
    SubExpression ball;
    ball.matrices.constant = 1.0;
    ball.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(1, 1), -1.0});
    sub.rows.push_back(ball);
    sub.row_labels.push_back("ball");
    return sub;
}

}  // namespace

TEST_CASE("ball projection") {
    ComplexVector c(2);
    c << Complex(2, 0), Complex(0, 0);
    ConvexSubproblem sub = ball_projection_problem(c);

    SubValues warm;
    warm.mats.push_back(ComplexMatrix::Zero(2, 1));
    warm.scalars = RealVector(0);

    SubSolution sol = solve(sub, warm);
    CHECK(sol.status == SolveStatus::converged);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(sol.values.mats[0](0, 0) - Complex(1, 0)) <= 1e-4);
    CHECK(std::abs(sol.values.mats[0](1, 0)) <= 1e-4);
    CHECK(sol.feasibility <= 1e-8);
}

TEST_CASE("scalar ratio with box rows") {
    ConvexSubproblem sub;
    sub.scalars.push_back({ScalarKind::nonneg, "u"});
    sub.scalars.push_back({ScalarKind::positive, "t"});
    sub.objective.ratios.push_back({0, 1, 1.0});

    SubExpression u_floor;  // u - 1 >= 0
    u_floor.matrices.constant = -1.0;
    u_floor.linear.push_back({0, 1.0});
    sub.rows.push_back(u_floor);

    SubExpression t_cap;  // 2 - t >= 0
    t_cap.matrices.constant = 2.0;
    t_cap.linear.push_back({1, -1.0});
    sub.rows.push_back(t_cap);

    SubValues warm;
    warm.scalars = RealVector(2);
    warm.scalars << 1.5, 1.0;

    SubSolution sol = solve(sub, warm);
    CHECK(sol.objective == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(sol.values.scalars[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(sol.values.scalars[1] == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("ratio objective with quadratic coupling vs grid oracle") {
    // maximize 6 t - 9 (1 + |x|^2)  s.t.  t^2 <= 3 - 0.5 |x|^2, |x|^2 <= 2
    // stored canonically as a minimization
    ConvexSubproblem sub;
    sub.matrix_shapes.push_back({1, 1});
    sub.scalars.push_back({ScalarKind::nonneg, "t"});
    sub.objective.matrices.constant = 9.0;
    sub.objective.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(1, 1), ComplexMatrix::Identity(1, 1), 9.0});
    sub.objective.linear.push_back({0, -6.0});

    SubExpression coupling;  // 3 - 0.5|x|^2 - t^2 >= 0
    coupling.matrices.constant = 3.0;
    coupling.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(1, 1), ComplexMatrix::Identity(1, 1), -0.5});
    coupling.squares.push_back({0, -1.0});
    sub.rows.push_back(coupling);

    SubExpression ball;
    ball.matrices.constant = 2.0;
    ball.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(1, 1), ComplexMatrix::Identity(1, 1), -1.0});
    sub.rows.push_back(ball);

    SubValues warm;
    warm.mats.push_back(scalar_mat(Complex(0.5, 0.2)));
    warm.scalars = RealVector(1);
    warm.scalars << 0.5;

    SubSolution sol = solve(sub, warm);

    // by symmetry the optimum depends on r = |x| only; sweep it finely
    double best = 1e100;
    for (int i = 0; i <= 20000; ++i) {
        const double r2 = 2.0 * i / 20000.0;
        const double t = std::sqrt(3.0 - 0.5 * r2);
        best = std::min(best, 9.0 * (1.0 + r2) - 6.0 * t);
    }
    CHECK(sol.objective == doctest::Approx(best).epsilon(1e-3));
}

TEST_CASE("warm start on the boundary still improves") {
    ComplexVector c(2);
    c << Complex(0.2, 0), Complex(3, -1);
    ConvexSubproblem sub = ball_projection_problem(c);

    SubValues warm;  // exactly on the unit sphere, away from the optimum
    ComplexMatrix w(2, 1);
    w << Complex(1, 0), Complex(0, 0);
    warm.mats.push_back(w);
    warm.scalars = RealVector(0);

    SubSolution sol = solve(sub, warm);
    ComplexVector target = c / c.norm();
    CHECK(sol.objective <= expression_value(sub, sub.objective, warm));
    CHECK((sol.values.mats[0].col(0) - target).norm() <= 1e-3);
    CHECK(sol.feasibility <= 1e-8);
}

TEST_CASE("check_feasibility reports signed violations") {
    ComplexVector c(2);
    c << Complex(2, 0), Complex(0, 0);
    ConvexSubproblem sub = ball_projection_problem(c);

    SubValues doubled;  // ||x||^2 = 4, ball row = 1 - 4 = -3
    ComplexMatrix w(2, 1);
    w << Complex(2, 0), Complex(0, 0);
    doubled.mats.push_back(w);
    doubled.scalars = RealVector(0);

    FeasibilityReport rep = check_feasibility(sub, doubled);
    CHECK(rep.row_values[0] == doctest::Approx(-3.0));
    CHECK(rep.max_violation == doctest::Approx(3.0));
    CHECK(rep.worst_row == 0);

    // a floor row violated at zero
    ConvexSubproblem floor_sub = ball_projection_problem(c);
    SubExpression qos;  // 2 Re{x_0} - 0.5 >= 0
    qos.matrices.constant = -0.5;
    ComplexMatrix coef = ComplexMatrix::Zero(2, 1);
    coef(0, 0) = 1.0;
    qos.matrices.linear.push_back({0, coef});
    floor_sub.rows.push_back(qos);
    SubValues zero;
    zero.mats.push_back(ComplexMatrix::Zero(2, 1));
    zero.scalars = RealVector(0);
    FeasibilityReport rep2 = check_feasibility(floor_sub, zero);
    CHECK(rep2.row_values[1] == doctest::Approx(-0.5));
}

TEST_CASE("determinism") {
    ComplexVector c(2);
    c << Complex(1.3, 0.4), Complex(-0.2, 0.9);
    ConvexSubproblem sub = ball_projection_problem(c);
    SubValues warm;
    warm.mats.push_back(ComplexMatrix::Zero(2, 1));
    warm.scalars = RealVector(0);

    SubSolution a = solve(sub, warm);
    SubSolution b = solve(sub, warm);
    CHECK(std::memcmp(a.values.mats[0].data(), b.values.mats[0].data(),
                      sizeof(Complex) * 2) == 0);
    CHECK(a.objective == b.objective);
}

TEST_CASE("improvement guarantee on random instances") {
    Rng rng(55);
    for (int rep = 0; rep < 20; ++rep) {
        ComplexVector c(2);
        c << rng.complex_gaussian(), rng.complex_gaussian();
        ConvexSubproblem sub = ball_projection_problem(c);
        SubValues warm;
        ComplexMatrix w = rng.complex_gaussian_matrix(2, 1);
        w /= std::max(1.0, w.norm());  // inside or on the ball
        warm.mats.push_back(w);
        warm.scalars = RealVector(0);
        const double warm_obj = expression_value(sub, sub.objective, warm);
        SubSolution sol = solve(sub, warm);
        CHECK(sol.objective <= warm_obj + 1e-12);
        CHECK(sol.feasibility <= 1e-8);
    }
}

TEST_CASE("curvature validation") {
    ConvexSubproblem sub;
    sub.matrix_shapes.push_back({1, 1});
    sub.objective.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(1, 1), ComplexMatrix::Identity(1, 1), -1.0});
    SubValues warm;
    warm.mats.push_back(scalar_mat(0.0));
    warm.scalars = RealVector(0);
    CHECK_THROWS_AS(solve(sub, warm), std::invalid_argument);
}

TEST_CASE("diagnostic dump") {
    ComplexVector c(2);
    c << Complex(2, 0), Complex(0, 0);
    ConvexSubproblem sub = ball_projection_problem(c);
    std::ostringstream os;
    dump_subproblem(sub, os);
    CHECK(os.str().find("matrices: 2x1") != std::string::npos);
    CHECK(os.str().find("row 0 [ball]") != std::string::npos);
}

TEST_CASE("epigraph scalar") {
    // minimize s subject to s - ||x - c||^2 >= 0 within the unit ball
    ComplexVector c(2);
    c << Complex(2, 0), Complex(0, 0);
    ConvexSubproblem sub;
    sub.matrix_shapes.push_back({2, 1});
    sub.scalars.push_back({ScalarKind::free_scalar, "s"});
    sub.objective.linear.push_back({0, 1.0});

    SubExpression epi;
    epi.matrices.constant = -c.squaredNorm();
    epi.matrices.linear.push_back({0, ComplexMatrix(c)});
    epi.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(1, 1), -1.0});
    epi.linear.push_back({0, 1.0});
    sub.rows.push_back(epi);

    SubExpression ball;
    ball.matrices.constant = 1.0;
    ball.matrices.kernels.push_back(
        {0, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(1, 1), -1.0});
    sub.rows.push_back(ball);

    SubValues warm;
    warm.mats.push_back(ComplexMatrix::Zero(2, 1));
    warm.scalars = RealVector(1);
    warm.scalars << 5.0;

    SubSolution sol = solve(sub, warm);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-5));
}
