#include "fmpkit/subproblem.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <ostream>

namespace fmpkit {

namespace {

constexpr double kWarmFeasTol = 1e-8;
constexpr double kInteriorMargin = 1e-9;
constexpr double kInteriorTarget = 1e-2;  // healthy normalized slack for phase 2
constexpr double kInnerTol = 1e-10;

// Real flattening: each matrix occupies [Re vec(X); Im vec(X)], scalars after.
struct Layout {
    std::vector<int> mat_offset;
    std::vector<Eigen::Index> mat_rows, mat_cols;
    int scalar_offset = 0;
    int dim = 0;

    explicit Layout(const ConvexSubproblem& sub) {
        int at = 0;
        for (const auto& [r, c] : sub.matrix_shapes) {
            mat_offset.push_back(at);
            mat_rows.push_back(r);
            mat_cols.push_back(c);
            at += static_cast<int>(2 * r * c);
        }
        scalar_offset = at;
        dim = at + static_cast<int>(sub.scalars.size());
    }

    RealVector flatten(const SubValues& v) const {
        RealVector x = RealVector::Zero(dim);
        for (size_t m = 0; m < mat_offset.size(); ++m) {
            const Eigen::Index nc = mat_rows[m] * mat_cols[m];
            for (Eigen::Index i = 0; i < nc; ++i) {
                x[mat_offset[m] + i] = v.mats[m](i % mat_rows[m], i / mat_rows[m]).real();
                x[mat_offset[m] + nc + i] = v.mats[m](i % mat_rows[m], i / mat_rows[m]).imag();
            }
        }
        for (Eigen::Index i = 0; i < v.scalars.size(); ++i) x[scalar_offset + i] = v.scalars[i];
        return x;
    }

    SubValues unflatten(const RealVector& x) const {
        SubValues v;
        for (size_t m = 0; m < mat_offset.size(); ++m) {
            ComplexMatrix w(mat_rows[m], mat_cols[m]);
            const Eigen::Index nc = mat_rows[m] * mat_cols[m];
            for (Eigen::Index i = 0; i < nc; ++i) {
                w(i % mat_rows[m], i / mat_rows[m]) =
                    Complex(x[mat_offset[m] + i], x[mat_offset[m] + nc + i]);
            }
            v.mats.push_back(std::move(w));
        }
        v.scalars = x.segment(scalar_offset, dim - scalar_offset);
        return v;
    }
};

// Quadratic model of one expression in real coordinates:
//   value(x) = c0 + b.x + x^T A x / 2 + sum coef u^2 / t
struct Prepared {
    double c0 = 0.0;
    RealVector b;
    RealMatrix A;
    std::vector<RatioTermSpec> ratios;  // indices already global

    double value(const RealVector& x) const {
        double acc = c0 + b.dot(x) + 0.5 * x.dot(A * x);
        for (const auto& r : ratios) acc += r.coef * x[r.u] * x[r.u] / x[r.t];
        return acc;
    }

    void add_gradient(const RealVector& x, double w, RealVector& g) const {
        g.noalias() += w * (b + A * x);
        for (const auto& r : ratios) {
            const double u = x[r.u], t = x[r.t];
            g[r.u] += w * r.coef * 2.0 * u / t;
            g[r.t] -= w * r.coef * u * u / (t * t);
        }
    }

    void add_hessian(const RealVector& x, double w, RealMatrix& h) const {
        h.noalias() += w * A;
        for (const auto& r : ratios) {
            const double u = x[r.u], t = x[r.t];
            h(r.u, r.u) += w * r.coef * 2.0 / t;
            h(r.u, r.t) -= w * r.coef * 2.0 * u / (t * t);
            h(r.t, r.u) -= w * r.coef * 2.0 * u / (t * t);
            h(r.t, r.t) += w * r.coef * 2.0 * u * u / (t * t * t);
        }
    }
};

void add_kernel(RealMatrix& a, int offset, const KernelTerm& k) {
    const Eigen::Index rows = k.left.rows();
    const Eigen::Index cols = k.right.rows();
    const Eigen::Index nc = rows * cols;
    // P = right^T (x) left maps vec(X) so that Tr(L X R X^H) = vec^H P vec.
    ComplexMatrix p(nc, nc);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < cols; ++i) {
            p.block(i * rows, j * rows, rows, rows) = k.right(j, i) * k.left;
        }
    }
    const RealMatrix re = p.real();
    const RealMatrix im = p.imag();
    const double w = 2.0 * k.weight;
    a.block(offset, offset, nc, nc) += w * re;
    a.block(offset, offset + nc, nc, nc) -= w * im;
    a.block(offset + nc, offset, nc, nc) += w * im;
    a.block(offset + nc, offset + nc, nc, nc) += w * re;
}

Prepared prepare(const SubExpression& e, const Layout& lay) {
    Prepared p;
    p.c0 = e.matrices.constant;
    p.b = RealVector::Zero(lay.dim);
    p.A = RealMatrix::Zero(lay.dim, lay.dim);
    for (const auto& lt : e.matrices.linear) {
        const int off = lay.mat_offset[lt.var];
        const Eigen::Index nc = lt.coef.size();
        for (Eigen::Index i = 0; i < nc; ++i) {
            p.b[off + i] += 2.0 * lt.coef(i % lt.coef.rows(), i / lt.coef.rows()).real();
            p.b[off + nc + i] += 2.0 * lt.coef(i % lt.coef.rows(), i / lt.coef.rows()).imag();
        }
    }
    for (const auto& k : e.matrices.kernels) add_kernel(p.A, lay.mat_offset[k.var], k);
    for (const auto& ls : e.linear) p.b[lay.scalar_offset + ls.scalar] += ls.coef;
    for (const auto& sq : e.squares) {
        p.A(lay.scalar_offset + sq.scalar, lay.scalar_offset + sq.scalar) += 2.0 * sq.coef;
    }
    for (const auto& rt : e.ratios) {
        p.ratios.push_back(
            {lay.scalar_offset + rt.u, lay.scalar_offset + rt.t, rt.coef});
    }
    return p;
}

struct Bound {
    int index;     // global coordinate
    double lower;  // x[index] - lower >= 0
};

bool solve_newton_step(const RealMatrix& h, const RealVector& g, RealVector& step) {
    RealMatrix m = h;
    const double base = std::max(1e-300, h.diagonal().cwiseAbs().maxCoeff());
    double ridge = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        Eigen::LLT<RealMatrix> llt(m);
        if (llt.info() == Eigen::Success) {
            step = llt.solve(-g);
            if (step.allFinite()) return true;
        }
        ridge = (ridge == 0.0) ? 1e-12 * base : ridge * 100.0;
        m = h + ridge * RealMatrix::Identity(h.rows(), h.cols());
    }
    return false;
}

}  // namespace

void ConvexSubproblem::validate_curvature() const {
    for (const auto& k : objective.matrices.kernels) {
        if (k.weight < 0) throw std::invalid_argument("objective kernel must be convex");
    }
    for (const auto& s : objective.squares) {
        if (s.coef < 0) throw std::invalid_argument("objective square must be convex");
    }
    for (const auto& r : objective.ratios) {
        if (r.coef < 0) throw std::invalid_argument("objective ratio must be convex");
    }
    for (const auto& row : rows) {
        for (const auto& k : row.matrices.kernels) {
            if (k.weight > 0) throw std::invalid_argument("constraint row must be concave");
        }
        for (const auto& s : row.squares) {
            if (s.coef > 0) throw std::invalid_argument("constraint row must be concave");
        }
        for (const auto& r : row.ratios) {
            if (r.coef > 0) throw std::invalid_argument("constraint row must be concave");
        }
    }
}

double expression_value(const ConvexSubproblem& sub, const SubExpression& e, const SubValues& v) {
    const Layout lay(sub);
    return prepare(e, lay).value(lay.flatten(v));
}

FeasibilityReport check_feasibility(const ConvexSubproblem& sub, const SubValues& v) {
    const Layout lay(sub);
    const RealVector x = lay.flatten(v);
    FeasibilityReport rep;
    for (const auto& row : sub.rows) {
        rep.row_values.push_back(prepare(row, lay).value(x));
    }
    for (size_t s = 0; s < sub.scalars.size(); ++s) {
        if (sub.scalars[s].kind == ScalarKind::positive) {
            rep.row_values.push_back(x[lay.scalar_offset + s]);
        } else if (sub.scalars[s].kind == ScalarKind::nonneg) {
            rep.row_values.push_back(x[lay.scalar_offset + s]);
        }
    }
    for (size_t i = 0; i < rep.row_values.size(); ++i) {
        const double viol = std::max(0.0, -rep.row_values[i]);
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_row = static_cast<int>(i);
        }
    }
    return rep;
}

SubSolution solve(const ConvexSubproblem& sub, const SubValues& warm, const SolveOptions& opts) {
    sub.validate_curvature();
    const Layout lay(sub);

    const Prepared obj = prepare(sub.objective, lay);
    std::vector<Prepared> rows;
    rows.reserve(sub.rows.size());
    for (const auto& r : sub.rows) rows.push_back(prepare(r, lay));

    std::vector<Bound> bounds;
    for (size_t s = 0; s < sub.scalars.size(); ++s) {
        if (sub.scalars[s].kind == ScalarKind::positive) {
            bounds.push_back({lay.scalar_offset + static_cast<int>(s), opts.t_floor});
        } else if (sub.scalars[s].kind == ScalarKind::nonneg) {
            bounds.push_back({lay.scalar_offset + static_cast<int>(s), 0.0});
        }
    }

    RealVector x_warm = lay.flatten(warm);
    const double warm_obj = obj.value(x_warm);

    auto make_fallback = [&](double stationarity) {
        SubSolution out;
        out.values = warm;
        out.objective = warm_obj;
        out.feasibility = check_feasibility(sub, warm).max_violation;
        out.stationarity = stationarity;
        out.status = SolveStatus::fallback_warm_start;
        return out;
    };

    // warm start must be feasible up to tolerance
    {
        double viol = 0.0;
        for (const auto& r : rows) viol = std::max(viol, -r.value(x_warm));
        for (const auto& b : bounds) viol = std::max(viol, b.lower - x_warm[b.index]);
        if (!(viol <= kWarmFeasTol)) return make_fallback(viol);
    }

    // row normalization
    std::vector<double> row_scale(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        row_scale[r] = std::max(1.0, std::abs(rows[r].value(x_warm)));
    }
    double obj_scale = std::max(1.0, std::abs(warm_obj));
    {
        RealVector g = RealVector::Zero(lay.dim);
        obj.add_gradient(x_warm, 1.0, g);
        if (g.allFinite()) obj_scale = std::max(obj_scale, g.cwiseAbs().maxCoeff());
    }

    auto min_slack = [&](const RealVector& x) {
        double slack = std::numeric_limits<double>::infinity();
        for (size_t r = 0; r < rows.size(); ++r) {
            const double v = rows[r].value(x) / row_scale[r];
            if (!std::isfinite(v)) return -std::numeric_limits<double>::infinity();
            slack = std::min(slack, v);
        }
        for (const auto& b : bounds) slack = std::min(slack, x[b.index] - b.lower);
        return slack;
    };

    RealVector x = x_warm;

    // ---- phase 1: pull strictly inside when the warm start sits on a face.
    // Maximizes the worst normalized slack with a proximal anchor at the warm
    // start; the anchor keeps the barrier coercive (slack logs alone are
    // unbounded along directions that grow the slacks).
    if (min_slack(x) < kInteriorMargin) {
        const int n = lay.dim;
        RealVector y(n + 1);
        y.head(n) = x;
        y[n] = min_slack(x) - 1.0;
        const RealVector anchor = y;
        const double prox = 1.0;

        double barrier_w = 1.0;
        bool interior = false;
        for (int outer = 0; outer < 14 && !interior; ++outer) {
            for (int inner = 0; inner < opts.max_inner; ++inner) {
                RealVector g = RealVector::Zero(n + 1);
                RealMatrix h = RealMatrix::Zero(n + 1, n + 1);
                g[n] = -barrier_w;  // maximize the slack variable
                g += prox * (y - anchor);
                h.diagonal().array() += prox;
                RealVector gr = RealVector::Zero(n);
                for (size_t r = 0; r < rows.size(); ++r) {
                    const double v = rows[r].value(y.head(n)) / row_scale[r] - y[n];
                    gr.setZero();
                    rows[r].add_gradient(y.head(n), 1.0 / row_scale[r], gr);
                    g.head(n) -= gr / v;
                    g[n] += 1.0 / v;
                    RealMatrix hr = RealMatrix::Zero(n, n);
                    rows[r].add_hessian(y.head(n), 1.0 / row_scale[r], hr);
                    h.topLeftCorner(n, n) -= hr / v;
                    RealVector full = RealVector::Zero(n + 1);
                    full.head(n) = gr;
                    full[n] = -1.0;
                    h.noalias() += (full * full.transpose()) / (v * v);
                }
                for (const auto& b : bounds) {
                    const double v = y[b.index] - b.lower - y[n];
                    RealVector full = RealVector::Zero(n + 1);
                    full[b.index] = 1.0;
                    full[n] = -1.0;
                    g -= full / v;
                    h.noalias() += (full * full.transpose()) / (v * v);
                }
                RealVector step(n + 1);
                if (!solve_newton_step(h, g, step)) break;
                const double decrement = -g.dot(step);
                if (decrement * 0.5 <= kInnerTol) break;
                double alpha = 1.0;
                bool moved = false;
                for (int ls = 0; ls < 60; ++ls) {
                    RealVector cand = y + alpha * step;
                    bool ok = true;
                    for (size_t r = 0; r < rows.size() && ok; ++r) {
                        const double v = rows[r].value(cand.head(n)) / row_scale[r] - cand[n];
                        ok = std::isfinite(v) && v > 0.0;
                    }
                    for (const auto& b : bounds) {
                        if (!(cand[b.index] - b.lower - cand[n] > 0.0)) ok = false;
                    }
                    if (ok) {
                        y = cand;
                        moved = true;
                        break;
                    }
                    alpha *= 0.5;
                }
                if (!moved) break;
                if (y[n] >= kInteriorTarget) {
                    interior = true;
                    break;
                }
            }
            barrier_w *= 10.0;
        }
        if (y[n] > 0.0 && min_slack(y.head(n)) > 0.0) {
            x = y.head(n);
        } else {
            return make_fallback(0.0);
        }
    }

    // ---- phase 2: barrier path following
    const double m_total = static_cast<double>(rows.size() + bounds.size());
    double t = 1.0;
    double last_decrement = 0.0;
    bool hit_cap = false;
    for (int outer = 0; outer < opts.max_outer; ++outer) {
        for (int inner = 0; inner < opts.max_inner; ++inner) {
            RealVector g = RealVector::Zero(lay.dim);
            RealMatrix h = RealMatrix::Zero(lay.dim, lay.dim);
            obj.add_gradient(x, t / obj_scale, g);
            obj.add_hessian(x, t / obj_scale, h);
            RealVector gr = RealVector::Zero(lay.dim);
            for (size_t r = 0; r < rows.size(); ++r) {
                const double v = rows[r].value(x) / row_scale[r];
                gr.setZero();
                rows[r].add_gradient(x, 1.0 / row_scale[r], gr);
                g -= gr / v;
                rows[r].add_hessian(x, -1.0 / (v * row_scale[r]), h);
                h.noalias() += (gr * gr.transpose()) / (v * v);
            }
            for (const auto& b : bounds) {
                const double v = x[b.index] - b.lower;
                g[b.index] -= 1.0 / v;
                h(b.index, b.index) += 1.0 / (v * v);
            }
            RealVector step(lay.dim);
            if (!solve_newton_step(h, g, step)) {
                hit_cap = true;
                break;
            }
            last_decrement = -g.dot(step);
            if (last_decrement * 0.5 <= kInnerTol) break;

            double alpha = 1.0;
            bool moved = false;
            const double slope = g.dot(step);
            const double phi0 = t / obj_scale * obj.value(x) - [&] {
                double acc = 0.0;
                for (size_t r = 0; r < rows.size(); ++r) {
                    acc += std::log(rows[r].value(x) / row_scale[r]);
                }
                for (const auto& b : bounds) acc += std::log(x[b.index] - b.lower);
                return acc;
            }();
            for (int ls = 0; ls < 60; ++ls) {
                RealVector cand = x + alpha * step;
                bool ok = true;
                double barrier = 0.0;
                for (const auto& b : bounds) {
                    const double v = cand[b.index] - b.lower;
                    if (!(v > 0.0)) {
                        ok = false;
                        break;
                    }
                    barrier += std::log(v);
                }
                for (size_t r = 0; r < rows.size() && ok; ++r) {
                    const double v = rows[r].value(cand) / row_scale[r];
                    if (!std::isfinite(v) || !(v > 0.0)) {
                        ok = false;
                        break;
                    }
                    barrier += std::log(v);
                }
                if (ok) {
                    const double phi = t / obj_scale * obj.value(cand) - barrier;
                    if (phi <= phi0 + 0.25 * alpha * slope) {
                        x = cand;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        if (m_total / t <= opts.gap_target) break;
        t *= 10.0;
        if (outer == opts.max_outer - 1) hit_cap = true;
    }

    SubSolution out;
    const double final_obj = obj.value(x);
    if (!(final_obj <= warm_obj) || !x.allFinite()) {
        return make_fallback(m_total / t);
    }
    out.values = lay.unflatten(x);
    out.objective = final_obj;
    out.feasibility = check_feasibility(sub, out.values).max_violation;
    out.stationarity = m_total / t + last_decrement;
    out.status = hit_cap ? SolveStatus::max_iters : SolveStatus::converged;
    return out;
}

void dump_subproblem(const ConvexSubproblem& sub, std::ostream& os) {
    os << "matrices:";
    for (const auto& [r, c] : sub.matrix_shapes) os << " " << r << "x" << c;
    os << "\nscalars:";
    for (const auto& s : sub.scalars) {
        os << " " << s.name << "("
           << (s.kind == ScalarKind::positive ? "+" : s.kind == ScalarKind::nonneg ? "0+" : "free")
           << ")";
    }
    os << "\n";
    auto dump_expr = [&os](const SubExpression& e) {
        os << "  const " << e.matrices.constant << "\n";
        for (const auto& l : e.matrices.linear) {
            os << "  linear var " << l.var << ":\n" << l.coef << "\n";
        }
        for (const auto& k : e.matrices.kernels) {
            os << "  kernel var " << k.var << " weight " << k.weight << " left:\n"
               << k.left << "\n  right:\n"
               << k.right << "\n";
        }
        for (const auto& l : e.linear) os << "  scalar " << l.scalar << " coef " << l.coef << "\n";
        for (const auto& s : e.squares) {
            os << "  square scalar " << s.scalar << " coef " << s.coef << "\n";
        }
        for (const auto& r : e.ratios) {
            os << "  ratio " << r.coef << " * u" << r.u << "^2 / t" << r.t << "\n";
        }
    };
    os << "objective:\n";
    dump_expr(sub.objective);
    for (size_t i = 0; i < sub.rows.size(); ++i) {
        os << "row " << i << (i < sub.row_labels.size() ? " [" + sub.row_labels[i] + "]" : "")
           << " >= 0:\n";
        dump_expr(sub.rows[i]);
    }
}

}  // namespace fmpkit
