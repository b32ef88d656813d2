#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "shadowcover/vec.hpp"

namespace shadowcover {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpResult {
    LpStatus status = LpStatus::IterLimit;
    double value = 0.0;
    Vec x;
};

namespace detail {

// Dense two-phase simplex with Bland's rule on
//     min c.x   s.t.  A x = b,  x >= 0.
// Row count is expected to be small (<= ~10); column count may be large.
class StandardSimplex {
public:
    StandardSimplex(const Mat& A, const Vec& b, const Vec& c)
        : m_(static_cast<int>(A.size())), n_(static_cast<int>(c.size())) {
        // tableau: m_ constraint rows, one objective row; columns: n_ vars,
        // m_ artificials, rhs
        cols_ = n_ + m_ + 1;
        t_.assign(static_cast<std::size_t>(m_ + 1) * cols_, 0.0);
        basis_.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            double sgn = b[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 1.0;
            for (int j = 0; j < n_; ++j) at(i, j) = sgn * A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            at(i, n_ + i) = 1.0;
            rhs(i) = sgn * b[static_cast<std::size_t>(i)];
            basis_[static_cast<std::size_t>(i)] = n_ + i;
        }
        cost_ = c;
    }

    LpResult solve(int max_iters = 200000) {
        LpResult res;
        // phase 1: minimize sum of artificials
        for (int j = 0; j < cols_; ++j) at(m_, j) = 0.0;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < cols_; ++j) at(m_, j) -= at(i, j);
        for (int i = 0; i < m_; ++i) at(m_, n_ + i) = 0.0;

        if (!iterate(max_iters, /*phase1=*/true)) {
            res.status = LpStatus::IterLimit;
            return res;
        }
        if (-rhs(m_) > feas_tol_) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // drive artificials out of the basis where possible
        for (int i = 0; i < m_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < n_) continue;
            int enter = -1;
            for (int j = 0; j < n_; ++j)
                if (std::fabs(at(i, j)) > pivot_tol_) { enter = j; break; }
            if (enter >= 0) pivot(i, enter);
            // else: redundant row; keep artificial at zero level
        }

        // phase 2
        for (int j = 0; j < cols_; ++j) at(m_, j) = 0.0;
        for (int j = 0; j < n_; ++j) at(m_, j) = cost_[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i) {
            int bj = basis_[static_cast<std::size_t>(i)];
            if (bj < n_) {
                double cb = cost_[static_cast<std::size_t>(bj)];
                if (cb != 0.0)
                    for (int j = 0; j < cols_; ++j) at(m_, j) -= cb * at(i, j);
            }
        }
        // artificials must not re-enter
        phase2_ = true;
        if (!iterate(max_iters, /*phase1=*/false)) {
            res.status = unbounded_ ? LpStatus::Unbounded : LpStatus::IterLimit;
            return res;
        }

        res.status = LpStatus::Optimal;
        res.x = zeros(n_);
        for (int i = 0; i < m_; ++i) {
            int bj = basis_[static_cast<std::size_t>(i)];
            if (bj < n_) res.x[static_cast<std::size_t>(bj)] = rhs(i);
        }
        res.value = -rhs(m_);
        return res;
    }

    const std::vector<int>& basis() const { return basis_; }

private:
    double& at(int r, int j) { return t_[static_cast<std::size_t>(r) * cols_ + j]; }
    double& rhs(int r) { return t_[static_cast<std::size_t>(r) * cols_ + (cols_ - 1)]; }

    bool iterate(int max_iters, bool phase1) {
        for (int it = 0; it < max_iters; ++it) {
            // Bland: entering = lowest-index column with negative reduced cost
            int enter = -1;
            int jmax = phase1 ? n_ + m_ : n_;
            for (int j = 0; j < jmax; ++j) {
                if (phase2_ && j >= n_) break;
                if (at(m_, j) < -opt_tol_) { enter = j; break; }
            }
            if (enter < 0) return true;
            // ratio test, ties broken by lowest basis variable index
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                double a = at(i, enter);
                if (a > pivot_tol_) {
                    double ratio = rhs(i) / a;
                    if (ratio < best - 1e-15 ||
                        (ratio < best + 1e-15 &&
                         (leave < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                unbounded_ = true;
                return false;
            }
            pivot(leave, enter);
        }
        return false;
    }

    void pivot(int r, int jc) {
        double piv = at(r, jc);
        double inv = 1.0 / piv;
        for (int j = 0; j < cols_; ++j) at(r, j) *= inv;
        at(r, jc) = 1.0;
        for (int i = 0; i <= m_; ++i) {
            if (i == r) continue;
            double f = at(i, jc);
            if (f == 0.0) continue;
            for (int j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
            at(i, jc) = 0.0;
        }
        basis_[static_cast<std::size_t>(r)] = jc;
    }

    int m_, n_, cols_;
    std::vector<double> t_;
    std::vector<int> basis_;
    Vec cost_;
    bool phase2_ = false;
    bool unbounded_ = false;
    static constexpr double opt_tol_ = 1e-10;
    static constexpr double feas_tol_ = 1e-8;
    static constexpr double pivot_tol_ = 1e-11;
};

}  // namespace detail

// min c.x  s.t.  A x = b, x >= 0
inline LpResult lp_solve_standard(const Mat& A, const Vec& b, const Vec& c) {
    detail::StandardSimplex s(A, b, c);
    return s.solve();
}

// max c.x  s.t.  A x <= b, with x free. Solved through the standard-form dual
//     min b.y  s.t.  A^T y = c, y >= 0,
// whose row count equals the (small) number of primal variables. The primal
// optimizer is recovered from the tight rows selected by the optimal basis.
inline LpResult lp_max_ineq(const Vec& c, const Mat& A, const Vec& b) {
    const int nvars = static_cast<int>(c.size());
    const int m = static_cast<int>(A.size());
    Mat At(static_cast<std::size_t>(nvars), Vec(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < nvars; ++j) At[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

    detail::StandardSimplex s(At, c, b);
    LpResult dual = s.solve();

    LpResult res;
    if (dual.status == LpStatus::Infeasible) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    if (dual.status == LpStatus::Unbounded) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    if (dual.status != LpStatus::Optimal) {
        res.status = dual.status;
        return res;
    }

    // Basic dual columns correspond to tight primal constraints
    // (their reduced costs vanish): solve A_B x = b_B.
    std::vector<int> rows;
    for (int bj : s.basis())
        if (bj < m) rows.push_back(bj);

    Mat M;
    Vec rhsv;
    for (int r : rows) {
        M.push_back(A[static_cast<std::size_t>(r)]);
        rhsv.push_back(b[static_cast<std::size_t>(r)]);
    }
    res.status = LpStatus::Optimal;
    res.value = dual.value;
    if (static_cast<int>(rows.size()) == nvars) {
        try {
            res.x = solve_linear(M, rhsv);
            return res;
        } catch (const degenerate_error&) {
            // fall through to least-squares recovery
        }
    }
    // Least-squares recovery (degenerate bases): minimize |A_B x - b_B|^2,
    // regularized.
    Mat G(static_cast<std::size_t>(nvars), zeros(nvars));
    Vec g = zeros(nvars);
    for (std::size_t r = 0; r < M.size(); ++r) {
        for (int i = 0; i < nvars; ++i) {
            g[static_cast<std::size_t>(i)] += M[r][static_cast<std::size_t>(i)] * rhsv[r];
            for (int j = 0; j < nvars; ++j)
                G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += M[r][static_cast<std::size_t>(i)] * M[r][static_cast<std::size_t>(j)];
        }
    }
    for (int i = 0; i < nvars; ++i) G[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += 1e-12;
    res.x = solve_linear(G, g);
    return res;
}

// Feasibility of p in conv(points): phase-1 LP on sum(lambda_i v_i) = p,
// sum(lambda) = 1, lambda >= 0.
inline bool in_convex_hull_lp(const Vec& p, const std::vector<Vec>& points, double tol = 1e-9) {
    const int d = static_cast<int>(p.size());
    const int m = static_cast<int>(points.size());
    Mat A(static_cast<std::size_t>(d + 1), Vec(static_cast<std::size_t>(m)));
    Vec b(static_cast<std::size_t>(d + 1));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = points[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < m; ++j) A[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] = 1.0;
    b[static_cast<std::size_t>(d)] = 1.0;
    // scale-invariance: normalize rows
    for (int i = 0; i <= d; ++i) {
        double s = std::max(1.0, std::fabs(b[static_cast<std::size_t>(i)]));
        for (auto& v : A[static_cast<std::size_t>(i)]) v /= s;
        b[static_cast<std::size_t>(i)] /= s;
    }
    LpResult r = lp_solve_standard(A, b, zeros(m));
    (void)tol;
    return r.status == LpStatus::Optimal;
}

}  // namespace shadowcover
