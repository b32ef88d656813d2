#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "shadowcover/body.hpp"
#include "shadowcover/vec.hpp"

namespace shadowcover {

struct DistResult {
    double dist = 0.0;
    Vec point;  // closest point of the body
    int iters = 0;
};

namespace detail {

// Min-norm point of aff{wributes} relative to target, by subset enumeration
// (Johnson-style). Returns barycentric-feasible candidate with smallest
// distance; subsets that are affinely dependent are skipped.
struct SimplexSolve {
    Vec point;
    std::vector<int> keep;
    double d2 = std::numeric_limits<double>::infinity();
    bool ok = false;
};

inline SimplexSolve min_norm_point(const std::vector<Vec>& w, const Vec& p) {
    SimplexSolve best;
    const int m = static_cast<int>(w.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const std::size_t k = idx.size();
        const Vec& w0 = w[static_cast<std::size_t>(idx[0])];
        Vec x;
        std::vector<double> lam;
        if (k == 1) {
            x = w0;
            lam = {1.0};
        } else {
            Mat g(k - 1, Vec(k - 1));
            Vec rhs(k - 1);
            std::vector<Vec> e;
            for (std::size_t i = 1; i < k; ++i) e.push_back(sub(w[static_cast<std::size_t>(idx[i])], w0));
            for (std::size_t i = 0; i + 1 < k; ++i) {
                rhs[i] = dot(e[i], sub(p, w0));
                for (std::size_t j = 0; j + 1 < k; ++j) g[i][j] = dot(e[i], e[j]);
            }
            Vec mu;
            try {
                mu = solve_linear(g, rhs);
            } catch (const degenerate_error&) {
                continue;
            }
            double l0 = 1.0;
            lam.assign(k, 0.0);
            for (std::size_t i = 0; i + 1 < k; ++i) {
                lam[i + 1] = mu[i];
                l0 -= mu[i];
            }
            lam[0] = l0;
            bool feas = true;
            for (double l : lam)
                if (l < -1e-12) feas = false;
            if (!feas) continue;
            x = scaled(w0, lam[0]);
            for (std::size_t i = 1; i < k; ++i) axpy(x, lam[i], w[static_cast<std::size_t>(idx[i])]);
        }
        double d2 = norm2(sub(p, x));
        if (d2 < best.d2 - 1e-16 || (!best.ok)) {
            best.ok = true;
            best.d2 = d2;
            best.point = x;
            best.keep = idx;
        }
    }
    return best;
}

}  // namespace detail

// Closest point of a convex body to p. Fully-corrective Frank-Wolfe over the
// support-point oracle (Wolfe's min-norm-point scheme); terminates on the
// duality-gap bound upper - lower <= tol. Exact (to FP) for polytopes.
inline DistResult closest_point(const BodyExpr& b, const Vec& p, double tol = 1e-10,
                                int max_iters = 4000) {
    DistResult res;
    Vec dir = p;
    if (norm(dir) < 1e-300) dir = unit(b.dim, 0);
    std::vector<Vec> w = {support_point(b, dir)};
    Vec x = w[0];
    double lower = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        res.iters = it + 1;
        Vec d = sub(p, x);
        double dn = norm(d);
        if (dn <= tol) {
            res.dist = 0.0;
            res.point = p;
            return res;
        }
        Vec s = support_point(b, d);
        double sep = (dot(d, p) - dot(d, s)) / dn;  // separation lower bound
        lower = std::max(lower, sep);
        if (dn - std::max(lower, 0.0) <= tol || dot(d, sub(s, x)) <= tol * dn) {
            res.dist = dn;
            res.point = x;
            return res;
        }
        w.push_back(s);
        auto sol = detail::min_norm_point(w, p);
        if (!sol.ok) {
            res.dist = dn;
            res.point = x;
            return res;
        }
        std::vector<Vec> w2;
        for (int i : sol.keep) w2.push_back(w[static_cast<std::size_t>(i)]);
        w = std::move(w2);
        x = sol.point;
        if (static_cast<int>(w.size()) > b.dim + 1) w.resize(static_cast<std::size_t>(b.dim + 1));
    }
    res.dist = norm(sub(p, x));
    res.point = x;
    return res;
}

// Euclidean distance to a polytope through the same scheme over the vertex set.
inline double dist_to_polytope(const Vec& p, const VPolytope& poly, double tol = 1e-10) {
    BodyExpr b = body_from_polytope(poly);
    return closest_point(b, p, tol).dist;
}

// Membership with early exit: certifies dist <= eps or dist > eps.
inline bool contains_point(const BodyExpr& b, const Vec& p, double eps, int max_iters = 4000) {
    Vec dir = p;
    if (norm(dir) < 1e-300) dir = unit(b.dim, 0);
    std::vector<Vec> w = {support_point(b, dir)};
    Vec x = w[0];
    for (int it = 0; it < max_iters; ++it) {
        Vec d = sub(p, x);
        double dn = norm(d);
        if (dn <= eps) return true;
        Vec s = support_point(b, d);
        double sep = (dot(d, p) - dot(d, s)) / dn;
        if (sep > eps) return false;
        if (dot(d, sub(s, x)) <= 1e-14 * std::max(1.0, dn)) return dn <= eps;
        w.push_back(s);
        auto sol = detail::min_norm_point(w, p);
        if (!sol.ok) return dn <= eps;
        std::vector<Vec> w2;
        for (int i : sol.keep) w2.push_back(w[static_cast<std::size_t>(i)]);
        w = std::move(w2);
        x = sol.point;
    }
    return norm(sub(p, x)) <= eps;
}

}  // namespace shadowcover
