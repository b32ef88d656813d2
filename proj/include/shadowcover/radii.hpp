#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "shadowcover/body.hpp"
#include "shadowcover/lp.hpp"
#include "shadowcover/polytope.hpp"
#include "shadowcover/rng.hpp"
#include "shadowcover/sphere_opt.hpp"

namespace shadowcover {

// Largest inscribed ball: max r s.t. normal_i . c + r <= offset_i.
inline std::pair<double, Vec> inradius(const HPolytope& h) {
    auto [r, center] = chebyshev_center(h);
    if (r < 0.0) throw infeasible_error("halfspace system is empty");
    return {r, center};
}

struct WidthResult {
    double width = 0.0;
    Vec direction;
};

namespace detail {

inline double width_at(const BodyExpr& b, const Vec& u) {
    return support(b, u) + support(b, scaled(u, -1.0));
}

// `sign` +1 minimizes the width, -1 maximizes.
inline WidthResult sphere_descent(const BodyExpr& b, Vec u, double sign, Rng& rng) {
    SphereOpt r = sphere_minimize([&](const Vec& v) { return sign * width_at(b, v); }, std::move(u), rng);
    return {sign * r.value, r.point};
}

inline void add_candidate(std::vector<Vec>& out, const Vec& v) {
    double n = norm(v);
    if (n > 1e-9) out.push_back(scaled(v, 1.0 / n));
}

// Structured seed directions: facet normals, vertex differences, and (for
// small vertex counts) centroid differences of complementary vertex subsets;
// the latter contain the exact width directions of simplices.
inline std::vector<Vec> width_candidates(const BodyExpr& b) {
    std::vector<Vec> cands;
    auto poly = as_polytope(b);
    std::optional<PolyBallForm> pb;
    if (!poly) {
        pb = as_polytope_plus_ball(b);
        if (pb) poly = pb->poly;
    }
    if (!poly) return cands;
    const auto& vs = poly->vertices;
    const std::size_t nv = vs.size();
    if (nv <= 64) {
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i + 1; j < nv; ++j) add_candidate(cands, sub(vs[i], vs[j]));
    }
    if (nv <= 12 && nv >= 2) {
        for (unsigned mask = 1; mask + 1 < (1u << nv); ++mask) {
            Vec cs = zeros(poly->dim), ct = zeros(poly->dim);
            int ks = 0, kt = 0;
            for (std::size_t i = 0; i < nv; ++i) {
                if (mask & (1u << i)) {
                    cs = add(cs, vs[i]);
                    ++ks;
                } else {
                    ct = add(ct, vs[i]);
                    ++kt;
                }
            }
            add_candidate(cands, sub(scaled(cs, 1.0 / ks), scaled(ct, 1.0 / kt)));
        }
    }
    if (nv <= 600) {
        try {
            Hull h = convex_hull(vs, poly->dim);
            if (!h.degenerate)
                for (const HullFacet& f : h.facets) cands.push_back(f.normal);
        } catch (const error&) {
        }
    }
    return cands;
}

}  // namespace detail

// Minimal width: min over unit u of h(u) + h(-u). Dense sphere sampling plus
// structured candidate directions, refined by local descent.
inline WidthResult min_width(const BodyExpr& b, std::uint64_t seed = 0x5eedULL, int coarse = 0) {
    const int n = b.dim;
    if (coarse <= 0) coarse = 10000 * std::max(1, n - 2);
    Rng rng = derive_rng(seed, "minwidth");
    std::vector<Vec> cands = detail::width_candidates(b);
    for (int i = 0; i < coarse; ++i) cands.push_back(rng.unit_vec(n));
    for (int i = 0; i < n; ++i) cands.push_back(unit(n, i));

    // best few, mutually separated starts
    std::vector<std::pair<double, Vec>> scored;
    scored.reserve(cands.size());
    for (const Vec& u : cands) scored.push_back({detail::width_at(b, u), u});
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& c) { return a.first < c.first; });
    std::vector<Vec> starts;
    for (const auto& [w, u] : scored) {
        bool fresh = true;
        for (const Vec& s : starts)
            if (std::fabs(dot(s, u)) > 0.999) fresh = false;
        if (fresh) starts.push_back(u);
        if (starts.size() >= 5) break;
    }

    WidthResult best{std::numeric_limits<double>::infinity(), {}};
    for (const Vec& s : starts) {
        WidthResult r = detail::sphere_descent(b, s, +1.0, rng);
        if (r.width < best.width) best = r;
    }
    return best;
}

// Diameter = maximum width; exact vertex-pair maximum for polytopes.
inline double diameter(const BodyExpr& b) {
    if (auto p = as_polytope(b)) return diameter_vertices(*p);
    if (auto pb = as_polytope_plus_ball(b)) return diameter_vertices(pb->poly) + 2.0 * pb->radius;
    Rng rng = derive_rng(0xD1A, "diameter");
    double best = 0.0;
    for (int i = 0; i < 4000 * std::max(1, b.dim - 2); ++i)
        best = std::max(best, detail::width_at(b, rng.unit_vec(b.dim)));
    Vec u = rng.unit_vec(b.dim);
    WidthResult r = detail::sphere_descent(b, u, -1.0, rng);
    return std::max(best, r.width);
}

// Minimum enclosing ball by projected gradient ascent on the dual simplex QP
//     max  sum_i w_i |v_i|^2 - |sum_i w_i v_i|^2,
// stopped at duality gap 1e-10 (scaled).
inline std::pair<double, Vec> circumradius(const VPolytope& p) {
    const auto& v = p.vertices;
    const std::size_t m = v.size();
    if (m == 1) return {0.0, v[0]};
    std::vector<double> sq(m);
    double scale2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sq[i] = norm2(v[i]);
        for (std::size_t j = i + 1; j < m; ++j) scale2 = std::max(scale2, norm2(sub(v[i], v[j])));
    }
    std::vector<double> w(m, 1.0 / static_cast<double>(m));
    auto center_of = [&](const std::vector<double>& lam) {
        Vec c = zeros(p.dim);
        for (std::size_t i = 0; i < m; ++i) axpy(c, lam[i], v[i]);
        return c;
    };
    auto dual_value = [&](const std::vector<double>& lam, const Vec& c) {
        double s = -norm2(c);
        for (std::size_t i = 0; i < m; ++i) s += lam[i] * sq[i];
        return s;
    };
    auto project_simplex = [](std::vector<double> y) {
        std::vector<double> u = y;
        std::sort(u.begin(), u.end(), std::greater<>());
        double css = 0.0, theta = 0.0;
        int rho = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            css += u[i];
            double t = (css - 1.0) / static_cast<double>(i + 1);
            if (u[i] - t > 0.0) {
                rho = static_cast<int>(i + 1);
                theta = t;
            }
        }
        (void)rho;
        for (double& x : y) x = std::max(0.0, x - theta);
        return y;
    };

    double eta = 0.25 / std::max(scale2, 1e-30);
    Vec c = center_of(w);
    double g = dual_value(w, c);
    const double gap_tol = 1e-10 * std::max(1.0, scale2);
    for (int it = 0; it < 200000; ++it) {
        double f = 0.0;
        for (std::size_t i = 0; i < m; ++i) f = std::max(f, norm2(sub(c, v[i])));
        if (f - g <= gap_tol) break;
        std::vector<double> grad(m);
        for (std::size_t i = 0; i < m; ++i) grad[i] = sq[i] - 2.0 * dot(c, v[i]);
        std::vector<double> w2(m);
        bool accepted = false;
        for (int ls = 0; ls < 40 && !accepted; ++ls) {
            for (std::size_t i = 0; i < m; ++i) w2[i] = w[i] + eta * grad[i];
            w2 = project_simplex(std::move(w2));
            Vec c2 = center_of(w2);
            double g2 = dual_value(w2, c2);
            if (g2 >= g - 1e-18) {
                if (g2 > g) eta *= 1.3;
                w = w2;
                c = std::move(c2);
                g = g2;
                accepted = true;
            } else {
                eta *= 0.5;
            }
        }
        if (!accepted) break;
    }
    double f = 0.0;
    for (std::size_t i = 0; i < m; ++i) f = std::max(f, norm2(sub(c, v[i])));
    return {std::sqrt(f), c};
}

struct RadiiReport {
    double inradius = 0.0;
    Vec incenter;
    double min_width = 0.0;
    Vec width_direction;
    double diameter = 0.0;
    double circumradius = 0.0;
    Vec circumcenter;
};

inline RadiiReport radii_report(const VPolytope& p, std::uint64_t seed = 0x5eedULL) {
    RadiiReport r;
    auto [ir, ic] = inradius(to_hrep(p));
    r.inradius = ir;
    r.incenter = ic;
    WidthResult w = min_width(body_from_polytope(p), seed);
    r.min_width = w.width;
    r.width_direction = w.direction;
    r.diameter = diameter_vertices(p);
    auto [cr, cc] = circumradius(p);
    r.circumradius = cr;
    r.circumcenter = cc;
    return r;
}

}  // namespace shadowcover
