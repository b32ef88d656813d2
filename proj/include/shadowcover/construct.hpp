#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "shadowcover/body.hpp"
#include "shadowcover/distance.hpp"
#include "shadowcover/frame.hpp"
#include "shadowcover/mixed.hpp"
#include "shadowcover/polytope.hpp"
#include "shadowcover/radii.hpp"

namespace shadowcover {

// Regular n-simplex with the given edge length, centered at its centroid.
// Built from the standard R^{n+1} embedding rotated into R^n.
inline VPolytope regular_simplex(int n, double edge) {
    if (n < 2 || n > 6) throw dimension_error("regular simplex dimension must be in [2,6]");
    if (edge <= 0.0) throw dimension_error("edge length must be positive");
    std::vector<Vec> emb;
    for (int i = 0; i <= n; ++i) emb.push_back(scaled(unit(n + 1, i), edge / std::sqrt(2.0)));
    Vec mean = zeros(n + 1);
    for (const Vec& v : emb) axpy(mean, 1.0 / (n + 1.0), v);
    std::vector<Vec> diffs;
    for (int i = 1; i <= n; ++i) diffs.push_back(sub(emb[static_cast<std::size_t>(i)], emb[0]));
    std::vector<Vec> basis;
    gram_schmidt_extend(basis, diffs, 1e-12);
    std::vector<Vec> verts;
    for (const Vec& v : emb) {
        Vec d = sub(v, mean);
        Vec y(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] = dot(d, basis[static_cast<std::size_t>(j)]);
        verts.push_back(std::move(y));
    }
    return make_vpolytope(verts, n);
}

inline VPolytope unit_cube_polytope(int n) {
    std::vector<Vec> verts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? 1.0 : 0.0;
        verts.push_back(std::move(v));
    }
    return make_vpolytope(verts, n);
}

// K^eps = eps * Delta + ((1-eps)/(n sqrt 2)) B_n
inline BodyExpr k_epsilon_body(int n, double eps) {
    if (eps < 0.0 || eps > 1.0) throw dimension_error("epsilon must lie in [0,1]");
    double radius = (1.0 - eps) / (n * std::sqrt(2.0));
    BodyExpr simplex = body_from_polytope(regular_simplex(n, 1.0));
    return minkowski({scale_body(eps, std::move(simplex)), ball(zeros(n), radius)});
}

// Locates the volume crossover eps* with V(K^{eps*}) = V(Delta) by bisection
// on g(eps) = V(K^eps) - V(Delta). Exact Steiner evaluation for n <= 3, Monte
// Carlo with error bars above.
inline double critical_epsilon(int n, double tol, long long mc_samples = 2000000,
                               std::uint64_t seed = 0xCE11) {
    double vdelta = volume(regular_simplex(n, 1.0));
    auto g = [&](double eps) {
        VolumeEstimate v = body_volume(k_epsilon_body(n, eps), mc_samples, seed);
        return v.value - vdelta;
    };
    // locate a sign change on a coarse grid; the crossing must be unique there
    const int grid = 20;
    double lo = 0.0, hi = -1.0;
    double prev = g(0.0);
    if (prev >= 0.0) throw bracket_error("g(0) is not negative");
    int crossings = 0;
    double prev_eps = 0.0;
    for (int i = 1; i <= grid; ++i) {
        double eps = 0.95 * i / grid;
        double cur = g(eps);
        if (prev <= 0.0 && cur > 0.0) {
            ++crossings;
            if (hi < 0.0) {
                lo = prev_eps;
                hi = eps;
            }
        }
        if (prev > 0.0 && cur <= 0.0) ++crossings;  // would contradict monotone crossing
        prev = cur;
        prev_eps = eps;
    }
    if (hi < 0.0) throw bracket_error("no sign change of V(K^eps) - V(Delta) in (0,0.95)");
    if (crossings != 1) throw bracket_error("volume gap is not monotone-crossing on the bracket");
    double gmid = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        gmid = g(mid);
        if (std::fabs(gmid) <= tol) return mid;
        if (gmid > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// difference body (1/2)K + (1/2)(-K)
inline VPolytope difference_body(const VPolytope& k) {
    return minkowski_sum_polytopes(scale_polytope(k, 0.5), scale_polytope(reflect_polytope(k), 0.5));
}

struct CounterexamplePair {
    int n = 0;
    int k = 0;
    BodyExpr K;
    BodyExpr L;
    double epsilon = 0.0;
    double eps_cube = 0.0;
    std::string name;
    std::optional<BodyExpr> khat;  // the (k+1)-dimensional seed pair, when used
    std::optional<BodyExpr> lhat;
};

// The section-3 pair: K = K^eps against L = Delta_n, covering at k = n-1.
inline CounterexamplePair counterexample_pair(int n, double eps) {
    CounterexamplePair p;
    p.n = n;
    p.k = n - 1;
    p.epsilon = eps;
    p.K = k_epsilon_body(n, eps);
    p.L = body_from_polytope(regular_simplex(n, 1.0));
    p.name = "simplex-counterexample";
    return p;
}

namespace detail {

inline IntrinsicVolumes cube_intrinsics(int d, double eps) {
    IntrinsicVolumes iv;
    iv.dim = d;
    iv.values = zeros(d + 1);
    for (int j = 0; j <= d; ++j) {
        double binom = 1.0;
        for (int t = 0; t < j; ++t) binom = binom * (d - t) / (t + 1);
        iv.values[static_cast<std::size_t>(j)] = binom * std::pow(eps, j);
    }
    return iv;
}

inline IntrinsicVolumes khat_intrinsics(int dim, double eps_pair, long long mc_samples,
                                        std::uint64_t seed) {
    BodyExpr khat = k_epsilon_body(dim, eps_pair);
    if (dim <= 3) {
        auto pb = as_polytope_plus_ball(khat);
        IntrinsicVolumes ivp = intrinsic_volumes_exact(pb->poly);
        // outer parallel body: V_j(P + rB) from the Steiner polynomial of P
        // V(P + (r+t)B) expanded in t gives kappa_{n-j} V_j(P + rB)
        IntrinsicVolumes iv;
        iv.dim = dim;
        iv.values = zeros(dim + 1);
        for (int j = 0; j <= dim; ++j) {
            // coefficient of t^{n-j} in sum_i kappa_{n-i} V_i (r+t)^{n-i}
            double c = 0.0;
            for (int i = 0; i <= j; ++i) {
                double binom = 1.0;
                for (int t = 0; t < j - i; ++t) binom = binom * (dim - i - t) / (t + 1);
                c += kappa(dim - i) * ivp.values[static_cast<std::size_t>(i)] * binom *
                     std::pow(pb->radius, j - i);
            }
            iv.values[static_cast<std::size_t>(j)] = c / kappa(dim - j);
        }
        return iv;
    }
    std::vector<double> radii = {0.05, 0.15, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3};
    return intrinsic_from_steiner(steiner_fit(khat, radii, mc_samples, seed));
}

}  // namespace detail

// Theorem-style pair in R^n whose k-shadows are covered while the intrinsic
// volumes V_m flip for every m > k: K = embed(Khat) + eps C, L likewise, with
// C the unit cube of the orthogonal complement. eps_cube <= 0 requests the
// automated halving search.
inline CounterexamplePair general_counterexample(int n, int k, double eps_pair,
                                                 double eps_cube = -1.0,
                                                 long long mc_samples = 2000000,
                                                 std::uint64_t seed = 0x6E4C) {
    if (n < 3 || n > 6 || k < 1 || k >= n) throw dimension_error("need 1 <= k < n <= 6");
    CounterexamplePair p;
    p.n = n;
    p.k = k;
    p.epsilon = eps_pair;
    if (k == 1) {
        VPolytope simplex = regular_simplex(n, 1.0);
        p.K = body_from_polytope(difference_body(simplex));
        p.L = body_from_polytope(simplex);
        // widths agree in every direction while V_m(K) > V_m(L) for m >= 2;
        // the covering direction at k=1 is L-shadows covered by K-shadows,
        // so the pair is returned as (bigger, smaller) = (difference body, simplex)
        p.name = "difference-body-pair";
        return p;
    }

    const int j = k + 1;
    BodyExpr khat = k_epsilon_body(j, eps_pair);
    BodyExpr lhat = body_from_polytope(regular_simplex(j, 1.0));
    p.khat = khat;
    p.lhat = lhat;
    p.name = "embedded-counterexample";
    if (n == j) {
        p.K = khat;
        p.L = lhat;
        return p;
    }

    const int d = n - j;  // cube dimension
    if (eps_cube <= 0.0) {
        IntrinsicVolumes ivk = detail::khat_intrinsics(j, eps_pair, mc_samples, seed);
        IntrinsicVolumes ivl = intrinsic_volumes_exact(regular_simplex(j, 1.0));
        if (j > 3) {
            std::vector<double> radii = {0.05, 0.15, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3};
            ivl = intrinsic_from_steiner(
                steiner_fit(lhat, radii, mc_samples, splitmix64(seed + 7)));
        }
        double eps = 0.25;
        bool found = false;
        for (int halving = 0; halving < 40; ++halving) {
            IntrinsicVolumes c = detail::cube_intrinsics(d, eps);
            IntrinsicVolumes vk = cartesian_intrinsic(ivk, c);
            IntrinsicVolumes vl = cartesian_intrinsic(ivl, c);
            bool ok = true;
            for (int m = k + 1; m <= n; ++m)
                if (vk.values[static_cast<std::size_t>(m)] - vl.values[static_cast<std::size_t>(m)] <= 0.0) ok = false;
            if (ok) {
                found = true;
                break;
            }
            eps *= 0.5;
        }
        if (!found) throw bracket_error("no cube scale makes every V_m gap positive");
        eps_cube = eps;
    }
    p.eps_cube = eps_cube;

    Mat e2(static_cast<std::size_t>(n), zeros(d));
    for (int i = 0; i < d; ++i) e2[static_cast<std::size_t>(j + i)][static_cast<std::size_t>(i)] = 1.0;
    BodyExpr cube = affine_body(e2, zeros(n),
                                body_from_polytope(scale_polytope(unit_cube_polytope(d), eps_cube)));
    p.K = minkowski({embed_body(khat, n), cube});
    p.L = minkowski({embed_body(lhat, n), BodyExpr(cube)});
    return p;
}

// Orthogonal cylinder L_v + D_L vbar along the diameter direction v of L;
// contains L by construction.
inline BodyExpr bounding_cylinder(const VPolytope& l) {
    const auto& vs = l.vertices;
    double best = -1.0;
    Vec dir;
    double t0 = 0.0, t1 = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j2 = i + 1; j2 < vs.size(); ++j2) {
            double d = dist(vs[i], vs[j2]);
            if (d > best + 1e-15) {
                best = d;
                dir = normalized(sub(vs[j2], vs[i]));
            }
        }
    if (best <= 0.0) throw degenerate_error("bounding cylinder needs at least two distinct points");
    Frame axis = frame_from_basis(l.dim, {dir});
    Frame cross = complement(axis);
    t0 = std::numeric_limits<double>::infinity();
    t1 = -t0;
    std::vector<Vec> shadow;
    for (const Vec& v : vs) {
        double t = dot(v, dir);
        t0 = std::min(t0, t);
        t1 = std::max(t1, t);
        shadow.push_back(project_point(cross, v));
    }
    VPolytope lv = make_vpolytope(shadow, l.dim - 1);
    VPolytope seg{1, {{t0}, {t1}}};
    BodyExpr cyl = direct_sum({{body_from_polytope(lv), cross}, {body_from_polytope(seg), axis}});
    for (const Vec& v : vs)
        if (!contains_point(cyl, v, 1e-7 * polytope_scale(l)))
            throw degenerate_error("bounding cylinder misses a vertex");
    return cyl;
}

// Constant-width Reuleaux triangle, polygonal arc approximation.
inline BodyExpr reuleaux_triangle(double width, int arc_points = 128) {
    if (width <= 0.0) throw dimension_error("width must be positive");
    const double pi = 3.14159265358979323846;
    std::vector<Vec> corners;
    for (int i = 0; i < 3; ++i) {
        double a = pi / 2.0 + 2.0 * pi * i / 3.0;
        corners.push_back({std::cos(a) * width / std::sqrt(3.0), std::sin(a) * width / std::sqrt(3.0)});
    }
    std::vector<Vec> pts;
    for (int i = 0; i < 3; ++i) {
        const Vec& center = corners[static_cast<std::size_t>(i)];
        const Vec& from = corners[static_cast<std::size_t>((i + 1) % 3)];
        const Vec& to = corners[static_cast<std::size_t>((i + 2) % 3)];
        double a0 = std::atan2(from[1] - center[1], from[0] - center[0]);
        double a1 = std::atan2(to[1] - center[1], to[0] - center[0]);
        while (a1 < a0) a1 += 2.0 * pi;
        if (a1 - a0 > pi) std::swap(a0, a1), a1 += 2.0 * pi;
        for (int t = 0; t <= arc_points; ++t) {
            double a = a0 + (a1 - a0) * t / arc_points;
            pts.push_back({center[0] + width * std::cos(a), center[1] + width * std::sin(a)});
        }
    }
    return body_from_polytope(make_vpolytope(pts, 2));
}

// Inscribed H-approximation of the unit ball in R^3: the hull of a Fibonacci
// point set on the sphere, converted to halfspaces. Facet count ~= 2m - 4.
inline HPolytope ball_happrox_3d(int min_facets = 500) {
    const double pi = 3.14159265358979323846;
    int m = std::max(16, min_facets / 2 + 8);
    std::vector<Vec> pts;
    double golden = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / m;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double a = golden * i;
        pts.push_back({r * std::cos(a), r * std::sin(a), z});
    }
    return to_hrep(make_vpolytope(pts, 3));
}

}  // namespace shadowcover
