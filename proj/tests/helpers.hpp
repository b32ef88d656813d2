#pragma once

#include "shadowcover/polytope.hpp"
#include "shadowcover/rng.hpp"

namespace sctest {

using namespace shadowcover;

// hull of `count` standard-Gaussian points, retried until full-dimensional
inline VPolytope random_polytope(int dim, int count, Rng& rng) {
    for (;;) {
        std::vector<Vec> pts;
        for (int i = 0; i < count; ++i) pts.push_back(rng.gaussian_vec(dim));
        VPolytope p = make_vpolytope(pts, dim);
        if (static_cast<int>(p.vertices.size()) >= dim + 1 && volume(p) > 1e-6) return p;
    }
}

// regular simplex with unit edge, vertices mutually at distance `edge`
inline VPolytope test_regular_simplex(int n, double edge) {
    // standard embedding in R^{n+1}, rotated down
    std::vector<Vec> emb;
    for (int i = 0; i <= n; ++i) emb.push_back(scaled(unit(n + 1, i), edge / std::sqrt(2.0)));
    Vec mean = zeros(n + 1);
    for (const Vec& v : emb) axpy(mean, 1.0 / (n + 1.0), v);
    std::vector<Vec> basis;
    std::vector<Vec> diffs;
    for (int i = 1; i <= n; ++i) diffs.push_back(sub(emb[static_cast<std::size_t>(i)], emb[0]));
    gram_schmidt_extend(basis, diffs, 1e-12);
    std::vector<Vec> verts;
    for (const Vec& v : emb) {
        Vec d = sub(v, mean);
        Vec y(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] = dot(d, basis[static_cast<std::size_t>(j)]);
        verts.push_back(y);
    }
    return make_vpolytope(verts, n);
}

inline VPolytope unit_cube(int n) {
    std::vector<Vec> verts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? 1.0 : 0.0;
        verts.push_back(v);
    }
    return make_vpolytope(verts, n);
}

}  // namespace sctest
