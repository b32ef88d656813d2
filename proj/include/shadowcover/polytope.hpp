#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "shadowcover/hull.hpp"
#include "shadowcover/lp.hpp"
#include "shadowcover/vec.hpp"

namespace shadowcover {

struct VPolytope {
    int dim = 0;
    std::vector<Vec> vertices;
};

struct Halfspace {
    Vec normal;   // unit
    double offset = 0.0;  // x . normal <= offset
};

struct HPolytope {
    int dim = 0;
    std::vector<Halfspace> facets;
};

struct SurfaceAtom {
    Vec normal;  // unit
    double mass = 0.0;
};

// Discrete surface area measure: one atom per facet normal direction.
struct SurfaceMeasure {
    int dim = 0;
    std::vector<SurfaceAtom> atoms;

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.mass;
        return s;
    }
    Vec mass_centroid() const {
        Vec c = zeros(dim);
        for (const auto& a : atoms) axpy(c, a.mass, a.normal);
        return c;
    }
};

inline double support(const VPolytope& p, const Vec& u) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& v : p.vertices) best = std::max(best, dot(v, u));
    return best;
}

inline Vec support_point(const VPolytope& p, const Vec& u) {
    std::size_t best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        double s = dot(p.vertices[i], u);
        if (s > bv) {
            bv = s;
            best = i;
        }
    }
    return p.vertices[best];
}

// Canonical vertex form: extreme points only, sorted lexicographically.
inline VPolytope make_vpolytope(const std::vector<Vec>& points, int dim) {
    Hull h = convex_hull(points, dim);
    VPolytope p;
    p.dim = dim;
    p.vertices = h.vertices();
    std::sort(p.vertices.begin(), p.vertices.end());
    return p;
}

inline Hull hull_of(const VPolytope& p) { return convex_hull(p.vertices, p.dim); }

inline bool is_full_dimensional(const VPolytope& p) {
    return !hull_of(p).degenerate;
}

inline double polytope_scale(const VPolytope& p) {
    double s = 0.0;
    for (int j = 0; j < p.dim; ++j) {
        double lo = p.vertices[0][static_cast<std::size_t>(j)], hi = lo;
        for (const Vec& v : p.vertices) {
            lo = std::min(lo, v[static_cast<std::size_t>(j)]);
            hi = std::max(hi, v[static_cast<std::size_t>(j)]);
        }
        s += (hi - lo) * (hi - lo);
    }
    return std::max(1.0, std::sqrt(s));
}

namespace detail {

// (d-1)-volume of the simplex spanned by facet vertices, via the Gram matrix.
inline double simplex_facet_volume(const std::vector<Vec>& pts, const std::vector<int>& fv) {
    const std::size_t k = fv.size() - 1;
    std::vector<Vec> e;
    e.reserve(k);
    for (std::size_t i = 1; i <= k; ++i)
        e.push_back(sub(pts[static_cast<std::size_t>(fv[i])], pts[static_cast<std::size_t>(fv[0])]));
    Mat g(k, Vec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g[i][j] = dot(e[i], e[j]);
    double d = determinant(g);
    if (d <= 0.0) return 0.0;
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return std::sqrt(d) / fact;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

// Exact volume by simplicial decomposition from the vertex centroid.
inline double volume(const VPolytope& p) {
    if (static_cast<int>(p.vertices.size()) < p.dim + 1) return 0.0;
    Hull h = hull_of(p);
    if (h.degenerate) return 0.0;
    Vec c = zeros(p.dim);
    for (int id : h.vertex_ids) axpy(c, 1.0 / static_cast<double>(h.vertex_ids.size()), h.points[static_cast<std::size_t>(id)]);
    double fact = detail::factorial(p.dim);
    double vol = 0.0;
    for (const HullFacet& f : h.facets) {
        Mat m;
        for (int vid : f.verts) m.push_back(sub(h.points[static_cast<std::size_t>(vid)], c));
        vol += std::fabs(determinant(m)) / fact;
    }
    return vol;
}

inline Vec centroid(const VPolytope& p) {
    Hull h = hull_of(p);
    Vec vc = zeros(p.dim);
    if (h.degenerate || static_cast<int>(p.vertices.size()) < p.dim + 1) {
        // vertex centroid fallback for lower-dimensional bodies
        for (const Vec& v : p.vertices) axpy(vc, 1.0 / static_cast<double>(p.vertices.size()), v);
        return vc;
    }
    for (int id : h.vertex_ids) axpy(vc, 1.0 / static_cast<double>(h.vertex_ids.size()), h.points[static_cast<std::size_t>(id)]);
    double fact = detail::factorial(p.dim);
    Vec acc = zeros(p.dim);
    double vol = 0.0;
    for (const HullFacet& f : h.facets) {
        Mat m;
        Vec sc = vc;  // simplex centroid accumulator: (c + sum verts)/(d+1)
        for (int vid : f.verts) {
            m.push_back(sub(h.points[static_cast<std::size_t>(vid)], vc));
            sc = add(sc, h.points[static_cast<std::size_t>(vid)]);
        }
        double sv = std::fabs(determinant(m)) / fact;
        vol += sv;
        axpy(acc, sv / static_cast<double>(p.dim + 1), sc);
    }
    if (vol <= 0.0) return vc;
    return scaled(acc, 1.0 / vol);
}

// One atom per distinct facet normal; simplicial facets with matching normals
// are merged (angular tolerance 1e-9).
inline SurfaceMeasure surface_measure(const VPolytope& p) {
    Hull h = hull_of(p);
    if (h.degenerate) throw degenerate_error("surface measure needs a full-dimensional body");
    SurfaceMeasure s;
    s.dim = p.dim;
    for (const HullFacet& f : h.facets) {
        double area = detail::simplex_facet_volume(h.points, f.verts);
        if (area <= 0.0) continue;
        bool merged = false;
        for (auto& a : s.atoms) {
            if (dot(a.normal, f.normal) > 1.0 - 1e-9) {
                a.mass += area;
                merged = true;
                break;
            }
        }
        if (!merged) s.atoms.push_back({f.normal, area});
    }
    std::sort(s.atoms.begin(), s.atoms.end(),
              [](const SurfaceAtom& a, const SurfaceAtom& b) { return a.normal < b.normal; });
    return s;
}

inline double surface_area(const VPolytope& p) { return surface_measure(p).total_mass(); }

inline HPolytope to_hrep(const VPolytope& p) {
    Hull h = hull_of(p);
    if (h.degenerate) throw degenerate_error("H-representation needs a full-dimensional body");
    HPolytope hp;
    hp.dim = p.dim;
    double tol_off = 1e-9 * h.scale;
    for (const HullFacet& f : h.facets) {
        bool dup = false;
        for (const auto& g : hp.facets) {
            if (dot(g.normal, f.normal) > 1.0 - 1e-9 && std::fabs(g.offset - f.offset) < tol_off) {
                dup = true;
                break;
            }
        }
        if (!dup) hp.facets.push_back({f.normal, f.offset});
    }
    std::sort(hp.facets.begin(), hp.facets.end(), [](const Halfspace& a, const Halfspace& b) {
        return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
    });
    return hp;
}

// Chebyshev center: max r s.t. normal_i . c + r <= offset_i.
inline std::pair<double, Vec> chebyshev_center(const HPolytope& h) {
    const int n = h.dim;
    Mat A;
    Vec b, c = zeros(n + 1);
    c[static_cast<std::size_t>(n)] = 1.0;
    for (const auto& f : h.facets) {
        Vec row = f.normal;
        row.push_back(1.0);
        A.push_back(std::move(row));
        b.push_back(f.offset);
    }
    LpResult r = lp_max_ineq(c, A, b);
    if (r.status == LpStatus::Unbounded) throw unbounded_error("halfspace system has unbounded inscribed radius");
    if (r.status != LpStatus::Optimal) throw infeasible_error("Chebyshev LP failed");
    Vec center(r.x.begin(), r.x.begin() + n);
    return {r.value, center};
}

// Vertex enumeration through polar duality around an interior point.
inline VPolytope to_vrep(const HPolytope& h) {
    auto [r, center] = chebyshev_center(h);
    if (r < 1e-12) throw infeasible_error("halfspace system has empty interior");
    std::vector<Vec> dual_pts;
    dual_pts.reserve(h.facets.size());
    for (const auto& f : h.facets) {
        double off = f.offset - dot(f.normal, center);
        if (off < 1e-13) throw infeasible_error("interior point is not strictly interior");
        dual_pts.push_back(scaled(f.normal, 1.0 / off));
    }
    Hull dual = convex_hull(dual_pts, h.dim);
    if (dual.degenerate) throw unbounded_error("halfspace system is unbounded");
    std::vector<Vec> verts;
    for (const HullFacet& f : dual.facets) {
        if (f.offset < 1e-13) throw unbounded_error("halfspace system is unbounded");
        verts.push_back(add(scaled(f.normal, 1.0 / f.offset), center));
    }
    return make_vpolytope(verts, h.dim);
}

inline VPolytope minkowski_sum_polytopes(const VPolytope& p, const VPolytope& q) {
    if (p.dim != q.dim) throw dimension_error("Minkowski sum needs equal dimensions");
    std::vector<Vec> sums;
    sums.reserve(p.vertices.size() * q.vertices.size());
    for (const Vec& a : p.vertices)
        for (const Vec& b : q.vertices) sums.push_back(add(a, b));
    return make_vpolytope(sums, p.dim);
}

inline VPolytope scale_polytope(const VPolytope& p, double a) {
    if (a < 0.0) throw negative_scale_error("scale coefficient must be nonnegative");
    VPolytope r = p;
    for (Vec& v : r.vertices) v = scaled(v, a);
    if (a == 0.0) r.vertices = {zeros(p.dim)};
    std::sort(r.vertices.begin(), r.vertices.end());
    return r;
}

inline VPolytope reflect_polytope(const VPolytope& p) {
    VPolytope r = p;
    for (Vec& v : r.vertices) v = scaled(v, -1.0);
    std::sort(r.vertices.begin(), r.vertices.end());
    return r;
}

inline VPolytope translate_polytope(const VPolytope& p, const Vec& t) {
    VPolytope r = p;
    for (Vec& v : r.vertices) v = add(v, t);
    std::sort(r.vertices.begin(), r.vertices.end());
    return r;
}

inline double diameter_vertices(const VPolytope& p) {
    double best = 0.0;
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < p.vertices.size(); ++j)
            best = std::max(best, dist(p.vertices[i], p.vertices[j]));
    return best;
}

}  // namespace shadowcover
