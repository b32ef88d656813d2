#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <unordered_map>
#include <vector>

#include "shadowcover/vec.hpp"

namespace shadowcover {

struct HullFacet {
    std::vector<int> verts;  // dim point indices (simplicial facet)
    Vec normal;              // unit outward
    double offset = 0.0;     // normal . x = offset on the facet plane
};

// Convex hull of a finite point set. Facets are kept simplicial; coplanar
// neighbours are merged only downstream (surface measure, H-rep). Inputs whose
// affine hull has lower dimension are not an error: the hull is computed
// inside the span and reported with the span frame (degenerate flag).
struct Hull {
    int dim = 0;
    int aff_dim = 0;
    bool degenerate = false;
    std::vector<Vec> points;      // deduplicated input
    std::vector<int> vertex_ids;  // indices of extreme points
    std::vector<HullFacet> facets;  // present when aff_dim == dim >= 2 (or 1)
    Vec span_origin;                // degenerate case: affine span data
    std::vector<Vec> span_basis;    // orthonormal basis of span directions
    std::shared_ptr<Hull> span_hull;  // hull in span coordinates
    double scale = 1.0;

    std::vector<Vec> vertices() const {
        std::vector<Vec> vs;
        vs.reserve(vertex_ids.size());
        for (int id : vertex_ids) vs.push_back(points[static_cast<std::size_t>(id)]);
        return vs;
    }
};

namespace detail {

struct RidgeKey {
    std::vector<int> v;
    bool operator==(const RidgeKey& o) const { return v == o.v; }
};

struct RidgeKeyHash {
    std::size_t operator()(const RidgeKey& k) const {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (int x : k.v) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
            h *= 0x100000001B3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

class HullBuilder {
public:
    HullBuilder(const std::vector<Vec>& pts, int dim, double eps)
        : pts_(pts), dim_(dim), eps_(eps) {}

    // simplex: dim+1 affinely independent point indices
    bool build(const std::vector<int>& simplex, Hull& out) {
        interior_ = zeros(dim_);
        for (int id : simplex) axpy(interior_, 1.0 / (dim_ + 1.0), pts_[static_cast<std::size_t>(id)]);

        for (int omit = 0; omit <= dim_; ++omit) {
            std::vector<int> fv;
            for (int j = 0; j <= dim_; ++j)
                if (j != omit) fv.push_back(simplex[static_cast<std::size_t>(j)]);
            if (!add_facet(std::move(fv))) return false;
        }

        // quickhull outside sets
        std::vector<char> in_simplex(pts_.size(), 0);
        for (int id : simplex) in_simplex[static_cast<std::size_t>(id)] = 1;
        for (std::size_t p = 0; p < pts_.size(); ++p) {
            if (in_simplex[p]) continue;
            assign_point(static_cast<int>(p));
        }

        for (;;) {
            int fbest = -1, pbest = -1;
            double vbest = eps_;
            for (std::size_t f = 0; f < facets_.size(); ++f) {
                if (!alive_[f]) continue;
                for (int p : outside_[f]) {
                    double v = viol(static_cast<int>(f), p);
                    if (v > vbest) {
                        vbest = v;
                        fbest = static_cast<int>(f);
                        pbest = p;
                    }
                }
            }
            if (fbest < 0) break;
            if (!insert_point(pbest)) return false;
        }

        if (!validate()) return false;

        out.facets.clear();
        std::vector<char> is_vertex(pts_.size(), 0);
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            if (!alive_[f]) continue;
            out.facets.push_back(facets_[f]);
            for (int v : facets_[f].verts) is_vertex[static_cast<std::size_t>(v)] = 1;
        }
        out.vertex_ids.clear();
        for (std::size_t p = 0; p < pts_.size(); ++p)
            if (is_vertex[p]) out.vertex_ids.push_back(static_cast<int>(p));
        return true;
    }

private:
    double viol(int f, int p) const {
        return dot(facets_[static_cast<std::size_t>(f)].normal, pts_[static_cast<std::size_t>(p)]) - facets_[static_cast<std::size_t>(f)].offset;
    }

    bool facet_geometry(const std::vector<int>& fv, Vec& normal, double& offset) const {
        std::vector<Vec> edges;
        const Vec& w0 = pts_[static_cast<std::size_t>(fv[0])];
        for (std::size_t i = 1; i < fv.size(); ++i) edges.push_back(sub(pts_[static_cast<std::size_t>(fv[i])], w0));
        std::vector<Vec> basis;
        gram_schmidt_extend(basis, edges, eps_ * 1e-3);
        if (static_cast<int>(basis.size()) != dim_ - 1) return false;
        try {
            normal = orthogonal_complement_vector(basis, dim_);
        } catch (const degenerate_error&) {
            return false;
        }
        offset = dot(normal, w0);
        double side = dot(normal, interior_) - offset;
        if (std::fabs(side) < eps_ * 1e-4) return false;  // interior on facet plane
        if (side > 0.0) {
            normal = scaled(normal, -1.0);
            offset = -offset;
        }
        return true;
    }

    bool add_facet(std::vector<int> fv) {
        HullFacet f;
        if (!facet_geometry(fv, f.normal, f.offset)) return false;
        f.verts = std::move(fv);
        int id = static_cast<int>(facets_.size());
        facets_.push_back(std::move(f));
        alive_.push_back(1);
        outside_.emplace_back();
        for_each_ridge(id, [&](RidgeKey key) {
            auto it = ridges_.find(key);
            if (it == ridges_.end())
                ridges_.emplace(std::move(key), std::make_pair(id, -1));
            else
                it->second.second = id;
        });
        return true;
    }

    template <class F>
    void for_each_ridge(int fid, F&& fn) const {
        const auto& fv = facets_[static_cast<std::size_t>(fid)].verts;
        for (std::size_t omit = 0; omit < fv.size(); ++omit) {
            RidgeKey key;
            for (std::size_t j = 0; j < fv.size(); ++j)
                if (j != omit) key.v.push_back(fv[j]);
            std::sort(key.v.begin(), key.v.end());
            fn(std::move(key));
        }
    }

    void assign_point(int p) {
        int fbest = -1;
        double vbest = eps_;
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            if (!alive_[f]) continue;
            double v = viol(static_cast<int>(f), p);
            if (v > vbest) {
                vbest = v;
                fbest = static_cast<int>(f);
            }
        }
        if (fbest >= 0) outside_[static_cast<std::size_t>(fbest)].push_back(p);
    }

    bool insert_point(int p) {
        const Vec& x = pts_[static_cast<std::size_t>(p)];
        std::vector<int> visible;
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            if (!alive_[f]) continue;
            if (dot(facets_[f].normal, x) - facets_[f].offset > eps_) visible.push_back(static_cast<int>(f));
        }
        if (visible.empty()) return true;  // boundary point at tolerance

        std::vector<char> is_visible(facets_.size(), 0);
        for (int f : visible) is_visible[static_cast<std::size_t>(f)] = 1;

        // horizon ridges: exactly one incident facet visible
        std::vector<RidgeKey> horizon;
        for (int f : visible) {
            for_each_ridge(f, [&](RidgeKey key) {
                auto it = ridges_.find(key);
                if (it == ridges_.end()) return;
                int a = it->second.first, b = it->second.second;
                if (b < 0) return;  // dangling: should not happen on a closed hull
                bool va = is_visible[static_cast<std::size_t>(a)];
                bool vb = is_visible[static_cast<std::size_t>(b)];
                if (va != vb) horizon.push_back(std::move(key));
            });
        }
        std::sort(horizon.begin(), horizon.end(),
                  [](const RidgeKey& a, const RidgeKey& b) { return a.v < b.v; });
        horizon.erase(std::unique(horizon.begin(), horizon.end()), horizon.end());
        if (horizon.empty()) return false;

        // gather points to reassign, retire visible facets
        std::vector<int> orphans;
        for (int f : visible) {
            auto& out = outside_[static_cast<std::size_t>(f)];
            for (int q : out)
                if (q != p) orphans.push_back(q);
            out.clear();
            remove_facet(f);
        }

        for (const RidgeKey& r : horizon) {
            std::vector<int> fv = r.v;
            fv.push_back(p);
            if (!add_facet(std::move(fv))) return false;
        }

        // full rescan: orphans may be beyond surviving facets too
        for (int q : orphans) assign_point(q);
        return true;
    }

    void remove_facet(int fid) {
        alive_[static_cast<std::size_t>(fid)] = 0;
        for_each_ridge(fid, [&](RidgeKey key) {
            auto it = ridges_.find(key);
            if (it == ridges_.end()) return;
            if (it->second.first == fid) it->second.first = it->second.second;
            it->second.second = -1;
            if (it->second.first < 0) ridges_.erase(it);
        });
    }

    bool validate() const {
        // watertight: every live ridge borders exactly two live facets
        std::unordered_map<RidgeKey, int, RidgeKeyHash> count;
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            if (!alive_[f]) continue;
            for_each_ridge(static_cast<int>(f), [&](RidgeKey key) { count[std::move(key)]++; });
        }
        for (const auto& [k, c] : count)
            if (c != 2) return false;
        // containment of every input point
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            if (!alive_[f]) continue;
            for (const Vec& x : pts_)
                if (dot(facets_[f].normal, x) - facets_[f].offset > 50.0 * eps_) return false;
        }
        return true;
    }

    const std::vector<Vec>& pts_;
    int dim_;
    double eps_;
    Vec interior_;
    std::vector<HullFacet> facets_;
    std::vector<char> alive_;
    std::vector<std::vector<int>> outside_;
    std::unordered_map<RidgeKey, std::pair<int, int>, RidgeKeyHash> ridges_;
};

inline std::vector<Vec> dedup_points(const std::vector<Vec>& points, double tol) {
    std::vector<Vec> uniq;
    for (const Vec& p : points) {
        bool seen = false;
        for (const Vec& q : uniq) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                double d = p[i] - q[i];
                d2 += d * d;
            }
            if (d2 <= tol * tol) {
                seen = true;
                break;
            }
        }
        if (!seen) uniq.push_back(p);
    }
    return uniq;
}

}  // namespace detail

inline Hull convex_hull(const std::vector<Vec>& input, int dim);

namespace detail {

inline Hull hull_full_dim(const std::vector<Vec>& pts, int dim, double scale,
                          const std::vector<int>& simplex) {
    Hull h;
    h.dim = dim;
    h.aff_dim = dim;
    h.points = pts;
    h.scale = scale;

    if (dim == 1) {
        int lo = 0, hi = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i][0] < pts[static_cast<std::size_t>(lo)][0]) lo = static_cast<int>(i);
            if (pts[i][0] > pts[static_cast<std::size_t>(hi)][0]) hi = static_cast<int>(i);
        }
        h.vertex_ids = {lo, hi};
        if (lo == hi) h.vertex_ids = {lo};
        h.facets.push_back({{hi}, {1.0}, pts[static_cast<std::size_t>(hi)][0]});
        h.facets.push_back({{lo}, {-1.0}, -pts[static_cast<std::size_t>(lo)][0]});
        return h;
    }

    double eps = 1e-9 * scale;
    for (int attempt = 0; attempt < 4; ++attempt) {
        HullBuilder b(pts, dim, eps);
        Hull out = h;
        if (b.build(simplex, out)) return out;
        eps *= 100.0;
    }
    throw degenerate_error("convex hull construction failed to stabilize");
}

}  // namespace detail

inline Hull convex_hull(const std::vector<Vec>& input, int dim) {
    if (dim > 6) throw dimension_error("ambient dimension above 6 is unsupported");
    if (dim < 1) throw dimension_error("ambient dimension must be at least 1");
    if (input.empty()) throw degenerate_error("empty point set");
    for (const Vec& p : input)
        if (static_cast<int>(p.size()) != dim) throw dimension_error("point dimension mismatch");

    double scale = 0.0;
    for (int j = 0; j < dim; ++j) {
        double lo = input[0][static_cast<std::size_t>(j)], hi = lo;
        for (const Vec& p : input) {
            lo = std::min(lo, p[static_cast<std::size_t>(j)]);
            hi = std::max(hi, p[static_cast<std::size_t>(j)]);
        }
        scale += (hi - lo) * (hi - lo);
    }
    scale = std::max(1.0, std::sqrt(scale));

    std::vector<Vec> pts = detail::dedup_points(input, 1e-9 * scale);

    // greedy affinely independent subset
    std::vector<int> anchor = {0};
    std::vector<Vec> basis;
    while (static_cast<int>(anchor.size()) <= dim) {
        int best = -1;
        double best_res = 1e-7 * scale;
        Vec best_dir;
        for (std::size_t p = 0; p < pts.size(); ++p) {
            Vec r = sub(pts[p], pts[0]);
            for (const Vec& b : basis) axpy(r, -dot(r, b), b);
            for (const Vec& b : basis) axpy(r, -dot(r, b), b);
            double nr = norm(r);
            if (nr > best_res) {
                best_res = nr;
                best = static_cast<int>(p);
                best_dir = scaled(r, 1.0 / nr);
            }
        }
        if (best < 0) break;
        anchor.push_back(best);
        basis.push_back(best_dir);
    }
    int aff_dim = static_cast<int>(basis.size());

    if (aff_dim == dim) return detail::hull_full_dim(pts, dim, scale, anchor);

    // degenerate: hull inside the affine span
    Hull h;
    h.dim = dim;
    h.aff_dim = aff_dim;
    h.degenerate = true;
    h.points = pts;
    h.scale = scale;
    h.span_origin = pts[0];
    h.span_basis = basis;
    if (aff_dim == 0) {
        h.vertex_ids = {0};
        return h;
    }
    std::vector<Vec> coords;
    coords.reserve(pts.size());
    for (const Vec& p : pts) {
        Vec y(static_cast<std::size_t>(aff_dim));
        Vec d = sub(p, h.span_origin);
        for (int j = 0; j < aff_dim; ++j) y[static_cast<std::size_t>(j)] = dot(d, basis[static_cast<std::size_t>(j)]);
        coords.push_back(std::move(y));
    }
    h.span_hull = std::make_shared<Hull>(convex_hull(coords, aff_dim));
    // span hull's points order matches pts order only through dedup; map ids
    // back by re-locating coordinates (dedup in span may merge nothing new
    // since pts were already deduped at full precision).
    h.vertex_ids.clear();
    for (int vid : h.span_hull->vertex_ids) {
        const Vec& y = h.span_hull->points[static_cast<std::size_t>(vid)];
        int match = -1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < coords.size(); ++p) {
            double d = dist(coords[p], y);
            if (d < best) {
                best = d;
                match = static_cast<int>(p);
            }
        }
        h.vertex_ids.push_back(match);
    }
    std::sort(h.vertex_ids.begin(), h.vertex_ids.end());
    h.vertex_ids.erase(std::unique(h.vertex_ids.begin(), h.vertex_ids.end()), h.vertex_ids.end());
    return h;
}

}  // namespace shadowcover
