#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "shadowcover/frame.hpp"
#include "shadowcover/polytope.hpp"
#include "shadowcover/vec.hpp"

namespace shadowcover {

struct BodyExpr;
using BodyPtr = std::shared_ptr<const BodyExpr>;

struct PolytopeNode {
    VPolytope poly;
};
struct BallNode {
    Vec center;
    double radius = 0.0;
};
struct ScaleNode {
    double coef = 1.0;
    BodyPtr body;
};
struct ReflectNode {
    BodyPtr body;
};
struct MinkowskiNode {
    std::vector<BodyPtr> terms;
};
struct DirectSumPart {
    BodyPtr body;    // lives in its own k coordinates
    Frame frame;     // embedding frame, frame.k == body dim
};
struct DirectSumNode {
    std::vector<DirectSumPart> parts;
};
struct AffineNode {
    Mat matrix;  // out_dim x in_dim
    Vec shift;   // out_dim
    BodyPtr body;
};

// Closed algebra of convex bodies with composable support functions.
struct BodyExpr {
    std::variant<PolytopeNode, BallNode, ScaleNode, ReflectNode, MinkowskiNode, DirectSumNode,
                 AffineNode>
        node;
    int dim = 0;
};

inline BodyExpr body_from_polytope(VPolytope p) {
    BodyExpr b;
    b.dim = p.dim;
    b.node = PolytopeNode{std::move(p)};
    return b;
}

inline BodyExpr ball(Vec center, double radius) {
    if (radius < 0.0) throw negative_scale_error("ball radius must be nonnegative");
    BodyExpr b;
    b.dim = static_cast<int>(center.size());
    b.node = BallNode{std::move(center), radius};
    return b;
}

inline BodyExpr scale_body(double a, BodyExpr inner) {
    if (a < 0.0) throw negative_scale_error("scale coefficient must be nonnegative");
    BodyExpr b;
    b.dim = inner.dim;
    b.node = ScaleNode{a, std::make_shared<const BodyExpr>(std::move(inner))};
    return b;
}

inline BodyExpr reflect_body(BodyExpr inner) {
    BodyExpr b;
    b.dim = inner.dim;
    b.node = ReflectNode{std::make_shared<const BodyExpr>(std::move(inner))};
    return b;
}

inline BodyExpr minkowski(std::vector<BodyExpr> terms) {
    if (terms.empty()) throw dimension_error("Minkowski sum needs at least one term");
    BodyExpr b;
    b.dim = terms[0].dim;
    MinkowskiNode node;
    for (BodyExpr& t : terms) {
        if (t.dim != b.dim) throw dimension_error("Minkowski terms have mismatched dimensions");
        node.terms.push_back(std::make_shared<const BodyExpr>(std::move(t)));
    }
    b.node = std::move(node);
    return b;
}

inline BodyExpr direct_sum(std::vector<std::pair<BodyExpr, Frame>> parts) {
    if (parts.empty()) throw dimension_error("direct sum needs at least one part");
    BodyExpr b;
    b.dim = parts[0].second.dim;
    DirectSumNode node;
    for (auto& [body, frame] : parts) {
        if (frame.dim != b.dim) throw dimension_error("direct sum frames have mismatched ambient dimension");
        if (frame.k != body.dim) throw dimension_error("direct sum part dimension does not match its frame");
        node.parts.push_back({std::make_shared<const BodyExpr>(std::move(body)), frame});
    }
    b.node = std::move(node);
    return b;
}

inline BodyExpr affine_body(Mat matrix, Vec shift, BodyExpr inner) {
    BodyExpr b;
    b.dim = static_cast<int>(matrix.size());
    if (static_cast<int>(shift.size()) != b.dim) throw dimension_error("affine shift dimension mismatch");
    if (!matrix.empty() && static_cast<int>(matrix[0].size()) != inner.dim)
        throw dimension_error("affine matrix width does not match body dimension");
    b.node = AffineNode{std::move(matrix), std::move(shift), std::make_shared<const BodyExpr>(std::move(inner))};
    return b;
}

inline BodyExpr translate_body(BodyExpr inner, const Vec& v) {
    int n = inner.dim;
    return affine_body(identity(n), v, std::move(inner));
}

// Zero-padding coordinate embedding of a j-dimensional body into R^n.
inline BodyExpr embed_body(BodyExpr inner, int n) {
    int j = inner.dim;
    if (n < j) throw dimension_error("embedding target dimension too small");
    Mat e(static_cast<std::size_t>(n), zeros(j));
    for (int i = 0; i < j; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return affine_body(std::move(e), zeros(n), std::move(inner));
}

inline double support(const BodyExpr& b, const Vec& u);

namespace detail {
struct SupportVisitor {
    const Vec& u;
    double operator()(const PolytopeNode& n) const { return support(n.poly, u); }
    double operator()(const BallNode& n) const { return dot(n.center, u) + n.radius * norm(u); }
    double operator()(const ScaleNode& n) const { return n.coef * support(*n.body, u); }
    double operator()(const ReflectNode& n) const { return support(*n.body, scaled(u, -1.0)); }
    double operator()(const MinkowskiNode& n) const {
        double s = 0.0;
        for (const auto& t : n.terms) s += support(*t, u);
        return s;
    }
    double operator()(const DirectSumNode& n) const {
        double s = 0.0;
        for (const auto& p : n.parts) s += support(*p.body, project_point(p.frame, u));
        return s;
    }
    double operator()(const AffineNode& n) const {
        return support(*n.body, mat_tvec(n.matrix, u)) + dot(n.shift, u);
    }
};
}  // namespace detail

inline double support(const BodyExpr& b, const Vec& u) {
    return std::visit(detail::SupportVisitor{u}, b.node);
}

inline Vec support_point(const BodyExpr& b, const Vec& u);

namespace detail {
struct SupportPointVisitor {
    const Vec& u;
    int dim;
    Vec operator()(const PolytopeNode& n) const { return support_point(n.poly, u); }
    Vec operator()(const BallNode& n) const {
        double m = norm(u);
        if (m < 1e-300) return n.center;
        return add(n.center, scaled(u, n.radius / m));
    }
    Vec operator()(const ScaleNode& n) const { return scaled(support_point(*n.body, u), n.coef); }
    Vec operator()(const ReflectNode& n) const {
        return scaled(support_point(*n.body, scaled(u, -1.0)), -1.0);
    }
    Vec operator()(const MinkowskiNode& n) const {
        Vec s = zeros(dim);
        for (const auto& t : n.terms) s = add(s, support_point(*t, u));
        return s;
    }
    Vec operator()(const DirectSumNode& n) const {
        Vec s = zeros(dim);
        for (const auto& p : n.parts)
            s = add(s, embed_point(p.frame, support_point(*p.body, project_point(p.frame, u))));
        return s;
    }
    Vec operator()(const AffineNode& n) const {
        Vec y = support_point(*n.body, mat_tvec(n.matrix, u));
        return add(matvec(n.matrix, y), n.shift);
    }
};
}  // namespace detail

inline Vec support_point(const BodyExpr& b, const Vec& u) {
    return std::visit(detail::SupportPointVisitor{u, b.dim}, b.node);
}

// approximate body magnitude, for tolerance scaling
inline double body_scale(const BodyExpr& b) {
    double s = 1.0;
    for (int i = 0; i < b.dim; ++i) {
        Vec e = unit(b.dim, i);
        s = std::max(s, std::fabs(support(b, e)));
        s = std::max(s, std::fabs(support(b, scaled(e, -1.0))));
    }
    return s;
}

// axis-aligned bounding box from support values
inline std::pair<Vec, Vec> bounding_box(const BodyExpr& b) {
    Vec lo(static_cast<std::size_t>(b.dim)), hi(static_cast<std::size_t>(b.dim));
    for (int i = 0; i < b.dim; ++i) {
        Vec e = unit(b.dim, i);
        hi[static_cast<std::size_t>(i)] = support(b, e);
        lo[static_cast<std::size_t>(i)] = -support(b, scaled(e, -1.0));
    }
    return {lo, hi};
}

inline std::optional<VPolytope> as_polytope(const BodyExpr& b);

namespace detail {

constexpr std::size_t kVertexBudget = 400000;

struct AsPolytopeVisitor {
    int dim;
    std::optional<std::vector<Vec>> operator()(const PolytopeNode& n) const { return n.poly.vertices; }
    std::optional<std::vector<Vec>> operator()(const BallNode& n) const {
        if (n.radius > 0.0) return std::nullopt;
        return std::vector<Vec>{n.center};
    }
    std::optional<std::vector<Vec>> operator()(const ScaleNode& n) const {
        auto sub = raw_vertices(*n.body);
        if (!sub) return std::nullopt;
        for (Vec& v : *sub) v = scaled(v, n.coef);
        return sub;
    }
    std::optional<std::vector<Vec>> operator()(const ReflectNode& n) const {
        auto sub = raw_vertices(*n.body);
        if (!sub) return std::nullopt;
        for (Vec& v : *sub) v = scaled(v, -1.0);
        return sub;
    }
    std::optional<std::vector<Vec>> operator()(const MinkowskiNode& n) const {
        std::vector<Vec> acc = {zeros(dim)};
        for (const auto& t : n.terms) {
            auto sub = raw_vertices(*t);
            if (!sub) return std::nullopt;
            if (acc.size() * sub->size() > kVertexBudget)
                throw degenerate_error("vertex budget exceeded in Minkowski expansion");
            std::vector<Vec> next;
            next.reserve(acc.size() * sub->size());
            for (const Vec& a : acc)
                for (const Vec& s : *sub) next.push_back(add(a, s));
            acc = std::move(next);
        }
        return acc;
    }
    std::optional<std::vector<Vec>> operator()(const DirectSumNode& n) const {
        std::vector<Vec> acc = {zeros(dim)};
        for (const auto& p : n.parts) {
            auto sub = raw_vertices(*p.body);
            if (!sub) return std::nullopt;
            if (acc.size() * sub->size() > kVertexBudget)
                throw degenerate_error("vertex budget exceeded in direct sum expansion");
            std::vector<Vec> next;
            next.reserve(acc.size() * sub->size());
            for (const Vec& a : acc)
                for (const Vec& s : *sub) next.push_back(add(a, embed_point(p.frame, s)));
            acc = std::move(next);
        }
        return acc;
    }
    std::optional<std::vector<Vec>> operator()(const AffineNode& n) const {
        auto sub = raw_vertices(*n.body);
        if (!sub) return std::nullopt;
        std::vector<Vec> out;
        out.reserve(sub->size());
        for (const Vec& v : *sub) out.push_back(add(matvec(n.matrix, v), n.shift));
        return out;
    }

    static std::optional<std::vector<Vec>> raw_vertices(const BodyExpr& b) {
        return std::visit(AsPolytopeVisitor{b.dim}, b.node);
    }
};

}  // namespace detail

// Exact vertex form when the expression contains no positive-radius ball.
inline std::optional<VPolytope> as_polytope(const BodyExpr& b) {
    auto verts = detail::AsPolytopeVisitor::raw_vertices(b);
    if (!verts) return std::nullopt;
    return make_vpolytope(*verts, b.dim);
}

// polytope + Euclidean ball decomposition: B = poly + radius * B_n
struct PolyBallForm {
    VPolytope poly;
    double radius = 0.0;
};

namespace detail {

inline std::optional<PolyBallForm> poly_ball_raw(const BodyExpr& b);

struct PolyBallVisitor {
    int dim;
    std::optional<PolyBallForm> operator()(const PolytopeNode& n) const {
        return PolyBallForm{n.poly, 0.0};
    }
    std::optional<PolyBallForm> operator()(const BallNode& n) const {
        return PolyBallForm{VPolytope{dim, {n.center}}, n.radius};
    }
    std::optional<PolyBallForm> operator()(const ScaleNode& n) const {
        auto sub = poly_ball_raw(*n.body);
        if (!sub) return std::nullopt;
        sub->poly = scale_polytope(sub->poly, n.coef);
        sub->radius *= n.coef;
        return sub;
    }
    std::optional<PolyBallForm> operator()(const ReflectNode& n) const {
        auto sub = poly_ball_raw(*n.body);
        if (!sub) return std::nullopt;
        sub->poly = reflect_polytope(sub->poly);
        return sub;
    }
    std::optional<PolyBallForm> operator()(const MinkowskiNode& n) const {
        PolyBallForm acc{VPolytope{dim, {zeros(dim)}}, 0.0};
        for (const auto& t : n.terms) {
            auto sub = poly_ball_raw(*t);
            if (!sub) return std::nullopt;
            acc.poly = minkowski_sum_polytopes(acc.poly, sub->poly);
            acc.radius += sub->radius;
        }
        return acc;
    }
    std::optional<PolyBallForm> operator()(const DirectSumNode&) const {
        return std::nullopt;  // embedded balls are not full-dimensional balls
    }
    std::optional<PolyBallForm> operator()(const AffineNode& n) const {
        auto sub = poly_ball_raw(*n.body);
        if (!sub || sub->radius > 0.0) return std::nullopt;  // affine image of a ball is an ellipsoid
        std::vector<Vec> out;
        for (const Vec& v : sub->poly.vertices) out.push_back(add(matvec(n.matrix, v), n.shift));
        return PolyBallForm{make_vpolytope(out, dim), 0.0};
    }
};

inline std::optional<PolyBallForm> poly_ball_raw(const BodyExpr& b) {
    auto r = std::visit(PolyBallVisitor{b.dim}, b.node);
    return r;
}

}  // namespace detail

inline std::optional<PolyBallForm> as_polytope_plus_ball(const BodyExpr& b) {
    auto r = detail::poly_ball_raw(b);
    if (!r) return std::nullopt;
    r->poly = make_vpolytope(r->poly.vertices, b.dim);
    return r;
}

// Projection commutes with the Minkowski structure, so each node maps
// structurally into the k coordinates of the frame.
inline BodyExpr project(const BodyExpr& b, const Frame& f);

namespace detail {
struct ProjectVisitor {
    const Frame& f;
    BodyExpr operator()(const PolytopeNode& n) const {
        std::vector<Vec> pts;
        pts.reserve(n.poly.vertices.size());
        for (const Vec& v : n.poly.vertices) pts.push_back(project_point(f, v));
        return body_from_polytope(make_vpolytope(pts, f.k));
    }
    BodyExpr operator()(const BallNode& n) const {
        return ball(project_point(f, n.center), n.radius);
    }
    BodyExpr operator()(const ScaleNode& n) const { return scale_body(n.coef, project(*n.body, f)); }
    BodyExpr operator()(const ReflectNode& n) const { return reflect_body(project(*n.body, f)); }
    BodyExpr operator()(const MinkowskiNode& n) const {
        std::vector<BodyExpr> terms;
        for (const auto& t : n.terms) terms.push_back(project(*t, f));
        return minkowski(std::move(terms));
    }
    BodyExpr operator()(const DirectSumNode& n) const {
        // each embedded part projects through the composed map F^T E_i
        std::vector<BodyExpr> terms;
        for (const auto& p : n.parts) {
            Mat m(static_cast<std::size_t>(f.k), Vec(static_cast<std::size_t>(p.frame.k)));
            for (int r = 0; r < f.k; ++r)
                for (int c = 0; c < p.frame.k; ++c)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        dot(f.basis[static_cast<std::size_t>(r)], p.frame.basis[static_cast<std::size_t>(c)]);
            BodyExpr inner = *p.body;
            terms.push_back(affine_body(std::move(m), zeros(f.k), std::move(inner)));
        }
        return minkowski(std::move(terms));
    }
    BodyExpr operator()(const AffineNode& n) const {
        Mat m(static_cast<std::size_t>(f.k), Vec(n.matrix.empty() ? 0 : n.matrix[0].size(), 0.0));
        for (int r = 0; r < f.k; ++r)
            for (std::size_t i = 0; i < n.matrix.size(); ++i)
                for (std::size_t c = 0; c < n.matrix[i].size(); ++c)
                    m[static_cast<std::size_t>(r)][c] += f.basis[static_cast<std::size_t>(r)][i] * n.matrix[i][c];
        BodyExpr inner = *n.body;
        return affine_body(std::move(m), project_point(f, n.shift), std::move(inner));
    }
};
}  // namespace detail

inline BodyExpr project(const BodyExpr& b, const Frame& f) {
    if (f.dim != b.dim) throw dimension_error("projection frame dimension mismatch");
    return std::visit(detail::ProjectVisitor{f}, b.node);
}

}  // namespace shadowcover
