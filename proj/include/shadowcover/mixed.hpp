#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "shadowcover/body.hpp"
#include "shadowcover/distance.hpp"
#include "shadowcover/parallel.hpp"
#include "shadowcover/polytope.hpp"
#include "shadowcover/rng.hpp"

namespace shadowcover {

// volume of the m-dimensional unit ball
inline double kappa(int m) {
    double k = (m % 2 == 0) ? 1.0 : 2.0;
    for (int i = (m % 2 == 0) ? 2 : 3; i <= m; i += 2) k *= 2.0 * 3.14159265358979323846 / i;
    return k;
}

// V_{n-1,1}(P, K) = (1/n) sum_facets h_K(u) area(u)
inline double mixed_vol_first(const VPolytope& p, const BodyExpr& k) {
    if (p.dim != k.dim) throw dimension_error("mixed volume dimension mismatch");
    SurfaceMeasure s = surface_measure(p);
    double acc = 0.0;
    for (const auto& a : s.atoms) acc += support(k, a.normal) * a.mass;
    return acc / p.dim;
}

struct IntrinsicVolumes {
    int dim = 0;       // ambient dimension
    Vec values;        // V_0 .. V_dim
};

namespace detail {

// intrinsic volumes of a (possibly lower-dimensional) polytope, dims <= 3
inline Vec intrinsic_values(const VPolytope& p);

inline Vec intrinsic_full_2d(const Hull& h) {
    double area = 0.0, per = 0.0;
    Vec c = zeros(2);
    for (int id : h.vertex_ids) axpy(c, 1.0 / static_cast<double>(h.vertex_ids.size()), h.points[static_cast<std::size_t>(id)]);
    for (const HullFacet& f : h.facets) {
        const Vec& a = h.points[static_cast<std::size_t>(f.verts[0])];
        const Vec& b = h.points[static_cast<std::size_t>(f.verts[1])];
        per += dist(a, b);
        Mat m = {sub(a, c), sub(b, c)};
        area += std::fabs(determinant(m)) / 2.0;
    }
    return {1.0, per / 2.0, area};
}

inline Vec intrinsic_full_3d(const Hull& h) {
    double vol = 0.0, surf = 0.0;
    Vec c = zeros(3);
    for (int id : h.vertex_ids) axpy(c, 1.0 / static_cast<double>(h.vertex_ids.size()), h.points[static_cast<std::size_t>(id)]);
    for (const HullFacet& f : h.facets) {
        Mat m;
        for (int vid : f.verts) m.push_back(sub(h.points[static_cast<std::size_t>(vid)], c));
        vol += std::fabs(determinant(m)) / 6.0;
        surf += simplex_facet_volume(h.points, f.verts);
    }
    // V1 from edge lengths and exterior dihedral angles; edges interior to a
    // merged facet carry angle ~0 and drop out
    std::map<std::pair<int, int>, std::vector<int>> edge_facets;
    for (std::size_t fi = 0; fi < h.facets.size(); ++fi) {
        const auto& fv = h.facets[fi].verts;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                auto key = std::minmax(fv[static_cast<std::size_t>(a)], fv[static_cast<std::size_t>(b)]);
                edge_facets[key].push_back(static_cast<int>(fi));
            }
    }
    double v1 = 0.0;
    for (const auto& [key, fs] : edge_facets) {
        if (fs.size() != 2) continue;
        const Vec& n1 = h.facets[static_cast<std::size_t>(fs[0])].normal;
        const Vec& n2 = h.facets[static_cast<std::size_t>(fs[1])].normal;
        Vec cr = {n1[1] * n2[2] - n1[2] * n2[1], n1[2] * n2[0] - n1[0] * n2[2],
                  n1[0] * n2[1] - n1[1] * n2[0]};
        double ext = std::atan2(norm(cr), dot(n1, n2));
        double len = dist(h.points[static_cast<std::size_t>(key.first)], h.points[static_cast<std::size_t>(key.second)]);
        v1 += len * ext;
    }
    v1 /= 2.0 * 3.14159265358979323846;
    return {1.0, v1, surf / 2.0, vol};
}

inline Vec intrinsic_values(const VPolytope& p) {
    if (p.dim > 3) throw dimension_error("exact intrinsic volumes implemented for dimension <= 3");
    if (p.vertices.size() == 1) {
        Vec v(static_cast<std::size_t>(p.dim) + 1, 0.0);
        v[0] = 1.0;
        return v;
    }
    Hull h = convex_hull(p.vertices, p.dim);
    if (!h.degenerate) {
        if (p.dim == 1) {
            double len = std::fabs(h.points[static_cast<std::size_t>(h.vertex_ids[1])][0] -
                                   h.points[static_cast<std::size_t>(h.vertex_ids[0])][0]);
            return {1.0, len};
        }
        if (p.dim == 2) return intrinsic_full_2d(h);
        return intrinsic_full_3d(h);
    }
    // lower-dimensional body: intrinsic volumes are intrinsic, so compute
    // within the affine span and zero-pad
    std::vector<Vec> coords;
    for (const Vec& q : h.vertices()) {
        Vec d = sub(q, h.span_origin);
        Vec y(static_cast<std::size_t>(h.aff_dim));
        for (int j = 0; j < h.aff_dim; ++j) y[static_cast<std::size_t>(j)] = dot(d, h.span_basis[static_cast<std::size_t>(j)]);
        coords.push_back(std::move(y));
    }
    Vec inner;
    if (h.aff_dim == 0) {
        inner = {1.0};
    } else {
        inner = intrinsic_values(make_vpolytope(coords, h.aff_dim));
    }
    inner.resize(static_cast<std::size_t>(p.dim) + 1, 0.0);
    return inner;
}

}  // namespace detail

// exact intrinsic volumes for polytopes of ambient dimension <= 3
inline IntrinsicVolumes intrinsic_volumes_exact(const VPolytope& p) {
    IntrinsicVolumes iv;
    iv.dim = p.dim;
    iv.values = detail::intrinsic_values(p);
    return iv;
}

// V3 exact, V2 = S/2, V1 from dihedral angles, V0 = 1
inline IntrinsicVolumes intrinsic_volumes_3d(const VPolytope& p) {
    if (p.dim != 3) throw dimension_error("intrinsic_volumes_3d expects a 3-dimensional body");
    if (!is_full_dimensional(p)) throw degenerate_error("intrinsic_volumes_3d needs a full-dimensional body");
    return intrinsic_volumes_exact(p);
}

// Cartesian product formula: V_m(A x B) = sum_{i+j=m} V_i(A) V_j(B)
inline IntrinsicVolumes cartesian_intrinsic(const IntrinsicVolumes& a, const IntrinsicVolumes& b) {
    IntrinsicVolumes r;
    r.dim = a.dim + b.dim;
    r.values = Vec(static_cast<std::size_t>(r.dim) + 1, 0.0);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        for (std::size_t j = 0; j < b.values.size(); ++j) r.values[i + j] += a.values[i] * b.values[j];
    return r;
}

// V(K + rB) by the Steiner expansion of exact intrinsic volumes (dims <= 3)
inline double steiner_value(const IntrinsicVolumes& iv, double r) {
    double v = 0.0;
    for (int j = 0; j <= iv.dim; ++j)
        v += kappa(iv.dim - j) * iv.values[static_cast<std::size_t>(j)] * std::pow(r, iv.dim - j);
    return v;
}

struct McVolume {
    double estimate = 0.0;
    double std_error = 0.0;
    long long samples = 0;
};

namespace detail {

constexpr long long kMcChunk = 1 << 16;

// membership oracle selection: exact polytope-part distance when the body is
// polytope + ball, generic support-point scheme otherwise
inline std::function<bool(const Vec&)> membership_oracle(const BodyExpr& b, double eps) {
    if (auto pb = as_polytope_plus_ball(b)) {
        auto poly = std::make_shared<BodyExpr>(body_from_polytope(pb->poly));
        double rad = pb->radius;
        return [poly, rad, eps](const Vec& x) { return contains_point(*poly, x, rad + eps); };
    }
    auto body = std::make_shared<BodyExpr>(b);
    return [body, eps](const Vec& x) { return contains_point(*body, x, eps); };
}

}  // namespace detail

// Hit-or-miss estimate over the support bounding box.
inline McVolume volume_mc(const BodyExpr& b, long long samples, std::uint64_t seed) {
    auto [lo, hi] = bounding_box(b);
    double boxvol = 1.0;
    for (int i = 0; i < b.dim; ++i) boxvol *= std::max(0.0, hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]);
    McVolume r;
    r.samples = samples;
    if (boxvol <= 0.0) return r;

    auto inside = detail::membership_oracle(b, 1e-9 * body_scale(b));
    const int nchunks = static_cast<int>((samples + detail::kMcChunk - 1) / detail::kMcChunk);
    std::vector<long long> hits(static_cast<std::size_t>(nchunks), 0);
    parallel_for_index(nchunks, [&](int c) {
        Rng rng = derive_rng(seed, "mcvolume", static_cast<std::uint64_t>(c));
        long long count = std::min(detail::kMcChunk, samples - static_cast<long long>(c) * detail::kMcChunk);
        Vec x(static_cast<std::size_t>(b.dim));
        long long h = 0;
        for (long long i = 0; i < count; ++i) {
            for (int j = 0; j < b.dim; ++j)
                x[static_cast<std::size_t>(j)] = rng.uniform(lo[static_cast<std::size_t>(j)], hi[static_cast<std::size_t>(j)]);
            if (inside(x)) ++h;
        }
        hits[static_cast<std::size_t>(c)] = h;
    });
    long long total = 0;
    for (long long h : hits) total += h;
    double p = static_cast<double>(total) / static_cast<double>(samples);
    r.estimate = boxvol * p;
    r.std_error = boxvol * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(samples)));
    return r;
}

// Paired estimate of V(A) - V(B) with common sample points; variance scales
// with the symmetric difference rather than the bodies themselves.
inline McVolume volume_mc_diff(const BodyExpr& a, const BodyExpr& b, long long samples,
                               std::uint64_t seed) {
    if (a.dim != b.dim) throw dimension_error("volume difference needs equal dimensions");
    auto [loa, hia] = bounding_box(a);
    auto [lob, hib] = bounding_box(b);
    Vec lo(loa.size()), hi(hia.size());
    double boxvol = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = std::min(loa[i], lob[i]);
        hi[i] = std::max(hia[i], hib[i]);
        boxvol *= std::max(0.0, hi[i] - lo[i]);
    }
    auto ina = detail::membership_oracle(a, 1e-9 * body_scale(a));
    auto inb = detail::membership_oracle(b, 1e-9 * body_scale(b));
    const int nchunks = static_cast<int>((samples + detail::kMcChunk - 1) / detail::kMcChunk);
    std::vector<long long> plus(static_cast<std::size_t>(nchunks), 0), minus(static_cast<std::size_t>(nchunks), 0);
    parallel_for_index(nchunks, [&](int c) {
        Rng rng = derive_rng(seed, "mcvoldiff", static_cast<std::uint64_t>(c));
        long long count = std::min(detail::kMcChunk, samples - static_cast<long long>(c) * detail::kMcChunk);
        Vec x(lo.size());
        long long pl = 0, mi = 0;
        for (long long i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < lo.size(); ++j) x[j] = rng.uniform(lo[j], hi[j]);
            bool qa = ina(x), qb = inb(x);
            if (qa && !qb) ++pl;
            if (qb && !qa) ++mi;
        }
        plus[static_cast<std::size_t>(c)] = pl;
        minus[static_cast<std::size_t>(c)] = mi;
    });
    long long tp = 0, tm = 0;
    for (std::size_t c = 0; c < plus.size(); ++c) {
        tp += plus[c];
        tm += minus[c];
    }
    double pp = static_cast<double>(tp) / static_cast<double>(samples);
    double pm = static_cast<double>(tm) / static_cast<double>(samples);
    McVolume r;
    r.samples = samples;
    r.estimate = boxvol * (pp - pm);
    double var = pp + pm - (pp - pm) * (pp - pm);
    r.std_error = boxvol * std::sqrt(std::max(0.0, var / static_cast<double>(samples)));
    return r;
}

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    bool exact = false;
};

// Volume of a body expression. Exact for polytopes in any supported
// dimension and for polytope+ball forms in dimensions 2 and 3 (Steiner
// evaluation); Monte Carlo elsewhere.
inline VolumeEstimate body_volume(const BodyExpr& b, long long mc_samples = 2000000,
                                  std::uint64_t seed = 0xB0D7) {
    if (auto pb = as_polytope_plus_ball(b)) {
        if (pb->radius == 0.0) return {volume(pb->poly), 0.0, true};
        if (b.dim <= 3)
            return {steiner_value(intrinsic_volumes_exact(pb->poly), pb->radius), 0.0, true};
    } else if (auto p = as_polytope(b)) {
        return {volume(*p), 0.0, true};
    }
    McVolume mc = volume_mc(b, mc_samples, seed);
    return {mc.estimate, mc.std_error, false};
}

// Steiner polynomial coefficients of V(K + tB); coeffs[j] multiplies t^{n-j}
// and equals kappa_{n-j} V_j(K).
struct SteinerCoeffs {
    int dim = 0;
    Vec coeffs;       // index j -> coefficient of t^{n-j}
    Vec coeff_sigma;  // propagated MC standard errors (zero for exact paths)
    double residual = 0.0;
};

namespace detail {

// weighted polynomial fit of (t_i, v_i +- sigma_i) to sum_d a_d t^d
inline SteinerCoeffs steiner_fit_values(int dim, const std::vector<double>& radii,
                                        const std::vector<double>& vals,
                                        const std::vector<double>& sigmas) {
    const int nc = dim + 1;
    const int m = static_cast<int>(radii.size());
    if (m < nc) throw fit_error("Steiner fit needs at least dim+1 radii");
    double rmin = radii[0], rmax = radii[0];
    for (double r : radii) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (rmax - rmin < 1e-13 * std::max(1.0, rmax))
        throw fit_error("Steiner fit radii spread is below machine scale");

    Mat G(static_cast<std::size_t>(nc), zeros(nc));
    Vec g = zeros(nc);
    for (int i = 0; i < m; ++i) {
        double w = 1.0;
        if (sigmas[static_cast<std::size_t>(i)] > 0.0) w = 1.0 / (sigmas[static_cast<std::size_t>(i)] * sigmas[static_cast<std::size_t>(i)]);
        Vec row(static_cast<std::size_t>(nc));
        double t = 1.0;
        for (int d = 0; d < nc; ++d) {
            row[static_cast<std::size_t>(d)] = t;
            t *= radii[static_cast<std::size_t>(i)];
        }
        for (int r = 0; r < nc; ++r) {
            g[static_cast<std::size_t>(r)] += w * row[static_cast<std::size_t>(r)] * vals[static_cast<std::size_t>(i)];
            for (int c2 = 0; c2 < nc; ++c2)
                G[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] += w * row[static_cast<std::size_t>(r)] * row[static_cast<std::size_t>(c2)];
        }
    }
    Vec a = solve_linear(G, g);

    // covariance = G^{-1} (unit-weight errors folded into w)
    SteinerCoeffs sc;
    sc.dim = dim;
    sc.coeffs = zeros(nc);
    sc.coeff_sigma = zeros(nc);
    for (int j = 0; j < nc; ++j) sc.coeffs[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(dim - j)];
    for (int d = 0; d < nc; ++d) {
        Vec e = zeros(nc);
        e[static_cast<std::size_t>(d)] = 1.0;
        Vec col = solve_linear(G, e);
        sc.coeff_sigma[static_cast<std::size_t>(dim - d)] = std::sqrt(std::max(0.0, col[static_cast<std::size_t>(d)]));
    }
    double res = 0.0;
    for (int i = 0; i < m; ++i) {
        double fit = 0.0, t = 1.0;
        for (int d = 0; d < nc; ++d) {
            fit += a[static_cast<std::size_t>(d)] * t;
            t *= radii[static_cast<std::size_t>(i)];
        }
        double w = sigmas[static_cast<std::size_t>(i)] > 0.0 ? 1.0 / sigmas[static_cast<std::size_t>(i)] : 1.0;
        double r2 = (fit - vals[static_cast<std::size_t>(i)]) * w;
        res += r2 * r2;
    }
    sc.residual = std::sqrt(res / std::max(1, m - nc));
    return sc;
}

}  // namespace detail

// Monte-Carlo-backed Steiner fit: samples V(B + tB_n) at the given radii.
inline SteinerCoeffs steiner_fit(const BodyExpr& b, const std::vector<double>& radii,
                                 long long samples, std::uint64_t seed) {
    std::vector<double> vals, sigmas;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        BodyExpr grown = radii[i] > 0.0
                             ? minkowski({b, ball(zeros(b.dim), radii[i])})
                             : b;
        McVolume mc = volume_mc(grown, samples, splitmix64(seed + 101 * i));
        vals.push_back(mc.estimate);
        sigmas.push_back(std::max(mc.std_error, 1e-12));
    }
    return detail::steiner_fit_values(b.dim, radii, vals, sigmas);
}

// Exact coefficients for 3-dimensional polytopes.
inline SteinerCoeffs steiner_exact_3d(const VPolytope& p) {
    IntrinsicVolumes iv = intrinsic_volumes_3d(p);
    SteinerCoeffs sc;
    sc.dim = 3;
    sc.coeffs = zeros(4);
    sc.coeff_sigma = zeros(4);
    for (int j = 0; j <= 3; ++j) sc.coeffs[static_cast<std::size_t>(j)] = kappa(3 - j) * iv.values[static_cast<std::size_t>(j)];
    return sc;
}

// Paired-difference Steiner fit: coefficients of V(A + tB) - V(B + tB), with
// common sample points per radius.
inline SteinerCoeffs steiner_fit_diff(const BodyExpr& a, const BodyExpr& b,
                                      const std::vector<double>& radii, long long samples,
                                      std::uint64_t seed) {
    std::vector<double> vals, sigmas;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        BodyExpr ga = radii[i] > 0.0 ? minkowski({a, ball(zeros(a.dim), radii[i])}) : a;
        BodyExpr gb = radii[i] > 0.0 ? minkowski({b, ball(zeros(b.dim), radii[i])}) : b;
        McVolume mc = volume_mc_diff(ga, gb, samples, splitmix64(seed + 211 * i));
        vals.push_back(mc.estimate);
        sigmas.push_back(std::max(mc.std_error, 1e-12));
    }
    return detail::steiner_fit_values(a.dim, radii, vals, sigmas);
}

inline IntrinsicVolumes intrinsic_from_steiner(const SteinerCoeffs& sc) {
    IntrinsicVolumes iv;
    iv.dim = sc.dim;
    iv.values = zeros(sc.dim + 1);
    for (int j = 0; j <= sc.dim; ++j)
        iv.values[static_cast<std::size_t>(j)] = sc.coeffs[static_cast<std::size_t>(j)] / kappa(sc.dim - j);
    return iv;
}

}  // namespace shadowcover
