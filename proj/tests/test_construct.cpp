#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "shadowcover/construct.hpp"
#include "shadowcover/mixed.hpp"
#include "shadowcover/radii.hpp"

using namespace shadowcover;
using sctest::random_polytope;

namespace {
const double kPi = 3.14159265358979323846;

double simplex_volume_formula(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return std::sqrt(n + 1.0) / (std::pow(2.0, n / 2.0) * f);
}
}  // namespace

TEST_CASE("regular simplex statistics") {
    CHECK(volume(regular_simplex(2, 1.0)) == Catch::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
    CHECK(volume(regular_simplex(3, 1.0)) == Catch::Approx(simplex_volume_formula(3)).epsilon(1e-12));
    auto [r, c] = inradius(to_hrep(regular_simplex(3, 1.0)));
    CHECK(r == Catch::Approx(1.0 / std::sqrt(24.0)).epsilon(1e-10));
    CHECK(min_width(body_from_polytope(regular_simplex(3, 1.0))).width ==
          Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    // pairwise distances all equal the edge length
    VPolytope s = regular_simplex(4, 2.5);
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
            CHECK(dist(s.vertices[i], s.vertices[j]) == Catch::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("k_epsilon_body endpoints") {
    Rng rng = derive_rng(41, "keps");
    BodyExpr at1 = k_epsilon_body(3, 1.0);
    VPolytope simplex = regular_simplex(3, 1.0);
    for (int i = 0; i < 40; ++i) {
        Vec u = rng.unit_vec(3);
        CHECK(support(at1, u) == Catch::Approx(support(simplex, u)).margin(1e-12));
    }
    BodyExpr at0 = k_epsilon_body(3, 0.0);
    for (int i = 0; i < 40; ++i) {
        Vec u = rng.unit_vec(3);
        CHECK(support(at0, u) == Catch::Approx(1.0 / (3.0 * std::sqrt(2.0))).epsilon(1e-12));
    }
}

TEST_CASE("K^0.9 volume exceeds the simplex volume (footnote values)") {
    VolumeEstimate v = body_volume(k_epsilon_body(3, 0.9));
    REQUIRE(v.exact);
    CHECK(v.value >= 0.1214);
    CHECK(v.value <= 0.1224);
    CHECK(v.value > volume(regular_simplex(3, 1.0)));
}

TEST_CASE("critical epsilon for n=3") {
    double tol = 1e-6;
    double eps = critical_epsilon(3, tol);
    double vdelta = volume(regular_simplex(3, 1.0));
    double g = body_volume(k_epsilon_body(3, eps)).value - vdelta;
    CHECK(std::fabs(g) <= tol);
    CHECK(eps == Catch::Approx(0.5904).margin(5e-4));
    // stability under tolerance refinement
    double eps2 = critical_epsilon(3, tol / 10.0);
    CHECK(std::fabs(eps - eps2) <= 10.0 * tol);
    // bracket signs
    CHECK(body_volume(k_epsilon_body(3, 0.0)).value - vdelta < 0.0);
    CHECK(body_volume(k_epsilon_body(3, 0.9)).value - vdelta > 0.0);
}

TEST_CASE("difference body: symmetry, width preservation, larger intrinsic volumes") {
    VPolytope simplex = regular_simplex(3, 1.0);
    VPolytope m = difference_body(simplex);
    Vec c = centroid(m);
    CHECK(norm(c) < 1e-10);
    // vertex set symmetric about the centroid
    for (const Vec& v : m.vertices) {
        double best = 1e9;
        for (const Vec& w : m.vertices) best = std::min(best, dist(scaled(v, -1.0), w));
        CHECK(best < 1e-9);
    }
    Rng rng = derive_rng(42, "diffwidth");
    BodyExpr bs = body_from_polytope(simplex), bm = body_from_polytope(m);
    for (int i = 0; i < 1000; ++i) {
        Vec u = rng.unit_vec(3);
        double ws = support(bs, u) + support(bs, scaled(u, -1.0));
        double wm = support(bm, u) + support(bm, scaled(u, -1.0));
        CHECK(ws == Catch::Approx(wm).epsilon(1e-10));
    }
    IntrinsicVolumes ivs = intrinsic_volumes_3d(simplex);
    IntrinsicVolumes ivm = intrinsic_volumes_3d(m);
    CHECK(ivm.values[2] > ivs.values[2]);
    CHECK(ivm.values[3] > ivs.values[3]);
    CHECK(ivm.values[1] == Catch::Approx(ivs.values[1]).epsilon(1e-9));  // equal mean width
}

TEST_CASE("general counterexample: k=1 difference-body branch") {
    CounterexamplePair p = general_counterexample(3, 1, 0.9);
    auto kp = as_polytope(p.K), lp = as_polytope(p.L);
    REQUIRE(kp.has_value());
    REQUIRE(lp.has_value());
    CHECK(volume(*kp) > volume(*lp));
}

TEST_CASE("general counterexample: n=4 k=2 with automatic cube scale") {
    CounterexamplePair p = general_counterexample(4, 2, 0.9);
    CHECK(p.eps_cube > 0.0);
    REQUIRE(p.khat.has_value());
    // exact gap check through the Cartesian product formula
    auto pbk = as_polytope_plus_ball(*p.khat);
    REQUIRE(pbk.has_value());
    IntrinsicVolumes ivl = intrinsic_volumes_exact(regular_simplex(3, 1.0));
    // V_m(K) - V_m(L) > 0 for m = 3, 4
    IntrinsicVolumes seg{1, {1.0, p.eps_cube}};
    IntrinsicVolumes ivk3 = shadowcover::detail::khat_intrinsics(3, 0.9, 0, 0);
    IntrinsicVolumes vk = cartesian_intrinsic(ivk3, seg);
    IntrinsicVolumes vl = cartesian_intrinsic(ivl, seg);
    CHECK(vk.values[3] > vl.values[3]);
    CHECK(vk.values[4] > vl.values[4]);
    CHECK_THROWS_AS(general_counterexample(7, 2, 0.9), dimension_error);
}

TEST_CASE("bounding cylinder") {
    SECTION("cube: diagonal axis cylinder contains the cube") {
        VPolytope cube = sctest::unit_cube(3);
        BodyExpr cyl = bounding_cylinder(cube);
        auto cp = as_polytope(cyl);
        REQUIRE(cp.has_value());
        double vc = volume(*cp);
        CHECK(vc >= 1.0);
        CHECK(vc <= 3.0 + 1e-9);
        Rng rng = derive_rng(43, "cylcube");
        BodyExpr cb = body_from_polytope(cube);
        for (int i = 0; i < 200; ++i) {
            Vec u = rng.unit_vec(3);
            CHECK(support(cyl, u) >= support(cb, u) - 1e-9);
        }
    }
    SECTION("ball approximation: cylinder-to-ball volume ratio near 3/2") {
        HPolytope happ = ball_happrox_3d(500);
        VPolytope bp = to_vrep(happ);
        BodyExpr cyl = bounding_cylinder(bp);
        double vc = volume(*as_polytope(cyl));
        CHECK(vc / volume(bp) == Catch::Approx(1.5).epsilon(0.05));
    }
    SECTION("V(C) <= n V(L) on random polytopes") {
        Rng rng = derive_rng(44, "cylrand");
        for (int trial = 0; trial < 100; ++trial) {
            int dim = 2 + static_cast<int>(rng.below(3));
            VPolytope l = random_polytope(dim, dim + 6, rng);
            double vc = volume(*as_polytope(bounding_cylinder(l)));
            CHECK(vc <= dim * volume(l) * (1.0 + 1e-9));
            CHECK(vc >= volume(l) * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("reuleaux triangle") {
    BodyExpr r = reuleaux_triangle(1.0);
    Rng rng = derive_rng(45, "reuleaux");
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Vec u = rng.unit_vec(2);
        double w = support(r, u) + support(r, scaled(u, -1.0));
        worst = std::max(worst, std::fabs(w - 1.0));
    }
    CHECK(worst < 1e-4);
    double area = volume(*as_polytope(r));
    CHECK(area == Catch::Approx((kPi - std::sqrt(3.0)) / 2.0).epsilon(5e-3));
    CHECK(area < kPi / 4.0);
    // 1d shadows covered both ways against the diameter-1 disk
    BodyExpr disk = ball(zeros(2), 0.5);
    for (int i = 0; i < 100; ++i) {
        Vec u = rng.unit_vec(2);
        double wr = support(r, u) + support(r, scaled(u, -1.0));
        double wd = support(disk, u) + support(disk, scaled(u, -1.0));
        CHECK(std::fabs(wr - wd) < 1e-4);
    }
}
