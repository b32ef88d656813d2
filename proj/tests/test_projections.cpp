#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "shadowcover/body.hpp"
#include "shadowcover/construct.hpp"
#include "shadowcover/frame.hpp"
#include "shadowcover/radii.hpp"

using namespace shadowcover;
using sctest::random_polytope;
using sctest::unit_cube;

TEST_CASE("project: cube onto a coordinate plane is the unit square") {
    Frame f = frame_from_basis(3, {unit(3, 0), unit(3, 1)});
    BodyExpr shadow = project(body_from_polytope(unit_cube(3)), f);
    auto p = as_polytope(shadow);
    REQUIRE(p.has_value());
    CHECK(p->vertices.size() == 4);
    CHECK(volume(*p) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("project: balls stay balls of the same radius") {
    auto frames = sample_grassmannian(3, 2, 5, 99);
    for (const Frame& f : frames) {
        BodyExpr shadow = project(ball(zeros(3), 0.75), f);
        Rng rng = derive_rng(1, "ballproj");
        for (int i = 0; i < 20; ++i) CHECK(support(shadow, rng.unit_vec(2)) == Catch::Approx(0.75).epsilon(1e-12));
    }
}

TEST_CASE("project: support pullback identity h_{K_F}(u) = h_K(embed u)") {
    Rng rng = derive_rng(2, "pullback");
    VPolytope p = random_polytope(4, 10, rng);
    BodyExpr body = minkowski({body_from_polytope(p), ball(zeros(4), 0.3)});
    auto frames = sample_grassmannian(4, 2, 3, 123);
    for (const Frame& f : frames) {
        BodyExpr shadow = project(body, f);
        for (int i = 0; i < 200; ++i) {
            Vec u = rng.unit_vec(2);
            CHECK(support(shadow, u) == Catch::Approx(support(body, embed_point(f, u))).epsilon(1e-10));
        }
    }
}

TEST_CASE("grassmannian sampling: orthonormal, deterministic, uniform moment") {
    auto fs = sample_grassmannian(3, 2, 4, 7);
    for (const Frame& f : fs) {
        CHECK(std::fabs(norm(f.basis[0]) - 1.0) < 1e-12);
        CHECK(std::fabs(norm(f.basis[1]) - 1.0) < 1e-12);
        CHECK(std::fabs(dot(f.basis[0], f.basis[1])) < 1e-12);
    }
    auto fs2 = sample_grassmannian(3, 2, 4, 7);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(dist(fs[static_cast<std::size_t>(i)].basis[static_cast<std::size_t>(j)],
                       fs2[static_cast<std::size_t>(i)].basis[static_cast<std::size_t>(j)]) == 0.0);

    // E[u_1^2] = 1/n for sphere-uniform u; Var(u_1^2) = (2n-2)/(n^2 (n+2))
    const int n = 3, count = 100000;
    auto lines = sample_grassmannian(n, 1, count, 2024);
    double mean = 0.0;
    for (const Frame& f : lines) mean += f.basis[0][0] * f.basis[0][0] / count;
    double sigma = std::sqrt((2.0 * n - 2.0) / (static_cast<double>(n) * n * (n + 2))) / std::sqrt(count);
    CHECK(std::fabs(mean - 1.0 / n) < 3.0 * sigma);
}

TEST_CASE("inradius of cube and regular simplices") {
    auto [rc, cc] = inradius(to_hrep(unit_cube(3)));
    CHECK(rc == Catch::Approx(0.5).epsilon(1e-9));
    for (double x : cc) CHECK(x == Catch::Approx(0.5).epsilon(1e-7));

    auto [r3, c3] = inradius(to_hrep(regular_simplex(3, 1.0)));
    CHECK(r3 == Catch::Approx(1.0 / std::sqrt(24.0)).epsilon(1e-9));
    CHECK(norm(c3) < 1e-9);

    auto [r4, c4] = inradius(to_hrep(regular_simplex(4, 1.0)));
    CHECK(r4 == Catch::Approx(1.0 / std::sqrt(40.0)).epsilon(1e-9));
}

TEST_CASE("minimal width: cube and simplices match closed forms") {
    WidthResult wc = min_width(body_from_polytope(unit_cube(3)));
    CHECK(wc.width == Catch::Approx(1.0).epsilon(1e-9));

    WidthResult w3 = min_width(body_from_polytope(regular_simplex(3, 1.0)));
    CHECK(w3.width == Catch::Approx(std::sqrt(2.0 / 4.0)).epsilon(1e-8));

    WidthResult w4 = min_width(body_from_polytope(regular_simplex(4, 1.0)));
    CHECK(w4.width == Catch::Approx(std::sqrt(10.0 / 24.0)).epsilon(1e-8));
}

TEST_CASE("width-inradius relations of the regular simplex (odd/even)") {
    for (int n : {3, 5}) {
        auto [r, c] = inradius(to_hrep(regular_simplex(n, 1.0)));
        double d = min_width(body_from_polytope(regular_simplex(n, 1.0))).width;
        CHECK(d == Catch::Approx(2.0 * std::sqrt(static_cast<double>(n)) * r).epsilon(1e-8));
    }
    for (int n : {2, 4}) {
        auto [r, c] = inradius(to_hrep(regular_simplex(n, 1.0)));
        double d = min_width(body_from_polytope(regular_simplex(n, 1.0))).width;
        CHECK(d == Catch::Approx(2.0 * (n + 1) / std::sqrt(n + 2.0) * r).epsilon(1e-8));
    }
}

TEST_CASE("diameter and circumradius") {
    CHECK(diameter(body_from_polytope(unit_cube(3))) == Catch::Approx(std::sqrt(3.0)).epsilon(1e-12));
    VPolytope tetra = regular_simplex(3, std::sqrt(3.0));
    auto [R, c] = circumradius(tetra);
    CHECK(R == Catch::Approx(std::sqrt(9.0 / 8.0)).epsilon(1e-7));
    CHECK(R > 1.0);  // cannot translate into the unit ball
    CHECK(norm(c) < 1e-5);
}

TEST_CASE("Jung bound: every 2-projection of the sqrt(3) tetrahedron fits the unit disk") {
    VPolytope tetra = regular_simplex(3, std::sqrt(3.0));
    auto frames = sample_grassmannian(3, 2, 1000, 31);
    double worst = 0.0;
    for (const Frame& f : frames) {
        auto shadow = as_polytope(project(body_from_polytope(tetra), f));
        REQUIRE(shadow.has_value());
        worst = std::max(worst, circumradius(*shadow).first);
    }
    CHECK(worst <= 1.0 + 1e-9);
}

TEST_CASE("projection cannot shrink the minimal width of the simplex") {
    VPolytope simplex = regular_simplex(3, 1.0);
    double d = std::sqrt(0.5);
    auto frames = sample_grassmannian(3, 2, 25, 77);
    for (const Frame& f : frames) {
        auto shadow = as_polytope(project(body_from_polytope(simplex), f));
        REQUIRE(shadow.has_value());
        double dp = min_width(body_from_polytope(*shadow)).width;
        CHECK(dp >= d - 1e-8);
    }
}

TEST_CASE("projected inradius bound for the 3-simplex") {
    VPolytope simplex = regular_simplex(3, 1.0);
    auto frames = sample_grassmannian(3, 2, 1000, 5150);
    double bound = 1.0 / (3.0 * std::sqrt(2.0));
    double worst = 1e9;
    for (const Frame& f : frames) {
        auto shadow = as_polytope(project(body_from_polytope(simplex), f));
        REQUIRE(shadow.has_value());
        worst = std::min(worst, inradius(to_hrep(*shadow)).first);
    }
    CHECK(worst >= bound - 1e-6);
}

TEST_CASE("radii report chain 2r <= d <= D and d <= 2R") {
    Rng rng = derive_rng(4, "radii");
    for (int trial = 0; trial < 10; ++trial) {
        int dim = 2 + static_cast<int>(rng.below(3));
        VPolytope p = random_polytope(dim, dim + 6, rng);
        RadiiReport r = radii_report(p, 1000 + trial);
        CHECK(2.0 * r.inradius <= r.min_width + 1e-9);
        CHECK(r.min_width <= r.diameter + 1e-9);
        CHECK(r.min_width <= 2.0 * r.circumradius + 1e-9);
    }
}
