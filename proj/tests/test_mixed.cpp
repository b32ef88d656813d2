#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "shadowcover/construct.hpp"
#include "shadowcover/mixed.hpp"

using namespace shadowcover;
using sctest::random_polytope;
using sctest::unit_cube;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("mixed volume: circumscribing identity V_{n-1,1}(P,P) = V(P)") {
    Rng rng = derive_rng(21, "mixedpp");
    for (int trial = 0; trial < 10; ++trial) {
        int dim = trial % 2 == 0 ? 3 : 4;
        VPolytope p = random_polytope(dim, dim + 6, rng);
        CHECK(mixed_vol_first(p, body_from_polytope(p)) ==
              Catch::Approx(volume(p)).epsilon(1e-9));
    }
}

TEST_CASE("mixed volume: cube against the unit ball gives S/3") {
    CHECK(mixed_vol_first(unit_cube(3), ball(zeros(3), 1.0)) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mixed volume: translation invariance in the second argument") {
    Rng rng = derive_rng(22, "mixedtr");
    VPolytope simplex = regular_simplex(3, 1.0);
    VPolytope k = random_polytope(3, 8, rng);
    double base = mixed_vol_first(simplex, body_from_polytope(k));
    for (int i = 0; i < 5; ++i) {
        Vec v = rng.gaussian_vec(3);
        CHECK(mixed_vol_first(simplex, translate_body(body_from_polytope(k), v)) ==
              Catch::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("mixed volume: Minkowski linearity in the second argument") {
    Rng rng = derive_rng(23, "mixedlin");
    VPolytope p = random_polytope(3, 9, rng);
    VPolytope l = random_polytope(3, 7, rng);
    VPolytope m = random_polytope(3, 7, rng);
    for (int i = 0; i < 5; ++i) {
        double a = 2.0 * rng.uniform(), b = 2.0 * rng.uniform();
        BodyExpr combo = minkowski({scale_body(a, body_from_polytope(l)), scale_body(b, body_from_polytope(m))});
        double lhs = mixed_vol_first(p, combo);
        double rhs = a * mixed_vol_first(p, body_from_polytope(l)) + b * mixed_vol_first(p, body_from_polytope(m));
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("mixed volume: monotone under inclusion") {
    Rng rng = derive_rng(24, "mixedmono");
    for (int trial = 0; trial < 5; ++trial) {
        VPolytope p = random_polytope(3, 9, rng);
        VPolytope l = random_polytope(3, 9, rng);
        VPolytope k = scale_polytope(l, 0.8);  // K subset L (0 interior after recentering)
        VPolytope lc = translate_polytope(l, scaled(centroid(l), -1.0));
        VPolytope kc = scale_polytope(lc, 0.8);
        CHECK(mixed_vol_first(p, body_from_polytope(kc)) <=
              mixed_vol_first(p, body_from_polytope(lc)) + 1e-9);
        (void)k;
    }
}

TEST_CASE("Minkowski mixed volume inequality with homothety equality case") {
    Rng rng = derive_rng(25, "mmv");
    for (int trial = 0; trial < 8; ++trial) {
        VPolytope k = random_polytope(3, 8, rng);
        VPolytope l = random_polytope(3, 8, rng);
        double v21 = mixed_vol_first(k, body_from_polytope(l));
        CHECK(v21 * v21 * v21 >= volume(k) * volume(k) * volume(l) * (1.0 - 1e-6));
    }
    VPolytope k = random_polytope(3, 8, rng);
    BodyExpr hom = translate_body(scale_body(1.7, body_from_polytope(k)), {0.2, -0.4, 0.9});
    double v21 = mixed_vol_first(k, hom);
    double lhs = std::pow(v21, 3.0);
    double rhs = volume(k) * volume(k) * (1.7 * 1.7 * 1.7 * volume(k));
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("intrinsic volumes in 3d: cube and regular tetrahedron") {
    IntrinsicVolumes cube = intrinsic_volumes_3d(unit_cube(3));
    CHECK(cube.values[0] == Catch::Approx(1.0));
    CHECK(cube.values[1] == Catch::Approx(3.0).epsilon(1e-10));
    CHECK(cube.values[2] == Catch::Approx(3.0).epsilon(1e-10));
    CHECK(cube.values[3] == Catch::Approx(1.0).epsilon(1e-10));

    IntrinsicVolumes tet = intrinsic_volumes_3d(regular_simplex(3, 1.0));
    double v1 = (3.0 / kPi) * (kPi - std::acos(1.0 / 3.0));
    CHECK(tet.values[1] == Catch::Approx(v1).epsilon(1e-10));
    CHECK(tet.values[2] == Catch::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));
    CHECK(tet.values[3] == Catch::Approx(1.0 / (6.0 * std::sqrt(2.0))).epsilon(1e-10));

    VPolytope flat{3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
    CHECK_THROWS_AS(intrinsic_volumes_3d(flat), degenerate_error);
}

TEST_CASE("steiner coefficients, exact 3d path") {
    SteinerCoeffs sc = steiner_exact_3d(unit_cube(3));
    CHECK(sc.coeffs[0] == Catch::Approx(4.0 * kPi / 3.0).epsilon(1e-10));
    CHECK(sc.coeffs[1] == Catch::Approx(3.0 * kPi).epsilon(1e-10));
    CHECK(sc.coeffs[2] == Catch::Approx(6.0).epsilon(1e-10));
    CHECK(sc.coeffs[3] == Catch::Approx(1.0).epsilon(1e-10));

    SteinerCoeffs s09 = steiner_exact_3d(scale_polytope(regular_simplex(3, 1.0), 0.9));
    CHECK(s09.coeffs[2] == Catch::Approx(0.81 * std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("cartesian product formula for intrinsic volumes") {
    IntrinsicVolumes pt{0, {1.0}};
    IntrinsicVolumes cube = intrinsic_volumes_3d(unit_cube(3));
    IntrinsicVolumes same = cartesian_intrinsic(cube, pt);
    for (int j = 0; j <= 3; ++j)
        CHECK(same.values[static_cast<std::size_t>(j)] == Catch::Approx(cube.values[static_cast<std::size_t>(j)]));

    IntrinsicVolumes square{2, {1.0, 2.0, 1.0}};
    IntrinsicVolumes segment{1, {1.0, 1.0}};
    IntrinsicVolumes prod = cartesian_intrinsic(square, segment);
    REQUIRE(prod.dim == 3);
    CHECK(prod.values[0] == Catch::Approx(1.0));
    CHECK(prod.values[1] == Catch::Approx(3.0));
    CHECK(prod.values[2] == Catch::Approx(3.0));
    CHECK(prod.values[3] == Catch::Approx(1.0));
}

TEST_CASE("cartesian expansion matches the embedded-pair leading term") {
    // V_m(Khat + eps C) = eps^{m-k-1} binom(n-k-1, m-k-1) V_{k+1}(Khat) + higher order
    const int n = 5, k = 2;
    IntrinsicVolumes khat = intrinsic_volumes_3d(regular_simplex(k + 1, 1.0));
    const int d = n - k - 1;
    for (int m = k + 1; m <= n; ++m) {
        double eps = 1e-3;
        IntrinsicVolumes cube{d, {}};
        cube.values = zeros(d + 1);
        for (int j = 0; j <= d; ++j) {
            double binom = 1.0;
            for (int t = 0; t < j; ++t) binom = binom * (d - t) / (t + 1);
            cube.values[static_cast<std::size_t>(j)] = binom * std::pow(eps, j);
        }
        IntrinsicVolumes vm = cartesian_intrinsic(khat, cube);
        double binom = 1.0;
        for (int t = 0; t < m - k - 1; ++t) binom = binom * (d - t) / (t + 1);
        double leading = std::pow(eps, m - k - 1) * binom * khat.values[static_cast<std::size_t>(k + 1)];
        CHECK(vm.values[static_cast<std::size_t>(m)] == Catch::Approx(leading).epsilon(5e-2));
    }
}

TEST_CASE("monte carlo volume: cube, simplex, and the K^0.9 body") {
    McVolume cube = volume_mc(body_from_polytope(unit_cube(3)), 1000000, 1);
    CHECK(std::fabs(cube.estimate - 1.0) <= std::max(3.0 * cube.std_error, 1e-9));

    McVolume simp = volume_mc(body_from_polytope(regular_simplex(3, 1.0)), 1000000, 2);
    CHECK(std::fabs(simp.estimate - 1.0 / (6.0 * std::sqrt(2.0))) <= 3.0 * simp.std_error);

    BodyExpr keps = k_epsilon_body(3, 0.9);
    VolumeEstimate exact = body_volume(keps);
    REQUIRE(exact.exact);
    CHECK(exact.value == Catch::Approx(0.1219025).epsilon(1e-4));
    McVolume mc = volume_mc(keps, 2000000, 3);
    CHECK(std::fabs(mc.estimate - exact.value) <= 3.0 * mc.std_error);
}

TEST_CASE("paired volume difference estimator") {
    BodyExpr big = body_from_polytope(unit_cube(3));
    BodyExpr small = body_from_polytope(scale_polytope(unit_cube(3), 0.9));
    McVolume d = volume_mc_diff(big, small, 500000, 4);
    CHECK(std::fabs(d.estimate - (1.0 - 0.729)) <= 3.0 * d.std_error);
    CHECK(d.std_error < 0.002);
}

TEST_CASE("steiner fit: unit ball binomial coefficients") {
    BodyExpr b = ball(zeros(3), 1.0);
    SteinerCoeffs sc = steiner_fit(b, {0.1, 0.3, 0.5, 0.8, 1.1, 1.5}, 400000, 5);
    double k3 = 4.0 * kPi / 3.0;
    Vec expect = {k3, 3.0 * k3, 3.0 * k3, k3};
    for (int j = 0; j <= 3; ++j) {
        double got = sc.coeffs[static_cast<std::size_t>(j)];
        double want = expect[static_cast<std::size_t>(j)];
        CHECK(std::fabs(got - want) <=
              std::max(0.05 * want, 4.0 * sc.coeff_sigma[static_cast<std::size_t>(j)] + 0.02 * want));
    }
    CHECK_THROWS_AS(steiner_fit(b, {0.5, 0.5, 0.5, 0.5}, 1000, 6), fit_error);
}

TEST_CASE("volume dispatch prefers exact paths") {
    VolumeEstimate pv = body_volume(body_from_polytope(unit_cube(4)));
    CHECK(pv.exact);
    CHECK(pv.value == Catch::Approx(1.0).epsilon(1e-10));
    VolumeEstimate bv = body_volume(ball(zeros(3), 0.5));
    CHECK(bv.exact);
    CHECK(bv.value == Catch::Approx(4.0 * kPi / 3.0 * 0.125).epsilon(1e-10));
    VolumeEstimate mc = body_volume(ball(zeros(4), 0.5), 500000, 11);
    CHECK_FALSE(mc.exact);
    CHECK(std::fabs(mc.value - kPi * kPi / 2.0 * 0.0625) <= 3.0 * mc.std_error);
}
