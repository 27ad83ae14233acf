#include <cmath>

#include <doctest.h>

#include "atomtopo/physics_core.hpp"
#include "oracles.hpp"

using namespace atomtopo;
namespace mp = oracle::mp;

namespace {

const double k = 2 * pi;

bool close(cd a, cd b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE("in-plane Green's function matches references") {
    const Mat2c g1 = greens_in_plane(Vec2(1.0, 0.0), k);
    CHECK(close(g1(0, 0), mp::g_lambda_x_xx, 1e-12));
    CHECK(close(g1(1, 1), mp::g_lambda_x_yy, 1e-12));
    CHECK(std::abs(g1(0, 1)) < 1e-16);

    const Mat2c g2 = greens_in_plane(Vec2(0.05, 0.0), k);
    CHECK(close(g2(0, 0), mp::g_005x_xx, 1e-12));
    CHECK(close(g2(1, 1), mp::g_005x_yy, 1e-12));

    const Mat2c g3 = greens_in_plane(Vec2(0.03, 0.04), k);
    CHECK(close(g3(0, 0), mp::g_0304_xx, 1e-12));
    CHECK(close(g3(0, 1), mp::g_0304_xy, 1e-12));
    CHECK(close(g3(1, 0), mp::g_0304_xy, 1e-12));
    CHECK(close(g3(1, 1), mp::g_0304_yy, 1e-12));
}

TEST_CASE("3D Green's function matches references") {
    const Mat3c g = greens_free_space(Vec3(0.1, 0.2, 0.3), k);
    CHECK(close(g(0, 0), mp::g3_xx, 1e-12));
    CHECK(close(g(0, 2), mp::g3_xz, 1e-12));
    CHECK(close(g(2, 2), mp::g3_zz, 1e-12));
}

TEST_CASE("Green's function symmetries") {
    const Vec3 r(0.13, -0.07, 0.02);
    const Mat3c g = greens_free_space(r, k);
    CHECK((g - g.transpose()).norm() < 1e-14 * g.norm());
    CHECK((g - greens_free_space(-r, k)).norm() < 1e-14 * g.norm());

    const Vec2 r2(0.21, 0.37);
    const Mat3c full = greens_free_space(Vec3(r2.x(), r2.y(), 0.0), k);
    const Mat2c plane = greens_in_plane(r2, k);
    CHECK((full.topLeftCorner<2, 2>() - plane).norm() < 1e-14 * plane.norm());
    CHECK((plane - oracle::greens(r2, k)).norm() < 1e-13 * plane.norm());
}

TEST_CASE("zero separation is rejected") {
    CHECK_THROWS_AS(greens_in_plane(Vec2::Zero(), k), DomainError);
    CHECK_THROWS_AS(greens_free_space(Vec3::Zero(), k), DomainError);
}

TEST_CASE("regularized origin value") {
    CHECK(close(greens_regularized_origin_scalar(k, 0.1 / k), mp::g0_ka01, 1e-11));
    CHECK(close(greens_regularized_origin_scalar(k, 0.0025), mp::g0_aho0025, 1e-11));

    const Mat3c g0 = greens_regularized_origin(k, 0.0025);
    CHECK(std::abs(g0(0, 0) - g0(1, 1)) < 1e-12);
    CHECK(std::abs(g0(0, 1)) < 1e-15);

    // radiative part tends to the free-space value k / (6 pi)
    double prev = 1.0;
    for (double a_ho : {0.01, 0.003, 0.001, 0.0003}) {
        const double err = std::abs(greens_regularized_origin_scalar(k, a_ho).imag() + 1.0 / 3.0);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("interaction prefactor is 3/2 for lambda = 1") {
    CHECK(interaction_prefactor(k) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("Weyl component on the light circle raises") {
    CHECK_THROWS_AS(weyl_g_star(Vec2(k, 0.0), k, 0.0025), LightCircleError);
    CHECK_NOTHROW(weyl_g_star(Vec2(1.01 * k, 0.0), k, 0.0025));
}

TEST_CASE("parameter validation") {
    PhysicalParams p;
    CHECK_NOTHROW(p.validate());
    p.spacing = -0.05;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.lambda_ = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);

    CHECK_NOTHROW(RegularizationParams::for_spacing(0.05).validate(1.0));
    CHECK_THROWS_AS((RegularizationParams{0.0, 1e-12}.validate(1.0)), DomainError);
    CHECK_THROWS_AS((RegularizationParams{0.2, 1e-12}.validate(1.0)), DomainError);
    CHECK_THROWS_AS((RegularizationParams{0.001, 2.0}.validate(1.0)), DomainError);
}
