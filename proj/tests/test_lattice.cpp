#include <cmath>
#include <set>
#include <sstream>

#include <doctest.h>

#include "atomtopo/lattice.hpp"

using namespace atomtopo;

TEST_CASE("reciprocal vectors are dual to the Bravais vectors") {
    const LatticeGeometry g = build_geometry(0.05);
    CHECK(g.a1.dot(g.g1) == doctest::Approx(2 * pi));
    CHECK(g.a2.dot(g.g2) == doctest::Approx(2 * pi));
    CHECK(std::abs(g.a1.dot(g.g2)) < 1e-12);
    CHECK(std::abs(g.a2.dot(g.g1)) < 1e-12);
    CHECK(g.b.norm() == doctest::Approx(0.05));
    CHECK(g.a1.norm() == doctest::Approx(0.05 * std::sqrt(3.0)));
    CHECK(g.cell_area == doctest::Approx(std::abs(g.a1.x() * g.a2.y() - g.a1.y() * g.a2.x())));
    CHECK(g.K.norm() == doctest::Approx(4 * pi / (3 * std::sqrt(3.0) * 0.05)));
    CHECK(g.M.norm() == doctest::Approx(2 * pi / (3 * 0.05)));
    CHECK_THROWS_AS(build_geometry(0.0), DomainError);
}

TEST_CASE("symmetry point lookup") {
    const LatticeGeometry g = build_geometry(0.05);
    CHECK((symmetry_point(g, "G") - g.gamma).norm() == 0);
    CHECK((symmetry_point(g, "Gamma") - g.gamma).norm() == 0);
    CHECK((symmetry_point(g, "K") - g.K).norm() == 0);
    CHECK_THROWS_AS(symmetry_point(g, "X"), DomainError);
}

TEST_CASE("path point counts") {
    const LatticeGeometry g = build_geometry(0.05);
    const auto path = bz_path({g.M, g.gamma, g.K}, 100);
    CHECK(path.size() == 201);
    CHECK(path.front().arc == 0);
    CHECK(path.back().arc == doctest::Approx(g.M.norm() + g.K.norm()));
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i].arc >= path[i - 1].arc);

    const auto degenerate = bz_path({g.gamma, g.gamma}, 5);
    CHECK(degenerate.size() == 6);
    CHECK(degenerate.back().arc == 0);
    CHECK_THROWS_AS(bz_path({}, 10), DomainError);
    CHECK_THROWS_AS(bz_path({g.M, g.K}, 1), DomainError);
}

TEST_CASE("bearded hexagon flake") {
    for (int n : {1, 2, 5, 14}) {
        const FiniteLattice lat = build_hexagon_bearded(n, 0.05);
        CHECK(lat.size() == 6 * n * (n + 1));
        CHECK(is_connected(lat));
        CHECK(min_pair_distance(lat) == doctest::Approx(0.05));
        int s1 = 0;
        for (int s : lat.sublattice) s1 += s == 1;
        CHECK(2 * s1 == lat.size());
    }
    const FiniteLattice lat = build_hexagon_bearded(4, 0.05);
    const auto coord = coordination(lat);
    const auto depth = boundary_depth(lat);
    int dangling = 0;
    for (int i = 0; i < lat.size(); ++i) {
        CHECK(coord[i] >= 1);
        CHECK(coord[i] <= 3);
        CHECK((coord[i] < 3) == (depth[i] == 0));
        dangling += coord[i] == 1;
    }
    // every side ends in dangling atoms
    CHECK(dangling == 6 * 4);
    CHECK_THROWS_AS(build_hexagon_bearded(0, 0.05), DomainError);
}

TEST_CASE("carving removes a disk and records it") {
    const FiniteLattice lat = build_hexagon_bearded(6, 0.05);
    const FiniteLattice cut = carve_defect(lat, [](const Vec2& p) { return p.norm() < 0.06; });
    CHECK(cut.size() + static_cast<int>(cut.removed.size()) == lat.size());
    CHECK(!cut.removed.empty());
    for (const Vec2& p : cut.positions) CHECK(p.norm() >= 0.06);
    CHECK_THROWS_AS(carve_defect(lat, [](const Vec2&) { return true; }), DomainError);
}

TEST_CASE("stripes") {
    const FiniteLattice bearded = build_stripe(BoundaryType::bearded, 8, 10, 3, 0.05);
    CHECK(bearded.atoms_per_cell == 10);
    CHECK(bearded.size() == 80);
    REQUIRE(bearded.periodic);
    CHECK(bearded.periodic->cells == 8);
    CHECK(bearded.periodic->period.norm() == doctest::Approx(std::sqrt(3.0) * 0.05));
    CHECK(min_pair_distance(bearded) == doctest::Approx(0.05));

    const FiniteLattice arm = build_stripe(BoundaryType::armchair, 8, 9, 3, 0.05);
    CHECK(arm.atoms_per_cell == 18);
    CHECK(arm.periodic->cells == 4);
    CHECK(arm.periodic->period.norm() == doctest::Approx(0.15));
    CHECK(min_pair_distance(arm) == doctest::Approx(0.05));

    const FiniteLattice zig = build_stripe(BoundaryType::zigzag, 8, 9, 3, 0.05);
    CHECK(zig.atoms_per_cell == 9);

    CHECK_THROWS_AS(build_stripe(BoundaryType::bearded, 8, 9, 3, 0.05), DomainError);
    CHECK_THROWS_AS(build_stripe(BoundaryType::armchair, 7, 9, 3, 0.05), DomainError);
    CHECK_THROWS_AS(build_stripe(BoundaryType::bearded, 3, 10, 3, 0.05), DomainError);
    CHECK_THROWS_AS(build_stripe(BoundaryType::hexagon_bearded, 8, 10, 3, 0.05), DomainError);
}

TEST_CASE("boundary names round-trip") {
    for (auto t : {BoundaryType::bearded, BoundaryType::armchair, BoundaryType::zigzag})
        CHECK(parse_boundary(to_string(t)) == t);
    CHECK_THROWS_AS(parse_boundary("chiral"), DomainError);
}

TEST_CASE("lattice CSV") {
    const FiniteLattice lat = build_hexagon_bearded(1, 0.05);
    std::ostringstream os;
    write_lattice_csv(os, lat);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "index,x,y,sublattice,is_boundary");
    int rows = 0;
    while (std::getline(is, line)) rows += !line.empty();
    CHECK(rows == lat.size());
}
