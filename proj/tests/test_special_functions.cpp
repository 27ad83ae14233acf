#include <cmath>
#include <limits>

#include <doctest.h>

#include "atomtopo/special_functions.hpp"
#include "atomtopo/types.hpp"
#include "oracles.hpp"

using namespace atomtopo;
namespace mp = oracle::mp;

TEST_CASE("erf and erfi match high-precision references") {
    CHECK(erf_pair(1.0).erf == doctest::Approx(mp::erf_1).epsilon(1e-14));
    CHECK(erfi(1.0) == doctest::Approx(mp::erfi_1).epsilon(1e-13));
    CHECK(erfi(0.3) == doctest::Approx(mp::erfi_03).epsilon(1e-13));
    CHECK(erfi(3.5) == doctest::Approx(mp::erfi_35).epsilon(1e-12));
    CHECK(erfi(5.0) == doctest::Approx(mp::erfi_5).epsilon(1e-12));
}

TEST_CASE("dawson matches references across its regimes") {
    CHECK(dawson(0.5) == doctest::Approx(mp::dawson_05).epsilon(1e-13));
    CHECK(dawson(2.5) == doctest::Approx(mp::dawson_25).epsilon(1e-13));
    CHECK(dawson(10.0) == doctest::Approx(mp::dawson_10).epsilon(1e-13));
}

TEST_CASE("erfi overflows to infinity while the scaled form stays finite") {
    const ErfPair p = erf_pair(30.0);
    CHECK(std::isinf(p.erfi));
    CHECK(p.erfi > 0);
    CHECK(std::isinf(erfi(-30.0)));
    CHECK(erfi(-30.0) < 0);
    CHECK(std::isfinite(p.erfi_scaled));
    CHECK(p.erfi_scaled == doctest::Approx(mp::erfi_scaled_30).epsilon(1e-12));
    CHECK(p.erf == 1.0);
}

TEST_CASE("erf and erfi are odd") {
    for (double x : {0.01, 0.7, 2.0, 4.5, 12.0}) {
        CHECK(erf_pair(-x).erf == doctest::Approx(-erf_pair(x).erf).epsilon(1e-15));
        CHECK(erfi(-x) == doctest::Approx(-erfi(x)).epsilon(1e-15));
        CHECK(dawson(-x) == doctest::Approx(-dawson(x)).epsilon(1e-15));
    }
    CHECK(erfi(0.0) == 0.0);
}

TEST_CASE("derivative of erfi is 2 exp(x^2) / sqrt(pi)") {
    for (double x : {0.2, 1.1, 2.7, 4.0}) {
        const double h = 1e-5 * std::max(1.0, x);
        const double num = (erfi(x + h) - erfi(x - h)) / (2 * h);
        CHECK(num == doctest::Approx(2 * std::exp(x * x) / std::sqrt(pi)).epsilon(1e-7));
    }
}

TEST_CASE("non-finite arguments are rejected") {
    CHECK_THROWS_AS(erf_pair(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(erf_pair(std::numeric_limits<double>::infinity()), DomainError);
}
