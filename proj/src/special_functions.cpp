#include "atomtopo/special_functions.hpp"

#include <cmath>
#include <limits>

#include "atomtopo/types.hpp"

namespace atomtopo {

namespace {

constexpr double two_over_sqrt_pi = 1.12837916709551257390;

void require_finite(double x) {
    if (!std::isfinite(x)) throw DomainError("erf/erfi: non-finite argument");
}

// sum_n x^(2n+1) / (n! (2n+1)); every term is positive so there is no
// cancellation and the series is usable well beyond |x| = 3.
double erfi_series_sum(double x) {
    const double x2 = x * x;
    double term = x;  // x^(2n+1)/n!
    double sum = x;
    for (int n = 1; n < 2000; ++n) {
        term *= x2 / n;
        const double add = term / (2 * n + 1);
        sum += add;
        if (add < 1e-17 * sum) break;
    }
    return sum;
}

// D(x) ~ 1/(2x) sum (2n-1)!! / (2x^2)^n, truncated at the smallest term.
double dawson_asymptotic(double x) {
    const double y = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 200; ++n) {
        const double next = term * (2 * n - 1) * y;
        if (next > term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / (2.0 * x);
}

}  // namespace

double dawson(double x) {
    require_finite(x);
    const double ax = std::abs(x);
    double d;
    if (ax < 6.0) {
        d = std::exp(-ax * ax) * erfi_series_sum(ax);
    } else {
        d = dawson_asymptotic(ax);
    }
    return x < 0 ? -d : d;
}

double erfi_scaled(double x) { return two_over_sqrt_pi * dawson(x); }

double erfi(double x) {
    require_finite(x);
    const double ax = std::abs(x);
    if (ax < 3.0) return two_over_sqrt_pi * (x < 0 ? -1.0 : 1.0) * erfi_series_sum(ax);
    if (ax * ax > std::log(std::numeric_limits<double>::max())) {
        return x < 0 ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
    }
    return std::exp(ax * ax) * erfi_scaled(x);
}

ErfPair erf_pair(double x) {
    require_finite(x);
    return {std::erf(x), erfi(x), erfi_scaled(x)};
}

}  // namespace atomtopo
