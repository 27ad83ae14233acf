#pragma once

namespace atomtopo {

// Only real arguments are needed: Lambda(q) is either real (|q| < k) or
// purely imaginary (|q| > k), and erfi(i y) = i erf(y).
struct ErfPair {
    double erf;
    double erfi;         // +-inf once exp(x^2) overflows (|x| > ~26.6)
    double erfi_scaled;  // exp(-x^2) erfi(x), always finite
};

ErfPair erf_pair(double x);

double erfi(double x);
double erfi_scaled(double x);
double dawson(double x);

}  // namespace atomtopo
