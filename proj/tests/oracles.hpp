#pragma once

// Independent reference implementations used only by tests and the
// acceptance report. They share no summation code with the library.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Mat2c = Eigen::Matrix2cd;

inline constexpr double pi = 3.14159265358979323846;

// Values below were computed with mpmath at 30 digits.
namespace mp {
inline constexpr double erf_1 = 0.842700792949714869341220635083;
inline constexpr double erfi_1 = 1.65042575879754287602533772956;
inline constexpr double erfi_03 = 0.34894933875893616670067503692;
inline constexpr double erfi_35 = 35282.2877151716853101579972164;
inline constexpr double erfi_5 = 8298273880.67680351614622319075;
inline constexpr double dawson_05 = 0.42443638350202229593404235249;
inline constexpr double dawson_25 = 0.223083722167435481126917318251;
inline constexpr double dawson_10 = 0.0502538471875985280327484198607;
inline constexpr double erfi_scaled_30 = 0.0188167848686607277905022059688;

// G(r) for k = 2 pi, lambda = 1
inline const cd g_lambda_x_xx{-0.00403144180414993614805275658606, 0.0253302959105844428609698658024};
inline const cd g_lambda_x_yy{-0.0775617506438726998104155033932, -0.0126651479552922214304849329012};
inline const cd g_005x_xx{-33.8040287467786134650740453043, -0.330055040349103679501277699526};
inline const cd g_005x_yy{15.3883609161079949841687795742, -0.326788301367181142204852315235};
inline const cd g_0304_xx{-2.32089936253118428669653701496, -0.327964327400673256544773870424};
inline const cd g_0304_xy{-23.6123470381855792226097453513, -0.00156803471132281770473030878252};
inline const cd g_0304_yy{-16.0947684681394416777253280568, -0.328879014315611567061429510609};
// r = (0.1, 0.2, 0.3)
inline const cd g3_xx{0.168168609601663185713454894918, -0.0688876703961816193633604811184};
inline const cd g3_xz{-0.0559941786706558763653440230989, -0.0260956434897126651390033577736};
inline const cd g3_zz{0.0188507998132475326742115014148, -0.138476053035415385019596033879};
// regularized origin value
inline const cd g0_ka01{130.347652606375990445886978466, -0.331670826397560770933407121379};  // k a_ho = 0.1
inline const cd g0_aho0025{34293.7410563902252158033357327, -0.333292212518252892496416471652};
}  // namespace mp

// Direct transcription of the dyadic Green's function, 2x2 in-plane block.
inline Mat2c greens(const Vec2& r, double k) {
    const double R = r.norm(), kr = k * R;
    const cd pre = -std::exp(cd(0, kr)) / (4 * pi * R);
    const cd t1 = 1.0 + cd(0, 1) / kr - 1.0 / (kr * kr);
    const cd t2 = -1.0 - cd(0, 3) / kr + 3.0 / (kr * kr);
    Mat2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = pre * ((i == j ? t1 : cd(0)) + t2 * r[i] * r[j] / (R * R));
    return g;
}

// Coefficients extrapolating f(eps) to eps = 0 from a halving ladder,
// assuming an expansion in integer powers of eps (solved as a Vandermonde system).
inline std::vector<double> extrapolation_weights(const std::vector<double>& eps) {
    const int L = static_cast<int>(eps.size());
    Eigen::MatrixXd V(L, L);
    for (int i = 0; i < L; ++i)
        for (int p = 0; p < L; ++p) V(i, p) = std::pow(eps[i], p);
    const Eigen::MatrixXd inv = V.inverse();
    std::vector<double> w(L);
    for (int i = 0; i < L; ++i) w[i] = inv(0, i);
    return w;
}

// sum over R (R + offset != 0) of e^{i kb.R} G(R + offset) e^{-eps |R|^2}, in real space.
inline Mat2c damped_sum(const Vec2& kb, const Vec2& offset, const Vec2& a1, const Vec2& a2, double k, double eps,
                        double tail = 6.0) {
    const double rmax = tail / std::sqrt(eps);
    const double hmin = std::min(a1.norm(), a2.norm()) * 0.5;
    const int L = static_cast<int>(rmax / hmin) + 3;
    Mat2c s = Mat2c::Zero();
    for (int i = -L; i <= L; ++i) {
        for (int j = -L; j <= L; ++j) {
            const Vec2 R = i * a1 + j * a2;
            const double r2 = R.squaredNorm();
            if (r2 >= rmax * rmax) continue;
            const Vec2 d = R + offset;
            if (d.norm() < 1e-12) continue;
            s += greens(d, k) * std::exp(cd(-eps * r2, kb.dot(R)));
        }
    }
    return s;
}

// Extrapolated real-space lattice sum. eps0 sets the coarsest damping;
// keep sqrt(eps0) well below the distance of kb (mod G) from the light circle.
inline Mat2c lattice_sum(const Vec2& kb, const Vec2& offset, const Vec2& a1, const Vec2& a2, double k, double eps0,
                         int levels) {
    std::vector<double> eps(levels);
    for (int l = 0; l < levels; ++l) eps[l] = eps0 / std::pow(2.0, l);
    const std::vector<double> w = extrapolation_weights(eps);
    Mat2c s = Mat2c::Zero();
    for (int l = 0; l < levels; ++l) s += w[l] * damped_sum(kb, offset, a1, a2, k, eps[l]);
    return s;
}

// Plain Monte Carlo average of the 3x3 G(r + u_i - u_j) with per-axis
// in-plane Gaussian displacements, redrawing pairs closer than r_min.
struct SampledGreens {
    Eigen::Matrix3cd mean;
    Eigen::Matrix3d stderr_;
};

inline Eigen::Matrix3cd greens3(const Eigen::Vector3d& r, double k) {
    const double R = r.norm(), kr = k * R;
    const cd pre = -std::exp(cd(0, kr)) / (4 * pi * R);
    const cd t1 = 1.0 + cd(0, 1) / kr - 1.0 / (kr * kr);
    const cd t2 = -1.0 - cd(0, 3) / kr + 3.0 / (kr * kr);
    return pre * (t1 * Eigen::Matrix3cd::Identity() + t2 * (r * r.transpose()).cast<cd>() / (R * R));
}

inline SampledGreens sample_greens(const Vec2& r, double k, double sigma, int samples, std::uint64_t seed,
                                   double r_min = 0.01) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, sigma);
    Eigen::Matrix3cd sum = Eigen::Matrix3cd::Zero();
    Eigen::Matrix3d sq = Eigen::Matrix3d::Zero();
    for (int s = 0; s < samples; ++s) {
        Eigen::Vector3d d;
        do {
            d = Eigen::Vector3d(r.x() + n(rng) - n(rng), r.y() + n(rng) - n(rng), 0.0);
        } while (d.norm() < r_min);
        const Eigen::Matrix3cd g = greens3(d, k);
        sum += g;
        sq += g.cwiseAbs2();
    }
    SampledGreens out;
    out.mean = sum / samples;
    const Eigen::Matrix3d var = (sq / samples - out.mean.cwiseAbs2()) * samples / (samples - 1.0);
    out.stderr_ = (var / samples).cwiseSqrt();
    return out;
}

}  // namespace oracle
