#include "atomtopo/physics_core.hpp"

#include <cmath>
#include <sstream>

#include "atomtopo/special_functions.hpp"

namespace atomtopo {

void PhysicalParams::validate() const {
    if (!(lambda_ > 0) || !std::isfinite(lambda_)) throw DomainError("lambda must be positive");
    if (!(gamma0 > 0) || !std::isfinite(gamma0)) throw DomainError("gamma0 must be positive");
    if (!(spacing > 0) || !std::isfinite(spacing)) throw DomainError("spacing must be positive");
    if (!std::isfinite(mu_b)) throw DomainError("mu_b must be finite");
}

void RegularizationParams::validate(double lambda_) const {
    if (!(a_ho > 0)) throw DomainError("a_ho must be positive");
    if (a_ho > 0.1 * lambda_) throw DomainError("a_ho must be much smaller than lambda");
    if (!(g_cutoff > 0 && g_cutoff < 1)) throw DomainError("g_cutoff must lie in (0, 1)");
}

Mat3c greens_free_space(const Vec3& r, double k) {
    const double R = r.norm();
    if (!(R > 0) || !std::isfinite(R)) {
        throw DomainError("greens_free_space: zero separation (the contact delta term is excluded)");
    }
    const double kr = k * R;
    const cd pre = -std::exp(I * kr) / (4.0 * pi * R);
    const cd t1 = 1.0 + I / kr - 1.0 / (kr * kr);
    const cd t2 = -1.0 - 3.0 * I / kr + 3.0 / (kr * kr);
    const Eigen::Matrix3d rr = r * r.transpose() / (R * R);
    return pre * (t1 * Mat3c::Identity() + t2 * rr.cast<cd>());
}

Mat2c greens_in_plane(const Vec2& r, double k) {
    const double R2 = r.squaredNorm();
    if (!(R2 > 0)) {
        throw DomainError("greens_in_plane: zero separation (the contact delta term is excluded)");
    }
    const double R = std::sqrt(R2);
    const double kr = k * R;
    const double inv = 1.0 / kr;
    const cd pre = -cd(std::cos(kr), std::sin(kr)) / (4.0 * pi * R);
    const cd t1(1.0 - inv * inv, inv);
    const cd t2(-1.0 + 3.0 * inv * inv, -3.0 * inv);
    const double xx = r.x() * r.x() / R2, yy = r.y() * r.y() / R2, xy = r.x() * r.y() / R2;
    Mat2c g;
    g(0, 0) = pre * (t1 + t2 * xx);
    g(1, 1) = pre * (t1 + t2 * yy);
    g(0, 1) = g(1, 0) = pre * t2 * xy;
    return g;
}

cd greens_regularized_origin_scalar(double k, double a_ho) {
    if (!(a_ho > 0)) throw DomainError("greens_regularized_origin: a_ho must be positive");
    const double x = k * a_ho;
    const double s = x / std::sqrt(2.0);
    // (erfi(s) - i) exp(-s^2), written with the scaled erfi to avoid overflow
    const cd first = cd(erfi_scaled(s), -std::exp(-s * s));
    const double second = (-0.5 + x * x) / (std::sqrt(pi / 2.0) * x * x * x);
    return k / (6.0 * pi) * (first - second);
}

Mat3c greens_regularized_origin(double k, double a_ho) {
    return greens_regularized_origin_scalar(k, a_ho) * Mat3c::Identity();
}

double weyl_chi(double k, double a_ho) {
    // q^2 + Lambda^2 = k^2 for every q
    return std::exp(-a_ho * a_ho * k * k / 2.0) / (2.0 * pi * k * k);
}

Mat2c weyl_g_star_unscaled(const Vec2& q, double k, double a_ho) {
    const double q2 = q.squaredNorm();
    const double L2 = k * k - q2;
    if (std::abs(L2) <= 1e-12 * k * k) {
        std::ostringstream msg;
        msg << "weyl_g_star: |q| = " << std::sqrt(q2) << " lies on the light circle k = " << k
            << "; offset the sampling point";
        throw LightCircleError(msg.str());
    }
    // bracket = (-i + erfi(a_ho Lambda / sqrt 2)) / (2 Lambda)
    cd bracket;
    if (L2 > 0) {
        const double L = std::sqrt(L2);
        bracket = cd(erfi(a_ho * L / std::sqrt(2.0)), -1.0) / (2.0 * L);
    } else {
        const double kappa = std::sqrt(-L2);
        bracket = -std::erfc(a_ho * kappa / std::sqrt(2.0)) / (2.0 * kappa);
    }
    const double inv_k2 = 1.0 / (k * k);
    Mat2c g;
    g(0, 0) = (k * k - q.x() * q.x()) * inv_k2 * bracket;
    g(1, 1) = (k * k - q.y() * q.y()) * inv_k2 * bracket;
    g(0, 1) = g(1, 0) = -q.x() * q.y() * inv_k2 * bracket;
    return g;
}

Mat2c weyl_g_star(const Vec2& q, double k, double a_ho) {
    return std::exp(-a_ho * a_ho * k * k / 2.0) * weyl_g_star_unscaled(q, k, a_ho);
}

}  // namespace atomtopo
