#pragma once

#include "atomtopo/types.hpp"

namespace atomtopo {

// Energies are detunings from the atomic resonance in units of Gamma0.
// Lengths are in units of lambda unless lambda_ is changed; every routine
// only ever sees k = 2 pi / lambda_ and positions in the same unit.
struct PhysicalParams {
    double lambda_ = 1.0;
    double gamma0 = 1.0;
    double mu_b = 0.0;
    double spacing = 0.05;  // in units of lambda

    double k() const { return 2.0 * pi / lambda_; }
    double a() const { return spacing * lambda_; }
    void validate() const;
};

struct RegularizationParams {
    double a_ho = 0.0;        // Gaussian cutoff length, same unit as lambda_
    double g_cutoff = 1e-12;  // relative shell magnitude that stops the G sum

    // a_ho = a / 20, the default used everywhere.
    static RegularizationParams for_spacing(double a) { return {a / 20.0, 1e-12}; }
    void validate(double lambda_) const;
};

// 3 pi Gamma0 c / omega_A in Gamma0 units: multiplies G to give an energy.
inline double interaction_prefactor(double k) { return 3.0 * pi / k; }

// Free-space dyadic Green's function without the contact term.
Mat3c greens_free_space(const Vec3& r, double k);

// In-plane (x, y) block for an in-plane displacement; hot path for lattices.
Mat2c greens_in_plane(const Vec2& r, double k);

// Diagonal regularized value at the source point.
Mat3c greens_regularized_origin(double k, double a_ho);
cd greens_regularized_origin_scalar(double k, double a_ho);

// Regularized Weyl component g*(q; z = 0).
Mat2c weyl_g_star(const Vec2& q, double k, double a_ho);

// exp(k^2 a_ho^2 / 2) g*(q): the chi(q) prefactor is q independent and is
// cancelled analytically, which keeps the evanescent terms well scaled.
Mat2c weyl_g_star_unscaled(const Vec2& q, double k, double a_ho);

// chi(q) of the Weyl decomposition; independent of q.
double weyl_chi(double k, double a_ho);

}  // namespace atomtopo
