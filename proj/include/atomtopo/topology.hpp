#pragma once

#include <array>
#include <vector>

#include "atomtopo/bloch_bands.hpp"

namespace atomtopo {

struct ChernReport {
    int grid_n = 0;
    std::array<int, 4> chern{};           // individual bands (valid only if individual_valid)
    std::array<double, 4> chern_raw{};
    bool individual_valid = false;
    int sum_below = 0, sum_above = 0;     // grouped two-band values
    double raw_below = 0, raw_above = 0;
    double max_residual = 0;              // over grouped values (and individual ones when valid)
    double delta = 0;                     // indirect gap on the same grid
    std::vector<double> flux_below, flux_above;  // plaquette phases, row-major n x n
};

// Berry flux through each plaquette of an n x n periodic grid. frames[i*n+j]
// holds orthonormal columns spanning the band (or band group) at that point.
// Throws ConvergenceError if any link overlap falls below min_link.
std::vector<double> plaquette_fluxes(const std::vector<MatXc>& frames, int n, double min_link = 1e-8);

ChernReport chern_numbers(const PhysicalParams& params, const RegularizationParams& reg, int grid_n);

struct FieldScan {
    std::vector<double> mu_b;
    std::vector<double> delta;
    double delta_max = 0;
    double mu_at_max = 0;
};

FieldScan gap_vs_field(const PhysicalParams& base, const RegularizationParams& reg, const std::vector<double>& mu_b,
                       int grid_n);

// |3 pi / k G_xx(a x)|: dipolar coupling between parallel x dipoles separated along x.
double coupling_J(double a, double k);

struct SpacingScan {
    std::vector<double> a;
    std::vector<double> delta_max;
    std::vector<double> J;
    double slope_delta = 0;  // d log Delta_max / d log a
    double slope_J = 0;
};

// For each spacing the field grid spans [0, field_span * J(a)].
SpacingScan gap_scaling_vs_spacing(const std::vector<double>& spacings, int grid_n, int field_points = 41,
                                   double field_span = 0.8, double a_ho_ratio = 1.0 / 20.0);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace atomtopo
