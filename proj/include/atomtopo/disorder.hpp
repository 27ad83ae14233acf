#pragma once

#include <cstdint>
#include <vector>

#include "atomtopo/physics_core.hpp"

namespace atomtopo {

struct FluctuationParams {
    double delta_a = 0.0;  // rms displacement per axis, in units of the spacing a
    int samples = 2000;
    std::uint64_t seed = 1;

    void validate() const;
};

struct AveragedGreens {
    Mat3c mean;
    Eigen::Matrix3d stderr_;  // per component, |.| of the complex standard error
    int accepted = 0;
    int rejected = 0;
};

// Monte Carlo average of G(r + u_i - u_j) with independent in-plane Gaussian
// displacements of each site. Samples closer than 0.01 lambda are redrawn.
// Sample s always uses the same random stream, so different r and delta_a
// share their random numbers.
AveragedGreens averaged_greens(const Vec2& r, double k, double a, const FluctuationParams& f);

struct FluctuationCurve {
    std::vector<double> delta;   // delta_a / a
    std::vector<double> gap;     // Gamma0
    std::vector<double> stderr_; // from batch means
    std::vector<double> rejection;
    int samples = 0;
    int grid_n = 0;
};

// Gap of the Bloch problem whose couplings within cutoff_cells * a are
// replaced by their fluctuation averages; farther couplings keep the bare
// (Ewald-summed) values.
FluctuationCurve gap_vs_fluctuation(const std::vector<double>& delta_grid, const PhysicalParams& params,
                                    const FluctuationParams& f, int grid_n = 24, double cutoff_cells = 12.0,
                                    int batches = 10);

}  // namespace atomtopo
