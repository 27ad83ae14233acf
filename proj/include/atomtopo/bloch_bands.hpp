#pragma once

#include <array>
#include <vector>

#include "atomtopo/lattice.hpp"
#include "atomtopo/physics_core.hpp"

namespace atomtopo {

enum class Offset { zero, plus_b, minus_b };

struct LatticeSums {
    Mat2c s0;  // sum over R != 0 of e^{ik.R} G(R)
    Mat2c sp;  // sum over R of e^{ik.R} G(R + b)
    Mat2c sm;  // sum over R of e^{ik.R} G(R - b)
    int shells = 0;
    int terms = 0;
};

struct SumOptions {
    // Drop the radiative pieces (the -i of propagating Weyl terms and the
    // imaginary part of the regularized origin value). What remains is the
    // coherent exchange part, which makes the Bloch matrix Hermitian.
    bool coherent_only = false;
    int max_shells = 4000;
};

// Reciprocal-space Ewald-type evaluation of the three lattice sums.
LatticeSums lattice_sums(const Vec2& kb, const LatticeGeometry& geom, double k, const RegularizationParams& reg,
                         const SumOptions& opt = {});

Mat2c lattice_sum(const Vec2& kb, Offset offset, const LatticeGeometry& geom, double k,
                  const RegularizationParams& reg);

// 4x4 matrix in the basis (x1, y1, x2, y2), energies in Gamma0.
Mat4c bloch_matrix_from_sums(const LatticeSums& s, double k, double mu_b, bool include_self_decay = true);
Mat4c zeeman_block(double mu_b);
Mat4c assemble_bloch_matrix(const Vec2& kb, const PhysicalParams& params, const RegularizationParams& reg);

struct BandPoint {
    Vec2 k;
    double arc = 0;
    std::array<cd, 4> E;    // sorted by real part
    Mat4c vectors;          // matching right eigenvectors (columns)
    std::array<int, 4> branch{0, 1, 2, 3};  // continuity label of each sorted band
    bool in_light_cone = false;
};

BandPoint solve_bloch_point(const Vec2& kb, const PhysicalParams& params, const RegularizationParams& reg);

// Moves k off the light circle |k| = 2 pi / lambda by 1e-6 k when needed.
Vec2 nudge_off_light_circle(const Vec2& kb, double k);

std::vector<BandPoint> band_structure(const std::vector<PathPoint>& path, const PhysicalParams& params,
                                      const RegularizationParams& reg, bool track_continuity = true);

struct GapReport {
    double delta = 0;  // min Re E3 - max Re E2 over the grid
    double lower_max = 0, upper_min = 0;
    Vec2 k_lower_max, k_upper_min;
    bool closed = true;
    int grid_n = 0;
};

// Field-independent part of the Bloch matrix on a uniform n x n grid of the
// reciprocal cell; field scans only add the Zeeman block.
class InteractionGrid {
public:
    InteractionGrid(const PhysicalParams& params, const RegularizationParams& reg, int grid_n);

    int n() const { return n_; }
    const Vec2& k_at(int i, int j) const { return ks_[i * n_ + j]; }
    const Mat4c& matrix_at(int i, int j) const { return ms_[i * n_ + j]; }
    // Adds a correction block (same for all points) given per grid point.
    void add(int i, int j, const Mat4c& delta) { ms_[i * n_ + j] += delta; }
    GapReport gap(double mu_b) const;

private:
    int n_;
    std::vector<Vec2> ks_;
    std::vector<Mat4c> ms_;
};

GapReport band_gap(const PhysicalParams& params, const RegularizationParams& reg, int grid_n);

}  // namespace atomtopo
