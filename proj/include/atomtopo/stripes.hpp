#pragma once

#include <optional>
#include <vector>

#include "atomtopo/lattice.hpp"
#include "atomtopo/physics_core.hpp"

namespace atomtopo {

enum class EdgeSide { top, bottom, bulk };

const char* to_string(EdgeSide s);

struct StripeOptions {
    // damped: Gaussian-damped image sums e^{-eps x^2} over the infinite
    // stripe, Richardson-extrapolated in eps over a halving ladder.
    // truncated: sharp ring sum over |n| <= images.
    enum class Summation { damped, truncated } summation = Summation::damped;
    std::vector<double> eps_ladder{0.08, 0.04, 0.02};  // 1/lambda^2, each half the previous
    double tail_factor = 6.5;  // image cutoff |x| < tail_factor / sqrt(eps_min)
    bool block_circulant = true;
    bool keep_vectors = false;
    // In-gap window (lo, hi) in Gamma0. Taken from the bulk bands when unset.
    std::optional<std::pair<double, double>> gap;
    int gap_grid = 24;
};

struct StripeMode {
    int m = 0;
    double k = 0;  // quasi-momentum along the periodic axis
    cd E;
    double gamma = 0;
    EdgeSide side = EdgeSide::bulk;
    double ratio = 1;  // top / bottom probability on the outer four rows
    bool on_light_line = false;
    bool in_gap = false;
};

struct StripeSpectrum {
    std::vector<StripeMode> modes;
    std::vector<VecXc> vectors;  // per mode, cell amplitudes (block path) or full ring (full path)
    double period = 0;
    int cells = 0;
    int atoms_per_cell = 0;
    double gap_lo = 0, gap_hi = 0;
    double k_light = 0;
};

StripeSpectrum stripe_spectrum(const FiniteLattice& lat, const PhysicalParams& params, const StripeOptions& opt = {});

// Bloch matrix of one stripe cell at quasi-momentum k (2 n_c x 2 n_c).
MatXc stripe_bloch_matrix(const FiniteLattice& lat, const PhysicalParams& params, double k,
                          const StripeOptions& opt = {});

// Full 2N x 2N ring matrix with the same periodized couplings.
MatXc stripe_ring_matrix(const FiniteLattice& lat, const PhysicalParams& params, const StripeOptions& opt = {});

// Weight of the probability on the four outermost rows. The vector may hold
// one cell (2 n_c entries) or the full ring (2 N entries).
EdgeSide classify_edge_state(const VecXc& v, const FiniteLattice& lat, double* ratio = nullptr, int rows = 4,
                             double threshold = 15.0);

struct BranchCrossing {
    double probe = 0;  // energy
    int m_from = 0, m_to = 0;
    double k_from = 0, k_to = 0;
    double e_from = 0, e_to = 0;
    double gamma_from = 0, gamma_to = 0;
    double velocity = 0;  // dE/dk, Gamma0 lambda (length unit of the lattice)
};

struct EdgeBranchReport {
    EdgeSide side = EdgeSide::bulk;
    std::vector<double> probes;
    std::vector<int> crossings;              // per probe
    std::vector<BranchCrossing> links;       // every crossing link found
    std::vector<double> branch_velocities;   // along the chain through the mid-gap crossing
};

// Chains in-gap states of one edge across neighbouring k and counts how
// often they cross the probe energies (fractions of the gap).
EdgeBranchReport analyze_edge_branches(const StripeSpectrum& spec, EdgeSide side,
                                       const std::vector<double>& probe_fractions = {0.3, 0.5, 0.7});

// Finite-difference group velocities along the chiral branch, in Gamma0 lambda.
std::vector<double> edge_group_velocity(const StripeSpectrum& spec, EdgeSide side);

}  // namespace atomtopo
