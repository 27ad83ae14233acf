#pragma once

#include <optional>
#include <vector>

#include "atomtopo/lattice.hpp"
#include "atomtopo/physics_core.hpp"

namespace atomtopo {

struct FiniteHamiltonian {
    MatXc H;  // 2N x 2N, basis (x_i, y_i), rotating frame of the drive
    double detuning = 0;
    double mu_b = 0;
    int atoms = 0;
};

// Diagonal -detuning - i/2 plus the Zeeman block on every atom; off-diagonal
// blocks 3 pi / k G(r_i - r_j). Throws DomainError for coincident atoms.
FiniteHamiltonian assemble_finite_hamiltonian(const FiniteLattice& lat, const PhysicalParams& params,
                                              double detuning);

// Largest eigenvalue of (H - H^dagger) / 2i; physical H gives <= 0.
double max_antihermitian_eigenvalue(const MatXc& H);

// Weights on the two circular transitions. Amplitude vectors on (x, y):
// sigma+ -> (-1, -i)/sqrt2, sigma- -> (1, -i)/sqrt2.
struct Polarization {
    cd plus{1.0, 0.0};
    cd minus{0.0, 0.0};

    static Polarization sigma_plus() { return {1.0, 0.0}; }
    static Polarization sigma_minus() { return {0.0, 1.0}; }
    static Polarization linear_x();
    static Polarization equal();  // both transitions with the same weight
    Vec2c amplitudes() const;     // normalized so |plus|^2 + |minus|^2 = 1
};

enum class Envelope { gaussian, sigmoid, constant };

struct DriveProtocol {
    int target = 0;
    double omega = 1.0;
    Polarization polarization;
    Envelope envelope = Envelope::gaussian;
    double t0 = 1.5;
    double tau = 0.3872983346207417;  // sqrt(0.15)
    std::optional<double> t_off;      // drive set to zero from here on

    void validate(int atoms) const;
};

// Gaussian: omega exp(-(t - t0)^2 / tau^2) before t0, omega after.
// Sigmoid: omega / (1 + exp(-(t - t0) / tau)).
cd drive_envelope(const DriveProtocol& proto, double t);

struct EvolveOptions {
    double dt = 5e-3;
    std::vector<double> snapshot_times;
    std::optional<VecXc> initial;  // same start for every drive; zero otherwise
    bool check_norm = true;
};

struct Trajectory {
    std::vector<double> times;  // after every step, starting with t = 0
    std::vector<double> norms;  // |c|^2 at those times
    std::vector<double> snapshot_times;
    std::vector<VecXc> snapshots;
    VecXc final_state;
    double max_norm_rate_off = 0;  // largest d|c|^2/dt over drive-off steps
};

// Classical RK4 for i dc/dt = H c + s(t), s = envelope / 2 x polarization on
// the target atom. Drives sharing H are advanced together as one block, so
// the dense matrix is streamed once per stage for all of them.
std::vector<Trajectory> evolve(const MatXc& H, const std::vector<DriveProtocol>& drives, double t_end,
                               const EvolveOptions& opt = {});
Trajectory evolve(const MatXc& H, const DriveProtocol& drive, double t_end, const EvolveOptions& opt = {});

// p_i = |c_x|^2 + |c_y|^2 per atom (equal to the sum over sigma+/-).
std::vector<double> excitation_probabilities(const VecXc& c);

// -Im <c|H|c> / <c|c>, amplitude convention.
double instantaneous_decay_rate(const MatXc& H, const VecXc& c);

// Least-squares fit of P(t) ~ exp(-2 gamma t) over [t_from, t_to]; returns
// gamma. Throws ConvergenceError if P grows anywhere in the window.
double fit_decay_rate(const Trajectory& traj, double t_from, double t_to);

// Transport diagnostics on a flake. Angles are measured about `centre`
// starting at the source and running in the propagation sense.
struct EdgeMetricOptions {
    int band_depth = 4;         // atoms within this graph distance of the boundary form the edge band
    int excluded_neighbours = 2;
    bool clockwise = true;      // propagation sense; clockwise for mu_b > 0
    double forward_extent_deg = 270.0;
    Vec2 centre{0.0, 0.0};
};

struct EdgeMetrics {
    std::vector<double> angle_deg;  // per atom, from the source in the propagation sense
    std::vector<char> band;         // edge band membership (excluded atoms removed)
    std::vector<char> excluded;
};

EdgeMetrics edge_metrics_layout(const FiniteLattice& lat, int source, const EdgeMetricOptions& opt = {});

// Fraction of the excitation (source and its nearest boundary atoms excluded)
// found on edge-band atoms within forward_extent_deg ahead of the source.
double forward_fraction(const std::vector<double>& p, const FiniteLattice& lat, int source,
                        const EdgeMetricOptions& opt = {});

// Mean probability per edge-band atom with angle in [lo, hi) degrees.
double window_density(const std::vector<double>& p, const EdgeMetrics& layout, double lo, double hi);

// Hexagonal bearded flake with an optional disk of atoms removed from the
// middle of the side facing 210 degrees, driven from the middle of the bottom side.
struct TransportSetup {
    FiniteLattice lattice;
    int source = 0;
    // angular windows (degrees from the source, clockwise) before/after the
    // first corner and before/after the defect
    std::pair<double, double> corner_before{12.0, 26.0}, corner_after{34.0, 48.0};
    std::pair<double, double> defect_before{34.0, 48.0}, defect_after{72.0, 86.0};
};

TransportSetup make_transport_setup(int rings, double a, double defect_radius);

struct TransportMetrics {
    double forward = 0;
    double corner = 0;
    double defect = 0;
};

TransportMetrics transport_metrics(const std::vector<double>& p, const TransportSetup& setup,
                                   const EdgeMetricOptions& opt = {});

struct LifetimeScan {
    std::vector<int> rings;
    std::vector<int> atoms;
    std::vector<int> in_gap_states;
    std::vector<double> mean_gamma;
    std::vector<double> edge_support;  // mean probability within depth 2 of the boundary
    double exponent = 0;               // slope of log mean_gamma vs log N
};

// For each bearded hexagon, averages gamma over eigenstates with Re E inside
// (gap_lo, gap_hi). Throws DomainError when a size has none.
LifetimeScan edge_lifetime_scaling(const std::vector<int>& rings, const PhysicalParams& params, double gap_lo,
                                   double gap_hi);

}  // namespace atomtopo
