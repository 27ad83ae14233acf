#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "atomtopo/types.hpp"

namespace atomtopo {

struct LatticeGeometry {
    double a = 0;
    Vec2 a1, a2;  // Bravais vectors
    Vec2 b;       // sublattice 2 = sublattice 1 + b
    Vec2 g1, g2;  // reciprocal vectors, g_i . a_j = 2 pi delta_ij
    double cell_area = 0;
    Vec2 gamma, K, M;
};

LatticeGeometry build_geometry(double a);

// Looks up "G" (or "Gamma"), "K", "M" in the geometry.
Vec2 symmetry_point(const LatticeGeometry& geom, const std::string& name);

struct PathPoint {
    Vec2 k;
    double arc;
};

// n_per_segment intervals per segment, endpoints shared: S * n + 1 points.
std::vector<PathPoint> bz_path(const std::vector<Vec2>& points, int n_per_segment);

enum class BoundaryType { bearded, armchair, zigzag, hexagon_bearded };

BoundaryType parse_boundary(const std::string& name);
std::string to_string(BoundaryType t);

struct PeriodicAxis {
    Vec2 period;     // translation vector T of one stripe cell
    int cells = 0;   // W: number of cells in the periodic ring
    int images = 0;  // image count for truncated ring sums
};

struct FiniteLattice {
    double a = 0;
    std::vector<Vec2> positions;
    std::vector<int> sublattice;  // 1 or 2
    BoundaryType boundary = BoundaryType::hexagon_bearded;
    std::optional<PeriodicAxis> periodic;
    std::vector<int> cell;      // stripe cell index per atom (empty otherwise)
    int atoms_per_cell = 0;     // stripes only
    std::vector<Vec2> removed;  // positions carved out by carve_defect

    int size() const { return static_cast<int>(positions.size()); }
};

// rows: cells along the periodic direction; cols: atoms across the stripe
// (for armchair, rows counts atom columns along the axis, two per 3a cell).
FiniteLattice build_stripe(BoundaryType edge, int rows, int cols, int images, double a);

// Zigzag-shaped honeycomb flake whose degree-2 corners receive one extra
// outward atom, so every side ends in dangling (bearded) sites.
// N = 6 rings (rings + 1).
FiniteLattice build_hexagon_bearded(int rings, double a);

FiniteLattice carve_defect(const FiniteLattice& lat, const std::function<bool(const Vec2&)>& region);

// Nearest-neighbour count of every atom (bond length a).
std::vector<int> coordination(const FiniteLattice& lat);

// Graph distance from the boundary (atoms with fewer than three neighbours).
std::vector<int> boundary_depth(const FiniteLattice& lat);

// True when all atoms form one nearest-neighbour cluster.
bool is_connected(const FiniteLattice& lat);

double min_pair_distance(const FiniteLattice& lat);

// CSV: index,x,y,sublattice,is_boundary with lengths divided by lambda_.
void write_lattice_csv(std::ostream& os, const FiniteLattice& lat, double lambda_ = 1.0);

}  // namespace atomtopo
