#include "atomtopo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

namespace atomtopo {

LatticeGeometry build_geometry(double a) {
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("build_geometry: spacing must be positive");
    LatticeGeometry g;
    const double s3 = std::sqrt(3.0);
    g.a = a;
    g.a1 = Vec2(s3 * a, 0.0);
    g.a2 = Vec2(s3 * a / 2.0, 1.5 * a);
    g.b = Vec2(0.0, a);
    Eigen::Matrix2d A;
    A.row(0) = g.a1.transpose();
    A.row(1) = g.a2.transpose();
    const Eigen::Matrix2d Gm = 2.0 * pi * A.inverse().transpose();
    g.g1 = Gm.row(0).transpose();
    g.g2 = Gm.row(1).transpose();
    g.cell_area = std::abs(g.a1.x() * g.a2.y() - g.a1.y() * g.a2.x());
    g.gamma = Vec2::Zero();
    g.K = (2.0 * g.g1 + g.g2) / 3.0;
    g.M = g.g1 / 2.0;
    return g;
}

Vec2 symmetry_point(const LatticeGeometry& geom, const std::string& name) {
    if (name == "G" || name == "Gamma" || name == "gamma") return geom.gamma;
    if (name == "K") return geom.K;
    if (name == "M") return geom.M;
    throw DomainError("unknown symmetry point '" + name + "' (allowed: G, K, M)");
}

std::vector<PathPoint> bz_path(const std::vector<Vec2>& points, int n_per_segment) {
    if (points.empty()) throw DomainError("bz_path: empty point list");
    if (n_per_segment < 2) throw DomainError("bz_path: n_per_segment must be at least 2");
    std::vector<PathPoint> out;
    out.push_back({points.front(), 0.0});
    double arc = 0.0;
    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        const Vec2 p0 = points[s], p1 = points[s + 1];
        const double len = (p1 - p0).norm();
        for (int i = 1; i <= n_per_segment; ++i) {
            const double t = static_cast<double>(i) / n_per_segment;
            out.push_back({p0 + t * (p1 - p0), arc + t * len});
        }
        arc += len;
    }
    if (points.size() == 1) {
        for (int i = 1; i < n_per_segment; ++i) out.push_back({points.front(), 0.0});
    }
    return out;
}

BoundaryType parse_boundary(const std::string& name) {
    if (name == "bearded") return BoundaryType::bearded;
    if (name == "armchair") return BoundaryType::armchair;
    if (name == "zigzag") return BoundaryType::zigzag;
    if (name == "hexagon" || name == "hexagon-bearded") return BoundaryType::hexagon_bearded;
    throw DomainError("unknown edge type '" + name + "' (allowed: bearded, armchair, zigzag)");
}

std::string to_string(BoundaryType t) {
    switch (t) {
        case BoundaryType::bearded: return "bearded";
        case BoundaryType::armchair: return "armchair";
        case BoundaryType::zigzag: return "zigzag";
        case BoundaryType::hexagon_bearded: return "hexagon-bearded";
    }
    return "?";
}

FiniteLattice build_stripe(BoundaryType edge, int rows, int cols, int images, double a) {
    if (rows < 4 || cols < 4) throw DomainError("build_stripe: rows and cols must be at least 4");
    if (!(a > 0)) throw DomainError("build_stripe: spacing must be positive");
    const double s3 = std::sqrt(3.0);
    FiniteLattice lat;
    lat.a = a;
    lat.boundary = edge;
    std::vector<Vec2> cell_pos;
    std::vector<int> cell_sub;
    Vec2 T;
    int W = 0;

    if (edge == BoundaryType::bearded || edge == BoundaryType::zigzag) {
        // Columns along y built from vertical bonds; a zigzag bottom is made
        // by dropping the lowest atom, which leaves a bearded top when cols is odd.
        T = Vec2(s3 * a, 0.0);
        W = rows;
        if (edge == BoundaryType::bearded && cols % 2 != 0) {
            throw DomainError("build_stripe: bearded stripes need an even atom count across");
        }
        const int first = edge == BoundaryType::bearded ? 0 : 1;
        for (int idx = first; idx < first + cols; ++idx) {
            const int n = idx / 2, s = idx % 2;
            const double x = std::fmod(n * s3 * a / 2.0, s3 * a);
            const double y = 1.5 * a * n + (s ? a : 0.0);
            cell_pos.emplace_back(x, y);
            cell_sub.push_back(s + 1);
        }
    } else if (edge == BoundaryType::armchair) {
        // Built with the period along y, then rotated so the periodic axis is x.
        if (rows % 2 != 0) throw DomainError("build_stripe: armchair stripes need an even row count");
        W = rows / 2;
        T = Vec2(3.0 * a, 0.0);
        for (int m = 0; m < cols; ++m) {
            const double x = m * s3 * a / 2.0;
            const double y0 = (m % 2 == 0) ? 0.0 : 1.5 * a;
            cell_pos.emplace_back(y0, x);
            cell_sub.push_back(1);
            cell_pos.emplace_back(y0 + a, x);
            cell_sub.push_back(2);
        }
    } else {
        throw DomainError("build_stripe: edge type must be bearded, armchair or zigzag");
    }

    lat.atoms_per_cell = static_cast<int>(cell_pos.size());
    for (int c = 0; c < W; ++c) {
        for (int i = 0; i < lat.atoms_per_cell; ++i) {
            lat.positions.push_back(cell_pos[i] + c * T);
            lat.sublattice.push_back(cell_sub[i]);
            lat.cell.push_back(c);
        }
    }
    lat.periodic = PeriodicAxis{T, W, images < 0 ? W / 2 : images};
    return lat;
}

namespace {

struct Key {
    long long x, y;
    bool operator<(const Key& o) const { return x != o.x ? x < o.x : y < o.y; }
};

Key key_of(const Vec2& p, double a) {
    const double q = a * 1e-4;
    return {std::llround(p.x() / q), std::llround(p.y() / q)};
}

// Uniform grid hash for nearest-neighbour queries.
class NeighbourGrid {
public:
    NeighbourGrid(const std::vector<Vec2>& pts, double cell) : pts_(pts), cell_(cell) {
        for (std::size_t i = 0; i < pts.size(); ++i) map_[hash(cell_of(pts[i]))].push_back(static_cast<int>(i));
    }

    template <class F>
    void for_each_within(const Vec2& p, double r, F&& f) const {
        const auto c = cell_of(p);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = map_.find(hash({c.first + dx, c.second + dy}));
                if (it == map_.end()) continue;
                for (int j : it->second) {
                    const double d = (pts_[j] - p).norm();
                    if (d <= r) f(j, d);
                }
            }
        }
    }

private:
    std::pair<long long, long long> cell_of(const Vec2& p) const {
        return {static_cast<long long>(std::floor(p.x() / cell_)),
                static_cast<long long>(std::floor(p.y() / cell_))};
    }
    static long long hash(std::pair<long long, long long> c) { return c.first * 1000003LL + c.second; }

    const std::vector<Vec2>& pts_;
    double cell_;
    std::unordered_map<long long, std::vector<int>> map_;
};

std::vector<std::vector<int>> neighbour_lists(const std::vector<Vec2>& pts, double a) {
    NeighbourGrid grid(pts, 1.01 * a);
    std::vector<std::vector<int>> nb(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        grid.for_each_within(pts[i], 1.001 * a, [&](int j, double d) {
            if (d > 1e-9 * a) nb[i].push_back(j);
        });
    }
    return nb;
}

}  // namespace

FiniteLattice build_hexagon_bearded(int rings, double a) {
    if (rings < 1) throw DomainError("build_hexagon_bearded: rings must be at least 1");
    const LatticeGeometry g = build_geometry(a);
    const Vec2 c0 = (g.a1 + g.b) / 2.0;  // centre of the hexagon at the origin cell
    std::map<Key, std::pair<Vec2, int>> sites;

    auto sublattice_of = [&](const Vec2& p) {
        // sublattice 1 sites are integer combinations of a1, a2
        Eigen::Matrix2d A;
        A.col(0) = g.a1;
        A.col(1) = g.a2;
        const Vec2 c = A.inverse() * p;
        const bool integer = std::abs(c.x() - std::round(c.x())) < 1e-6 &&
                             std::abs(c.y() - std::round(c.y())) < 1e-6;
        return integer ? 1 : 2;
    };

    for (int i = -rings; i <= rings; ++i) {
        for (int j = -rings; j <= rings; ++j) {
            if ((std::abs(i) + std::abs(j) + std::abs(i + j)) / 2 >= rings) continue;
            const Vec2 c = c0 + i * g.a1 + j * g.a2;
            for (int v = 0; v < 6; ++v) {
                const double th = (30.0 + 60.0 * v) * pi / 180.0;
                const Vec2 p = c + a * Vec2(std::cos(th), std::sin(th));
                sites.emplace(key_of(p, a), std::make_pair(p, 0));
            }
        }
    }
    std::vector<Vec2> pts;
    for (auto& [k, v] : sites) pts.push_back(v.first);
    const auto nb = neighbour_lists(pts, a);

    // third neighbour of each two-fold site
    const Vec2 up1[3] = {g.b, g.b - g.a2, g.b - g.a2 + g.a1};
    std::vector<Vec2> extra;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (nb[i].size() != 2) continue;
        const int s = sublattice_of(pts[i]);
        for (const Vec2& d : up1) {
            const Vec2 q = pts[i] + (s == 1 ? d : Vec2(-d));
            if (!sites.count(key_of(q, a))) {
                sites.emplace(key_of(q, a), std::make_pair(q, 0));
                extra.push_back(q);
            }
        }
    }
    pts.insert(pts.end(), extra.begin(), extra.end());

    Vec2 mean = Vec2::Zero();
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());

    FiniteLattice lat;
    lat.a = a;
    lat.boundary = BoundaryType::hexagon_bearded;
    for (const auto& p : pts) {
        lat.sublattice.push_back(sublattice_of(p));
        lat.positions.push_back(p - mean);
    }
    return lat;
}

FiniteLattice carve_defect(const FiniteLattice& lat, const std::function<bool(const Vec2&)>& region) {
    FiniteLattice out = lat;
    out.positions.clear();
    out.sublattice.clear();
    out.cell.clear();
    for (int i = 0; i < lat.size(); ++i) {
        if (region(lat.positions[i])) {
            out.removed.push_back(lat.positions[i]);
            continue;
        }
        out.positions.push_back(lat.positions[i]);
        out.sublattice.push_back(lat.sublattice[i]);
        if (!lat.cell.empty()) out.cell.push_back(lat.cell[i]);
    }
    if (out.positions.empty()) throw DomainError("carve_defect: region removes every atom");
    return out;
}

std::vector<int> coordination(const FiniteLattice& lat) {
    const auto nb = neighbour_lists(lat.positions, lat.a);
    std::vector<int> deg(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) deg[i] = static_cast<int>(nb[i].size());
    return deg;
}

std::vector<int> boundary_depth(const FiniteLattice& lat) {
    const auto nb = neighbour_lists(lat.positions, lat.a);
    std::vector<int> depth(nb.size(), -1);
    std::deque<int> queue;
    for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i].size() < 3) {
            depth[i] = 0;
            queue.push_back(static_cast<int>(i));
        }
    }
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (int j : nb[i]) {
            if (depth[j] < 0) {
                depth[j] = depth[i] + 1;
                queue.push_back(j);
            }
        }
    }
    return depth;
}

bool is_connected(const FiniteLattice& lat) {
    if (lat.positions.empty()) return true;
    const auto nb = neighbour_lists(lat.positions, lat.a);
    std::vector<char> seen(nb.size(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (int j : nb[i]) {
            if (!seen[j]) {
                seen[j] = 1;
                ++count;
                queue.push_back(j);
            }
        }
    }
    return count == nb.size();
}

double min_pair_distance(const FiniteLattice& lat) {
    double best = std::numeric_limits<double>::infinity();
    NeighbourGrid grid(lat.positions, 2.0 * lat.a);
    for (const auto& p : lat.positions) {
        grid.for_each_within(p, 2.0 * lat.a, [&](int, double d) {
            if (d > 0) best = std::min(best, d);
        });
    }
    // duplicates show up as exact zeros
    for (int i = 0; i < lat.size(); ++i) {
        int hits = 0;
        grid.for_each_within(lat.positions[i], 1e-12, [&](int, double) { ++hits; });
        if (hits > 1) return 0.0;
    }
    return best;
}

void write_lattice_csv(std::ostream& os, const FiniteLattice& lat, double lambda_) {
    const auto deg = coordination(lat);
    os << "index,x,y,sublattice,is_boundary\n";
    os.precision(12);
    for (int i = 0; i < lat.size(); ++i) {
        os << i << ',' << lat.positions[i].x() / lambda_ << ',' << lat.positions[i].y() / lambda_ << ','
           << lat.sublattice[i] << ',' << (deg[i] < 3 ? 1 : 0) << '\n';
    }
}

}  // namespace atomtopo
