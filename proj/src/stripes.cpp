#include "atomtopo/stripes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "atomtopo/bloch_bands.hpp"
#include "atomtopo/linalg.hpp"

namespace atomtopo {

const char* to_string(EdgeSide s) {
    switch (s) {
        case EdgeSide::top: return "top";
        case EdgeSide::bottom: return "bottom";
        case EdgeSide::bulk: return "bulk";
    }
    return "bulk";
}

namespace {

struct CellView {
    std::vector<Vec2> pos;  // atoms of cell 0
    Vec2 T;
    double t = 0;  // |T|
    int W = 0;
    int images = 0;
};

CellView cell_view(const FiniteLattice& lat) {
    if (!lat.periodic) throw DomainError("stripe: lattice has no periodic axis");
    if (lat.atoms_per_cell <= 0 || lat.size() != lat.atoms_per_cell * lat.periodic->cells) {
        throw DomainError("stripe: atom count does not match cells x atoms_per_cell");
    }
    CellView v;
    v.pos.assign(lat.positions.begin(), lat.positions.begin() + lat.atoms_per_cell);
    v.T = lat.periodic->period;
    v.t = v.T.norm();
    v.W = lat.periodic->cells;
    v.images = lat.periodic->images;
    return v;
}

// Coefficients c_l such that sum_l c_l f(eps_l) cancels the leading powers of
// eps when every eps is half the previous one.
std::vector<double> richardson_coefficients(const std::vector<double>& eps) {
    if (eps.empty()) throw ConfigError("stripe: eps_ladder is empty");
    for (std::size_t l = 0; l < eps.size(); ++l) {
        if (!(eps[l] > 0)) throw ConfigError("stripe: eps_ladder entries must be positive");
        if (l > 0 && std::abs(eps[l - 1] / eps[l] - 2.0) > 1e-9) {
            throw ConfigError("stripe: eps_ladder must halve at every step");
        }
    }
    const std::size_t L = eps.size();
    std::vector<std::vector<double>> t(L, std::vector<double>(L, 0.0));
    for (std::size_t l = 0; l < L; ++l) t[l][l] = 1.0;
    for (std::size_t j = 1; j < L; ++j) {
        const double f = std::pow(2.0, static_cast<double>(j));
        for (std::size_t l = L - 1; l >= j; --l) {
            for (std::size_t q = 0; q < L; ++q) t[l][q] = (f * t[l][q] - t[l - 1][q]) / (f - 1.0);
        }
    }
    return t[L - 1];
}

// Image weights w(n) for n in [-J, J], stored at index n + J.
struct ImageWeights {
    int J = 0;
    std::vector<double> combined;   // extrapolated
    std::vector<double> smallest;   // smallest eps only (light line)
};

ImageWeights image_weights(const CellView& cv, const StripeOptions& opt) {
    ImageWeights w;
    if (opt.summation == StripeOptions::Summation::truncated) {
        w.J = cv.images;
        w.combined.assign(2 * w.J + 1, 1.0);
        w.smallest = w.combined;
        return w;
    }
    const std::vector<double> c = richardson_coefficients(opt.eps_ladder);
    const double eps_min = opt.eps_ladder.back();
    w.J = static_cast<int>(opt.tail_factor / std::sqrt(eps_min) / cv.t) + 2;
    w.combined.resize(2 * w.J + 1);
    w.smallest.resize(2 * w.J + 1);
    for (int n = -w.J; n <= w.J; ++n) {
        const double x2 = std::pow(n * cv.t, 2);
        double s = 0;
        for (std::size_t l = 0; l < c.size(); ++l) s += c[l] * std::exp(-opt.eps_ladder[l] * x2);
        w.combined[n + w.J] = s;
        w.smallest[n + w.J] = std::exp(-eps_min * x2);
    }
    return w;
}

// pref * G(d_ij - n T) for all atom pairs of one cell, self term dropped.
MatXc image_block(const CellView& cv, int n, double k) {
    const int nc = static_cast<int>(cv.pos.size());
    const double pref = interaction_prefactor(k);
    MatXc g = MatXc::Zero(2 * nc, 2 * nc);
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            if (n == 0 && i == j) continue;
            g.block<2, 2>(2 * i, 2 * j) = pref * greens_in_plane(cv.pos[i] - cv.pos[j] - n * cv.T, k);
        }
    }
    return g;
}

void add_onsite(MatXc& h, double mu_b) {
    const int n = static_cast<int>(h.rows()) / 2;
    for (int i = 0; i < n; ++i) {
        h(2 * i, 2 * i) += -0.5 * I;
        h(2 * i + 1, 2 * i + 1) += -0.5 * I;
        h(2 * i, 2 * i + 1) += -I * mu_b;
        h(2 * i + 1, 2 * i) += I * mu_b;
    }
}

bool on_light_line(double km, double t, double k) {
    const double g = 2.0 * pi / t;
    for (int p = -1; p <= 1; ++p) {
        if (std::abs(std::abs(km + p * g) - k) < 1e-9 * k) return true;
    }
    return false;
}

double k_of(int m, const CellView& cv) { return 2.0 * pi * m / (cv.W * cv.t); }

// m in (-W/2, W/2].
std::vector<int> m_values(int W) {
    std::vector<int> ms;
    for (int m = -(W / 2) + (W % 2 == 0 ? 1 : 0); m <= W / 2; ++m) ms.push_back(m);
    return ms;
}

std::vector<int> row_ranks(const std::vector<Vec2>& pos, double a) {
    const double q = 1e-6 * a;
    std::vector<long long> keys;
    for (const auto& p : pos) keys.push_back(std::llround(p.y() / q));
    std::vector<long long> uniq = keys;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> rank;
    for (long long key : keys) {
        rank.push_back(static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), key) - uniq.begin()));
    }
    return rank;
}

std::pair<double, double> resolve_gap(const PhysicalParams& params, const StripeOptions& opt) {
    if (opt.gap) return *opt.gap;
    const GapReport g = band_gap(params, RegularizationParams::for_spacing(params.a()), opt.gap_grid);
    if (g.closed) return {0.0, 0.0};
    return {g.lower_max, g.upper_min};
}

}  // namespace

MatXc stripe_bloch_matrix(const FiniteLattice& lat, const PhysicalParams& params, double k,
                          const StripeOptions& opt) {
    params.validate();
    const CellView cv = cell_view(lat);
    const ImageWeights w = image_weights(cv, opt);
    const bool ll = on_light_line(k, cv.t, params.k());
    const auto& wt = ll ? w.smallest : w.combined;
    const int nc = static_cast<int>(cv.pos.size());
    MatXc h = MatXc::Zero(2 * nc, 2 * nc);
    for (int n = -w.J; n <= w.J; ++n) {
        const double wn = wt[n + w.J];
        if (wn == 0.0) continue;
        h += (wn * std::exp(I * (k * n * cv.t))) * image_block(cv, n, params.k());
    }
    add_onsite(h, params.mu_b);
    return h;
}

MatXc stripe_ring_matrix(const FiniteLattice& lat, const PhysicalParams& params, const StripeOptions& opt) {
    params.validate();
    const CellView cv = cell_view(lat);
    const ImageWeights w = image_weights(cv, opt);
    const int nc = static_cast<int>(cv.pos.size());
    // Coupling from cell c to c' depends only on (c' - c) mod W.
    std::vector<MatXc> by_offset(cv.W, MatXc::Zero(2 * nc, 2 * nc));
    for (int n = -w.J; n <= w.J; ++n) {
        const double wn = w.combined[n + w.J];
        if (wn == 0.0) continue;
        by_offset[((n % cv.W) + cv.W) % cv.W] += wn * image_block(cv, n, params.k());
    }
    const int N = nc * cv.W;
    MatXc h = MatXc::Zero(2 * N, 2 * N);
    for (int c = 0; c < cv.W; ++c) {
        for (int c2 = 0; c2 < cv.W; ++c2) {
            h.block(2 * nc * c, 2 * nc * c2, 2 * nc, 2 * nc) = by_offset[((c2 - c) % cv.W + cv.W) % cv.W];
        }
    }
    add_onsite(h, params.mu_b);
    return h;
}

EdgeSide classify_edge_state(const VecXc& v, const FiniteLattice& lat, double* ratio, int rows, double threshold) {
    const int nc = lat.atoms_per_cell > 0 ? lat.atoms_per_cell : lat.size();
    if (v.size() % (2 * nc) != 0) throw DomainError("classify_edge_state: vector length does not match the cell");
    const std::vector<Vec2> cell_pos(lat.positions.begin(), lat.positions.begin() + nc);
    const std::vector<int> rank = row_ranks(cell_pos, lat.a);
    const int R = *std::max_element(rank.begin(), rank.end()) + 1;
    if (R < 2 * rows) throw DomainError("classify_edge_state: stripe has too few rows");
    double top = 0, bottom = 0;
    for (Eigen::Index idx = 0; idx < v.size() / 2; ++idx) {
        const int r = rank[idx % nc];
        const double p = std::norm(v[2 * idx]) + std::norm(v[2 * idx + 1]);
        if (r >= R - rows) top += p;
        if (r < rows) bottom += p;
    }
    const double rt = bottom > 0 ? top / bottom : std::numeric_limits<double>::infinity();
    if (ratio) *ratio = rt;
    if (top > threshold * bottom) return EdgeSide::top;
    if (bottom > threshold * top) return EdgeSide::bottom;
    return EdgeSide::bulk;
}

StripeSpectrum stripe_spectrum(const FiniteLattice& lat, const PhysicalParams& params, const StripeOptions& opt) {
    params.validate();
    const CellView cv = cell_view(lat);
    const int nc = static_cast<int>(cv.pos.size());
    const double k = params.k();
    StripeSpectrum out;
    out.period = cv.t;
    out.cells = cv.W;
    out.atoms_per_cell = nc;
    out.k_light = k;
    std::tie(out.gap_lo, out.gap_hi) = resolve_gap(params, opt);
    const std::vector<int> ms = m_values(cv.W);

    auto push_mode = [&](int m, const cd& E, const VecXc& vec) {
        StripeMode md;
        md.m = m;
        md.k = k_of(m, cv);
        md.E = E;
        md.gamma = -E.imag();
        md.on_light_line = on_light_line(md.k, cv.t, k);
        md.side = classify_edge_state(vec, lat, &md.ratio);
        md.in_gap = E.real() > out.gap_lo && E.real() < out.gap_hi;
        out.modes.push_back(md);
        if (opt.keep_vectors) out.vectors.push_back(vec);
    };

    if (opt.block_circulant) {
        const ImageWeights w = image_weights(cv, opt);
        std::vector<MatXc> h(ms.size(), MatXc::Zero(2 * nc, 2 * nc));
        std::vector<char> ll(ms.size());
        for (std::size_t q = 0; q < ms.size(); ++q) ll[q] = on_light_line(k_of(ms[q], cv), cv.t, k);
        // Image blocks are built once per chunk and folded into every k.
        const int chunk = 64;
        std::vector<MatXc> blocks(chunk);
        for (int n0 = -w.J; n0 <= w.J; n0 += chunk) {
            const int cnt = std::min(chunk, w.J - n0 + 1);
            parallel_for(cnt, [&](int t) { blocks[t] = image_block(cv, n0 + t, k); });
            parallel_for(static_cast<int>(ms.size()), [&](int q) {
                const double km = k_of(ms[q], cv);
                const auto& wt = ll[q] ? w.smallest : w.combined;
                for (int t = 0; t < cnt; ++t) {
                    const int n = n0 + t;
                    const double wn = wt[n + w.J];
                    if (wn != 0.0) h[q] += (wn * std::exp(I * (km * n * cv.t))) * blocks[t];
                }
            });
        }
        std::vector<EigenSystem> es(ms.size());
        parallel_for(static_cast<int>(ms.size()), [&](int q) {
            add_onsite(h[q], params.mu_b);
            es[q] = eig(h[q]);
            sort_by_real(es[q]);
        });
        for (std::size_t q = 0; q < ms.size(); ++q) {
            for (Eigen::Index c = 0; c < es[q].values.size(); ++c) {
                push_mode(ms[q], es[q].values[c], es[q].vectors.col(c));
            }
        }
        return out;
    }

    // Full ring: quasi-momentum from the dominant Fourier component over cells.
    EigenSystem es = eig(stripe_ring_matrix(lat, params, opt));
    sort_by_real(es);
    const Eigen::Index count = es.values.size();
    std::vector<int> mode_m(count);
    parallel_for(static_cast<int>(count), [&](int c) {
        const VecXc v = es.vectors.col(c);
        double best = -1;
        for (int m : ms) {
            VecXc acc = VecXc::Zero(2 * nc);
            const double km = k_of(m, cv);
            for (int cell = 0; cell < cv.W; ++cell) {
                acc += std::exp(-I * (km * cell * cv.t)) * v.segment(2 * nc * cell, 2 * nc);
            }
            if (acc.squaredNorm() > best) {
                best = acc.squaredNorm();
                mode_m[c] = m;
            }
        }
    });
    std::vector<int> order(count);
    for (Eigen::Index c = 0; c < count; ++c) order[c] = static_cast<int>(c);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mode_m[a] < mode_m[b]; });
    for (int c : order) push_mode(mode_m[c], es.values[c], es.vectors.col(c));
    return out;
}

namespace {

struct Link {
    int a = 0, b = 0;  // mode indices
    int dm = 1;
};

}  // namespace

EdgeBranchReport analyze_edge_branches(const StripeSpectrum& spec, EdgeSide side,
                                       const std::vector<double>& probe_fractions) {
    if (side == EdgeSide::bulk) throw DomainError("analyze_edge_branches: side must be top or bottom");
    EdgeBranchReport rep;
    rep.side = side;
    const double width = spec.gap_hi - spec.gap_lo;
    for (double f : probe_fractions) rep.probes.push_back(spec.gap_lo + f * width);
    rep.crossings.assign(rep.probes.size(), 0);
    if (width <= 0 || spec.cells < 3) return rep;

    const int W = spec.cells;
    std::map<int, std::vector<int>> by_m;
    for (std::size_t i = 0; i < spec.modes.size(); ++i) {
        const auto& md = spec.modes[i];
        if (md.side == side && md.in_gap) by_m[md.m].push_back(static_cast<int>(i));
    }
    const std::vector<int> ms = m_values(W);
    const int mlo = ms.front();
    auto wrap = [&](int m) { return ((m - mlo) % W + W) % W + mlo; };
    auto re = [&](int i) { return spec.modes[i].E.real(); };
    auto nearest = [&](int from, const std::vector<int>& pool) {
        int best = -1;
        double d = std::numeric_limits<double>::infinity();
        for (int j : pool) {
            if (std::abs(re(j) - re(from)) < d) {
                d = std::abs(re(j) - re(from));
                best = j;
            }
        }
        return best;
    };
    auto pool = [&](int m) -> const std::vector<int>& {
        static const std::vector<int> empty;
        auto it = by_m.find(wrap(m));
        return it == by_m.end() ? empty : it->second;
    };

    // Mutual-nearest links to the next k, skipping at most one empty k
    // (edge states hybridize across the stripe where the branches meet).
    const double max_step = 0.4 * width;
    std::vector<Link> links;
    for (const auto& [m, modes] : by_m) {
        int dm = 1;
        if (pool(m + 1).empty()) dm = 2;
        const auto& next = pool(m + dm);
        if (next.empty()) continue;
        for (int a : modes) {
            const int b = nearest(a, next);
            if (b < 0 || nearest(b, modes) != a) continue;
            if (std::abs(re(b) - re(a)) >= max_step) continue;
            links.push_back({a, b, dm});
        }
    }

    const double dk = 2.0 * pi / (W * spec.period);
    auto velocity = [&](const Link& l) { return (re(l.b) - re(l.a)) / (l.dm * dk); };
    for (const Link& l : links) {
        for (std::size_t p = 0; p < rep.probes.size(); ++p) {
            const double P = rep.probes[p];
            if ((re(l.a) - P) * (re(l.b) - P) < 0) {
                ++rep.crossings[p];
                const auto& A = spec.modes[l.a];
                const auto& B = spec.modes[l.b];
                rep.links.push_back({P, A.m, B.m, A.k, B.k, re(l.a), re(l.b), A.gamma, B.gamma, velocity(l)});
            }
        }
    }

    // Walk the chain through the unique mid-gap crossing.
    const double mid = spec.gap_lo + 0.5 * width;
    const Link* start = nullptr;
    int mid_count = 0;
    for (const Link& l : links) {
        if ((re(l.a) - mid) * (re(l.b) - mid) < 0) {
            start = &l;
            ++mid_count;
        }
    }
    if (mid_count != 1) return rep;
    std::map<int, const Link*> fwd, bwd;
    for (const Link& l : links) {
        fwd[l.a] = &l;
        bwd[l.b] = &l;
    }
    std::vector<const Link*> chain{start};
    for (auto it = bwd.find(start->a); it != bwd.end() && chain.size() <= links.size(); it = bwd.find(it->second->a)) {
        chain.insert(chain.begin(), it->second);
    }
    for (auto it = fwd.find(start->b); it != fwd.end() && chain.size() <= links.size(); it = fwd.find(it->second->b)) {
        chain.push_back(it->second);
    }
    for (const Link* l : chain) rep.branch_velocities.push_back(velocity(*l));
    return rep;
}

std::vector<double> edge_group_velocity(const StripeSpectrum& spec, EdgeSide side) {
    auto v = analyze_edge_branches(spec, side).branch_velocities;
    if (v.empty()) throw DomainError("edge_group_velocity: too few in-gap states to follow a branch on this edge");
    return v;
}

}  // namespace atomtopo
