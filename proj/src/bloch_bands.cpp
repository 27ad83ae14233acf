#include "atomtopo/bloch_bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "atomtopo/linalg.hpp"
#include "atomtopo/special_functions.hpp"

namespace atomtopo {

namespace {

// Weyl term with the chi prefactor removed; see weyl_g_star_unscaled.
Mat2c weyl_term(const Vec2& q, double k, double a_ho, bool coherent_only) {
    if (!coherent_only || q.squaredNorm() > k * k) return weyl_g_star_unscaled(q, k, a_ho);
    const double L = std::sqrt(k * k - q.squaredNorm());
    if (L <= 1e-6 * k) return weyl_g_star_unscaled(q, k, a_ho);  // raises the light-circle error
    const double bracket = erfi(a_ho * L / std::sqrt(2.0)) / (2.0 * L);
    Mat2c g;
    g(0, 0) = (k * k - q.x() * q.x()) / (k * k) * bracket;
    g(1, 1) = (k * k - q.y() * q.y()) / (k * k) * bracket;
    g(0, 1) = g(1, 0) = -q.x() * q.y() / (k * k) * bracket;
    return g;
}

}  // namespace

LatticeSums lattice_sums(const Vec2& kb, const LatticeGeometry& geom, double k, const RegularizationParams& reg,
                         const SumOptions& opt) {
    reg.validate(2.0 * pi / k);
    LatticeSums out;
    const double inv_area = 1.0 / geom.cell_area;
    cd origin = std::exp(k * k * reg.a_ho * reg.a_ho / 2.0) * greens_regularized_origin_scalar(k, reg.a_ho);
    if (opt.coherent_only) origin = origin.real();
    Mat2c s0 = Mat2c::Zero(), sp = Mat2c::Zero(), sm = Mat2c::Zero();
    int shell = 0;
    for (;; ++shell) {
        if (shell > opt.max_shells) {
            std::ostringstream msg;
            msg << "lattice_sums: reciprocal sum not converged after " << opt.max_shells
                << " shells (a_ho = " << reg.a_ho << ", g_cutoff = " << reg.g_cutoff << ")";
            throw ConvergenceError(msg.str());
        }
        double shell_max = 0.0;
        auto visit = [&](int i, int j) {
            const Vec2 q = i * geom.g1 + j * geom.g2 - kb;
            const Mat2c g = weyl_term(q, k, reg.a_ho, opt.coherent_only);
            const double phase = q.dot(geom.b);
            const cd e(std::cos(phase), std::sin(phase));
            s0 += g;
            sp += g * e;
            sm += g * std::conj(e);
            shell_max = std::max(shell_max, g.cwiseAbs().maxCoeff());
            ++out.terms;
        };
        if (shell == 0) {
            visit(0, 0);
        } else {
            for (int i = -shell; i <= shell; ++i) {
                visit(i, -shell);
                visit(i, shell);
            }
            for (int j = -shell + 1; j <= shell - 1; ++j) {
                visit(-shell, j);
                visit(shell, j);
            }
        }
        // The raw s0 carries the large origin value that is subtracted at the
        // end, so the threshold is taken against the subtracted running sums.
        const double running = std::min({(s0 * inv_area - origin * Mat2c::Identity()).cwiseAbs().maxCoeff(),
                                         sp.cwiseAbs().maxCoeff() * inv_area, sm.cwiseAbs().maxCoeff() * inv_area});
        if (shell >= 2 && shell_max * inv_area < reg.g_cutoff * running) break;
    }
    out.shells = shell;
    out.s0 = s0 * inv_area - origin * Mat2c::Identity();
    out.sp = sp * inv_area;
    out.sm = sm * inv_area;
    return out;
}

Mat2c lattice_sum(const Vec2& kb, Offset offset, const LatticeGeometry& geom, double k,
                  const RegularizationParams& reg) {
    const LatticeSums s = lattice_sums(kb, geom, k, reg);
    switch (offset) {
        case Offset::zero: return s.s0;
        case Offset::plus_b: return s.sp;
        case Offset::minus_b: return s.sm;
    }
    return s.s0;
}

Mat4c zeeman_block(double mu_b) {
    Mat4c z = Mat4c::Zero();
    for (int s = 0; s < 2; ++s) {
        z(2 * s, 2 * s + 1) = -I * mu_b;
        z(2 * s + 1, 2 * s) = I * mu_b;
    }
    return z;
}

Mat4c bloch_matrix_from_sums(const LatticeSums& s, double k, double mu_b, bool include_self_decay) {
    const double pref = interaction_prefactor(k);
    Mat4c m = zeeman_block(mu_b);
    if (include_self_decay) m.diagonal().array() += -0.5 * I;
    m.block<2, 2>(0, 0) += pref * s.s0;
    m.block<2, 2>(2, 2) += pref * s.s0;
    m.block<2, 2>(0, 2) += pref * s.sp;
    m.block<2, 2>(2, 0) += pref * s.sm;
    return m;
}

Mat4c assemble_bloch_matrix(const Vec2& kb, const PhysicalParams& params, const RegularizationParams& reg) {
    params.validate();
    const LatticeGeometry geom = build_geometry(params.a());
    return bloch_matrix_from_sums(lattice_sums(kb, geom, params.k(), reg), params.k(), params.mu_b);
}

Vec2 nudge_off_light_circle(const Vec2& kb, double k) {
    const double r = kb.norm();
    if (r == 0.0 || std::abs(r - k) >= 1e-6 * k) return kb;
    const double target = r >= k ? k * (1.0 + 1e-6) : k * (1.0 - 1e-6);
    return kb * (target / r);
}

BandPoint solve_bloch_point(const Vec2& kb_in, const PhysicalParams& params, const RegularizationParams& reg) {
    const Vec2 kb = nudge_off_light_circle(kb_in, params.k());
    EigenSystem es = eig(assemble_bloch_matrix(kb, params, reg));
    sort_by_real(es);
    BandPoint p;
    p.k = kb;
    for (int i = 0; i < 4; ++i) p.E[i] = es.values[i];
    p.vectors = es.vectors;
    p.in_light_cone = kb.norm() < params.k();
    return p;
}

std::vector<BandPoint> band_structure(const std::vector<PathPoint>& path, const PhysicalParams& params,
                                      const RegularizationParams& reg, bool track_continuity) {
    std::vector<BandPoint> out(path.size());
    parallel_for(static_cast<int>(path.size()), [&](int i) {
        out[i] = solve_bloch_point(path[i].k, params, reg);
        out[i].arc = path[i].arc;
    });
    if (!track_continuity) return out;
    // Label branches by maximal eigenvector overlap with the previous point.
    for (std::size_t p = 1; p < out.size(); ++p) {
        const Eigen::Matrix4d ov = (out[p - 1].vectors.adjoint() * out[p].vectors).cwiseAbs();
        std::array<int, 4> best_perm{0, 1, 2, 3}, trial{0, 1, 2, 3};
        double best = -1;
        do {
            double s = 0;
            for (int b = 0; b < 4; ++b) s += ov(b, trial[b]);
            if (s > best + 1e-12) {
                best = s;
                best_perm = trial;
            }
        } while (std::next_permutation(trial.begin(), trial.end()));
        // band b at the previous point continues as sorted band best_perm[b] here
        std::array<int, 4> branch{};
        for (int b = 0; b < 4; ++b) branch[best_perm[b]] = out[p - 1].branch[b];
        out[p].branch = branch;
    }
    return out;
}

InteractionGrid::InteractionGrid(const PhysicalParams& params, const RegularizationParams& reg, int grid_n)
    : n_(grid_n) {
    if (grid_n < 2) throw DomainError("InteractionGrid: grid_n must be at least 2");
    params.validate();
    const LatticeGeometry geom = build_geometry(params.a());
    ks_.resize(static_cast<std::size_t>(n_) * n_);
    ms_.resize(ks_.size());
    double shift = 0.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        try {
            parallel_for(n_ * n_, [&](int idx) {
                const int i = idx / n_, j = idx % n_;
                const Vec2 kb = (i + shift) / n_ * geom.g1 + (j + shift) / n_ * geom.g2;
                ks_[idx] = kb;
                ms_[idx] = bloch_matrix_from_sums(lattice_sums(kb, geom, params.k(), reg), params.k(), 0.0);
            });
            return;
        } catch (const LightCircleError&) {
            shift = shift == 0.0 ? 1e-6 : shift * 10.0;  // move the whole grid off the light circle
        }
    }
    throw ConvergenceError("InteractionGrid: grid keeps landing on the light circle");
}

GapReport InteractionGrid::gap(double mu_b) const {
    const Mat4c z = zeeman_block(mu_b);
    std::vector<std::array<double, 4>> re(ms_.size());
    parallel_for(static_cast<int>(ms_.size()), [&](int idx) {
        const VecXc w = eigenvalues(ms_[idx] + z);
        std::array<double, 4> r{};
        for (int b = 0; b < 4; ++b) r[b] = w[b].real();
        std::sort(r.begin(), r.end());
        re[idx] = r;
    });
    GapReport g;
    g.grid_n = n_;
    g.lower_max = -std::numeric_limits<double>::infinity();
    g.upper_min = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < re.size(); ++idx) {
        if (re[idx][1] > g.lower_max) {
            g.lower_max = re[idx][1];
            g.k_lower_max = ks_[idx];
        }
        if (re[idx][2] < g.upper_min) {
            g.upper_min = re[idx][2];
            g.k_upper_min = ks_[idx];
        }
    }
    g.delta = g.upper_min - g.lower_max;
    g.closed = g.delta <= 0;
    return g;
}

GapReport band_gap(const PhysicalParams& params, const RegularizationParams& reg, int grid_n) {
    if (grid_n < 12) throw DomainError("band_gap: grid_n must be at least 12");
    return InteractionGrid(params, reg, grid_n).gap(params.mu_b);
}

}  // namespace atomtopo
